// Shared fixtures, random generators and brute-force oracles for the test
// suites. Nothing in here calls the library routine it is used to check.
#ifndef QSALG_TESTS_SUPPORT_HPP
#define QSALG_TESTS_SUPPORT_HPP

#include <qsalg/qsalg.hpp>

#include <functional>
#include <random>
#include <vector>

namespace qsalg::testing {

inline Rational q(long p, long d = 1)
{
    Rational r(p, d);
    r.canonicalize();
    return r;
}

inline LetterId L(std::uint32_t k) { return LetterId{k}; }

// --- Levy fixtures -----------------------------------------------------------

inline LevySpec wiener(std::string name = "x1", Rational sigma = 1)
{
    return LevySpec{std::move(name), 0, std::move(sigma), {}};
}

inline LevySpec compensated_poisson(std::string name = "x1")
{
    return LevySpec{std::move(name), 0, 0, FiniteAtoms{1, {{1, 1}}}};
}

/// lambda = 2, atoms +1 and -1 with probability 1/2 each.
inline LevySpec plus_minus_one(std::string name = "x1")
{
    return LevySpec{std::move(name), 0, 0, FiniteAtoms{2, {{1, q(1, 2)}, {-1, q(1, 2)}}}};
}

inline LevySpec atoms(std::string name, Rational rate, std::vector<Atom> list, Rational drift = 0,
                      Rational sigma = 0)
{
    return LevySpec{std::move(name), std::move(drift), std::move(sigma), FiniteAtoms{std::move(rate), std::move(list)}};
}

/// Random finite-atom spec: 1..max_atoms distinct nonzero atoms with small
/// rational sizes, rational probabilities, rate, drift and (optionally) sigma.
inline LevySpec random_atom_spec(std::mt19937_64 &rng, std::string name, int max_atoms = 3, bool allow_sigma = true)
{
    std::uniform_int_distribution<int> count(1, max_atoms), num(-6, 6), den(1, 3), weight(1, 4), small(0, 3);
    const int k = count(rng);
    std::vector<Rational> sizes;
    while (static_cast<int>(sizes.size()) < k) {
        Rational s = q(num(rng), den(rng));
        if (sgn(s) == 0 || std::find(sizes.begin(), sizes.end(), s) != sizes.end())
            continue;
        sizes.push_back(s);
    }
    std::vector<int> w(static_cast<std::size_t>(k));
    int total = 0;
    for (auto &x : w) {
        x = weight(rng);
        total += x;
    }
    std::vector<Atom> list;
    for (int j = 0; j < k; ++j)
        list.push_back({sizes[static_cast<std::size_t>(j)], q(w[static_cast<std::size_t>(j)], total)});
    Rational sigma = allow_sigma && small(rng) == 0 ? q(small(rng) + 1, 2) : Rational(0);
    return atoms(std::move(name), q(weight(rng), den(rng)), std::move(list), q(num(rng), den(rng)), sigma);
}

// --- Random words and polynomials ---------------------------------------------

inline Word random_word(std::mt19937_64 &rng, std::size_t letters, std::size_t max_len, std::size_t min_len = 0)
{
    std::uniform_int_distribution<std::size_t> len(min_len, max_len);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(letters - 1));
    Word w;
    const auto n = len(rng);
    for (std::size_t k = 0; k < n; ++k)
        w.push_back(LetterId{pick(rng)});
    return w;
}

inline Poly random_poly(std::mt19937_64 &rng, std::size_t letters, std::size_t max_len, std::size_t max_terms = 3)
{
    std::uniform_int_distribution<std::size_t> terms(1, max_terms);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    Poly p;
    const auto n = terms(rng);
    for (std::size_t k = 0; k < n; ++k)
        p.add(random_word(rng, letters, max_len), q(num(rng), den(rng)));
    return p;
}

/// Bracket of the +-1 process alphabet {a, t, b}: [a,a] = b, [a,b] = a,
/// [b,b] = b, and t brackets to zero.
inline BracketTable plus_minus_table()
{
    BracketTable t({Letter{L(0), 1, "a"}, Letter{L(1), 2, "t"}, Letter{L(2), 2, "b"}});
    t.set(L(0), L(0), Poly::letter(L(2)));
    t.set(L(0), L(2), Poly::letter(L(0)));
    t.set(L(2), L(2), Poly::letter(L(2)));
    return t;
}

/// a, b, c with [a,b] = c and every other bracket zero (associative since any
/// bracket involving c vanishes).
inline BracketTable abc_table()
{
    BracketTable t({Letter{L(0), 1, "a"}, Letter{L(1), 1, "b"}, Letter{L(2), 2, "c"}});
    t.set(L(0), L(1), Poly::letter(L(2)));
    return t;
}

/// x, y as above plus an unrelated letter z with [z,z] = 2z.
inline BracketTable mixed_table()
{
    BracketTable t({Letter{L(0), 1, "x"}, Letter{L(1), 2, "y"}, Letter{L(2), 1, "z"}});
    t.set(L(0), L(0), Poly::letter(L(1)));
    t.set(L(0), L(1), Poly::letter(L(0)));
    t.set(L(1), L(1), Poly::letter(L(1)));
    t.set(L(2), L(2), Poly::letter(L(2), 2));
    return t;
}

// --- Oracles --------------------------------------------------------------------

/// Left-end recursion a.v * b.w = a(v * b.w) + b(a.v * w) + [a,b](v * w),
/// evaluated by plain recursion without tabulation.
inline Poly oracle_quasi_shuffle(const Word &x, const Word &y, const BracketTable &table)
{
    if (x.empty())
        return Poly(y);
    if (y.empty())
        return Poly(x);
    const LetterId a = x[0], b = y[0];
    const Word v = x.suffix_from(1), w = y.suffix_from(1);
    auto prepend = [](LetterId l, const Poly &p, const Rational &c) {
        Poly out;
        for (const auto &[u, d] : p)
            out.add(concat(Word{l}, u), c * d);
        return out;
    };
    Poly out = prepend(a, oracle_quasi_shuffle(v, y, table), 1);
    out += prepend(b, oracle_quasi_shuffle(x, w, table), 1);
    const Poly &ab = table.bracket(a, b);
    if (!ab.is_zero()) {
        const Poly rest = oracle_quasi_shuffle(v, w, table);
        for (const auto &[l, c] : ab)
            out += prepend(l[0], rest, c);
    }
    return out;
}

inline Poly oracle_quasi_shuffle(const Poly &p, const Poly &r, const BracketTable &table)
{
    Poly out;
    for (const auto &[v, a] : p)
        for (const auto &[w, b] : r)
            out.add_scaled(oracle_quasi_shuffle(v, w, table), a * b);
    return out;
}

/// Closed form of the quasi-shuffle antipode:
/// S(a_1..a_n) = (-1)^n sum over compositions I of n of I[a_n..a_1].
inline Poly oracle_antipode(const Word &w, const BracketTable &table)
{
    const std::size_t n = w.size();
    std::vector<LetterId> rev(w.begin(), w.end());
    std::reverse(rev.begin(), rev.end());
    Poly out;
    std::function<void(std::size_t, Poly)> walk = [&](std::size_t start, Poly acc) {
        if (start == n) {
            out += acc;
            return;
        }
        Poly block = Poly::letter(rev[start]);
        for (std::size_t e = start + 1; e <= n; ++e) {
            if (e > start + 1)
                block = table.bracket(block, Poly::letter(rev[e - 1]));
            Poly next;
            for (const auto &[u, c] : acc)
                for (const auto &[l, d] : block) {
                    Word v = u;
                    v.push_back(l[0]);
                    next.add(v, c * d);
                }
            walk(e, next);
        }
    };
    walk(0, Poly::unit());
    return n % 2 ? -out : out;
}

/// Exact determinant by cofactor expansion (small matrices only).
inline Rational oracle_det(const std::vector<std::vector<Rational>> &m)
{
    const std::size_t n = m.size();
    if (n == 0)
        return 1;
    if (n == 1)
        return m[0][0];
    Rational det = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<Rational>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Rational> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c)
                    row.push_back(m[r][k]);
            minor.push_back(row);
        }
        const Rational term = m[0][c] * oracle_det(minor);
        det += c % 2 ? Rational(-term) : term;
    }
    return det;
}

/// Cramer's rule for a square nonsingular system A x = b.
inline std::vector<Rational> oracle_cramer(const std::vector<std::vector<Rational>> &a, const std::vector<Rational> &b)
{
    const Rational d = oracle_det(a);
    std::vector<Rational> x;
    for (std::size_t c = 0; c < a.size(); ++c) {
        auto m = a;
        for (std::size_t r = 0; r < a.size(); ++r)
            m[r][c] = b[r];
        x.push_back(oracle_det(m) / d);
    }
    return x;
}

/// Exact I_w(T) for words whose letters have no time or Brownian coordinate:
/// the sum over strictly increasing event chains s_1 < ... < s_n of
/// prod_k (jump of letter a_k at s_k).
inline Rational oracle_jump_chain(const PathRecord &path, const Word &w, const Alphabet &alpha)
{
    const std::size_t n = w.size();
    std::vector<Rational> count(n + 1, Rational(0));
    count[0] = 1;   // count[k] = sum over chains of the first k letters ending before the current event
    for (const auto &e : path.jumps) {
        for (std::size_t k = n; k >= 1; --k) {
            const Rational jump = (*alpha.vectors[w[k - 1].value])[BasisSymbol::counter(e.process, e.atom)];
            count[k] += count[k - 1] * jump;
        }
    }
    return count[n];
}

} // namespace qsalg::testing

#endif
