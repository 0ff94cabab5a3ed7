#ifndef QSALG_HOFFMAN_HPP
#define QSALG_HOFFMAN_HPP

#include <functional>
#include <vector>

#include "bracket_table.hpp"
#include "poly.hpp"

namespace qsalg {

namespace detail {

// Sum over compositions (i_1..i_k) of |w| of weight(i_1..i_k) times the word
// whose j-th letter is the bracket product of the j-th block of w.
template <typename Weight>
Poly composition_sum(const Word &w, const BracketTable &table, Weight weight)
{
    table.require(w);
    const std::size_t n = w.size();
    if (n == 0)
        return Poly::unit();

    // block[s][e] = bracket product of letters w[s..e)
    std::vector<std::vector<Poly>> block(n, std::vector<Poly>(n + 1));
    for (std::size_t s = 0; s < n; ++s) {
        block[s][s + 1] = Poly::letter(w[s]);
        for (std::size_t e = s + 2; e <= n; ++e)
            block[s][e] = table.bracket(block[s][e - 1], Poly::letter(w[e - 1]));
    }

    Poly out;
    std::vector<std::size_t> parts;
    std::function<void(std::size_t, const Poly &)> walk = [&](std::size_t start, const Poly &acc) {
        if (start == n) {
            out.add_scaled(acc, weight(parts));
            return;
        }
        for (std::size_t e = start + 1; e <= n; ++e) {
            const Poly &b = block[start][e];
            if (b.is_zero())
                continue;
            parts.push_back(e - start);
            walk(e, acc.append(b));
            parts.pop_back();
        }
    };
    walk(0, Poly::unit());
    return out;
}

template <typename Weight>
Poly composition_sum(const Poly &p, const BracketTable &table, Weight weight)
{
    Poly out;
    for (const auto &[w, c] : p)
        out.add_scaled(composition_sum(w, table, weight), c);
    return out;
}

} // namespace detail

/// Hoffman exponential: algebra isomorphism from the shuffle algebra onto
/// the quasi-shuffle algebra. Weight of a composition is 1/(i_1! ... i_k!).
inline Poly hoffman_exp(const Poly &p, const BracketTable &table)
{
    return detail::composition_sum(p, table, [](const std::vector<std::size_t> &parts) -> Rational {
        Rational den = 1;
        for (auto i : parts)
            den *= factorial(static_cast<unsigned>(i));
        return Rational(1) / den;
    });
}

/// Inverse of hoffman_exp. Weight of a composition of n into k parts is
/// (-1)^(n-k) / (i_1 ... i_k).
inline Poly hoffman_log(const Poly &p, const BracketTable &table)
{
    return detail::composition_sum(p, table, [](const std::vector<std::size_t> &parts) -> Rational {
        mpz_class den = 1;
        std::size_t n = 0;
        for (auto i : parts) {
            den *= static_cast<unsigned long>(i);
            n += i;
        }
        Rational weight(mpz_class(1), den);
        weight.canonicalize();
        return (n - parts.size()) % 2 ? Rational(-weight) : weight;
    });
}

inline Poly hoffman_exp(const Word &w, const BracketTable &table) { return hoffman_exp(Poly(w), table); }
inline Poly hoffman_log(const Word &w, const BracketTable &table) { return hoffman_log(Poly(w), table); }

} // namespace qsalg

#endif
