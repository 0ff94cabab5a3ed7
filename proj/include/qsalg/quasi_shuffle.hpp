#ifndef QSALG_QUASI_SHUFFLE_HPP
#define QSALG_QUASI_SHUFFLE_HPP

#include <vector>

#include "bracket_table.hpp"
#include "poly.hpp"

namespace qsalg {

namespace detail {

struct no_bracket {
    // Signals to the kernel that every [a,b] vanishes.
    static constexpr bool enabled = false;
    const Poly &operator()(LetterId, LetterId) const
    {
        static const Poly zero;
        return zero;
    }
};

struct table_bracket {
    static constexpr bool enabled = true;
    const BracketTable *table;
    const Poly &operator()(LetterId a, LetterId b) const { return table->bracket(a, b); }
};

/// Product of two words from the right-end recursion
///   va * wb = (v * wb) a + (va * w) b + (v * w) [a,b]
/// tabulated over prefix pairs, so each sub-product is formed once.
template <typename Bracket>
Poly word_product(const Word &x, const Word &y, const Bracket &bracket)
{
    const std::size_t m = x.size(), n = y.size();
    // row[i][j] = x[0:i] * y[0:j]
    std::vector<std::vector<Poly>> table(m + 1, std::vector<Poly>(n + 1));
    for (std::size_t i = 0; i <= m; ++i)
        table[i][0] = Poly(x.prefix(i));
    for (std::size_t j = 1; j <= n; ++j)
        table[0][j] = Poly(y.prefix(j));
    for (std::size_t i = 1; i <= m; ++i)
        for (std::size_t j = 1; j <= n; ++j) {
            const LetterId a = x[i - 1], b = y[j - 1];
            Poly cell = table[i - 1][j].append(a);
            cell += table[i][j - 1].append(b);
            if constexpr (Bracket::enabled) {
                const Poly &ab = bracket(a, b);
                if (!ab.is_zero())
                    cell += table[i - 1][j - 1].append(ab);
            }
            table[i][j] = std::move(cell);
        }
    return std::move(table[m][n]);
}

template <typename Bracket>
Poly bilinear_product(const Poly &p, const Poly &q, const Bracket &bracket)
{
    Poly out;
    for (const auto &[v, a] : p)
        for (const auto &[w, b] : q)
            out.add_scaled(word_product(v, w, bracket), a * b);
    return out;
}

} // namespace detail

/// Quasi-shuffle product over the bracket of `table`.
/// Throws UnknownLetter if p or q uses a letter outside the table.
inline Poly quasi_shuffle(const Poly &p, const Poly &q, const BracketTable &table)
{
    table.require(p);
    table.require(q);
    return detail::bilinear_product(p, q, detail::table_bracket{&table});
}

inline Poly quasi_shuffle(const Word &v, const Word &w, const BracketTable &table)
{
    return quasi_shuffle(Poly(v), Poly(w), table);
}

/// Shuffle product: the quasi-shuffle with every bracket equal to zero.
inline Poly shuffle(const Poly &p, const Poly &q) { return detail::bilinear_product(p, q, detail::no_bracket{}); }

inline Poly shuffle(const Word &v, const Word &w) { return detail::word_product(v, w, detail::no_bracket{}); }

inline int grade_of(const Word &w, const BracketTable &table) { return table.grade(w); }

} // namespace qsalg

#endif
