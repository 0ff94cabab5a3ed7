#ifndef QSALG_HOPF_HPP
#define QSALG_HOPF_HPP

#include <vector>

#include "quasi_shuffle.hpp"

namespace qsalg {

/// Antipode of the quasi-shuffle Hopf algebra with deconcatenation coproduct.
/// Uses S(w) = -w - sum over splittings w = uv, u and v nonempty, of S(u) * v,
/// computing S on every prefix of w once.
inline Poly antipode(const Word &w, const BracketTable &table)
{
    table.require(w);
    std::vector<Poly> prefix_antipode(w.size() + 1);
    prefix_antipode[0] = Poly::unit();
    for (std::size_t n = 1; n <= w.size(); ++n) {
        const Word head = w.prefix(n);
        Poly s = -Poly(head);
        for (std::size_t k = 1; k < n; ++k)
            s -= detail::bilinear_product(prefix_antipode[k], Poly(head.suffix_from(k)),
                                          detail::table_bracket{&table});
        prefix_antipode[n] = std::move(s);
    }
    return std::move(prefix_antipode[w.size()]);
}

inline Poly antipode(const Poly &p, const BracketTable &table)
{
    Poly out;
    for (const auto &[w, c] : p)
        out.add_scaled(antipode(w, table), c);
    return out;
}

} // namespace qsalg

#endif
