#ifndef QSALG_ORTHOGONALIZE_HPP
#define QSALG_ORTHOGONALIZE_HPP

#include <optional>
#include <vector>

#include "levy.hpp"
#include "linear_span.hpp"
#include "matrix.hpp"

namespace qsalg {

/// Sharp brackets of the Teugels martingales Y^(1..N) and their strong
/// orthogonalization Y = C H. Storage is 0-based: gram(i,j) is the
/// coefficient of t in <Y^(i+1), Y^(j+1)>, norms[n] is h_(n+1).
struct GramData {
    int order = 0;
    RationalMatrix gram;
    RationalMatrix coeff;          // unit lower triangular
    std::vector<Rational> norms;   // coefficient of t in <H^(n), H^(n)>

    /// h_n with 1-based n.
    [[nodiscard]] const Rational &h(int n) const { return norms.at(static_cast<std::size_t>(n - 1)); }
};

/// G(i,j) = alpha_(i+j) + sigma^2 1{i=j=1} for 1 <= i,j <= N.
inline RationalMatrix gram_matrix(const LevySpec &spec, int order)
{
    if (order < 1)
        throw std::invalid_argument("truncation order must be positive");
    const auto n = static_cast<std::size_t>(order);
    RationalMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            Rational v = moment(spec, static_cast<int>(i + j + 2));
            if (i == 0 && j == 0)
                v += spec.sigma * spec.sigma;
            g(i, j) = v;
            g(j, i) = v;
        }
    return g;
}

/// Gram-Schmidt in coefficient space (an exact LDL^T factorization where a
/// vanishing pivot records zero coefficients instead of dropping a
/// dimension). Rejects matrices that are not positive semidefinite.
inline GramData strong_orthogonalize(const RationalMatrix &gram)
{
    if (!gram.is_symmetric())
        throw NotPositiveSemidefinite("Gram matrix is not symmetric");
    const std::size_t n = gram.rows();
    GramData gd;
    gd.order = static_cast<int>(n);
    gd.gram = gram;
    gd.coeff = RationalMatrix::identity(n);
    gd.norms.assign(n, Rational(0));
    auto &c = gd.coeff;
    auto &h = gd.norms;
    for (std::size_t row = 0; row < n; ++row) {
        for (std::size_t k = 0; k < row; ++k) {
            // <Y^(row), H^(k)>
            Rational inner = gram(row, k);
            for (std::size_t i = 0; i < k; ++i)
                if (sgn(h[i]) != 0)
                    inner -= c(row, i) * c(k, i) * h[i];
            if (sgn(h[k]) != 0)
                c(row, k) = inner / h[k];
            else if (sgn(inner) != 0)
                throw NotPositiveSemidefinite("nonzero inner product with a null direction at order " +
                                              std::to_string(row + 1));
        }
        Rational norm = gram(row, row);
        for (std::size_t i = 0; i < row; ++i)
            norm -= c(row, i) * c(row, i) * h[i];
        if (sgn(norm) < 0)
            throw NotPositiveSemidefinite("negative orthogonal norm h_" + std::to_string(row + 1) + " = " +
                                          to_string(norm));
        h[row] = norm;
    }
    return gd;
}

inline GramData strong_orthogonalize(const LevySpec &spec, int order)
{
    return strong_orthogonalize(gram_matrix(spec, order));
}

/// Least n (1-based) with h_n = 0, if any within the truncation.
inline std::optional<int> first_zero_index(const GramData &gd)
{
    for (std::size_t n = 0; n < gd.norms.size(); ++n)
        if (sgn(gd.norms[n]) == 0)
            return static_cast<int>(n + 1);
    return std::nullopt;
}

/// Coefficient of t in the deterministic part of [X]^(n).
inline Rational deterministic_rate(const LevySpec &spec, int n)
{
    if (n == 1)
        return spec.drift;
    Rational r = moment(spec, n);
    if (n == 2)
        r += spec.sigma * spec.sigma;
    return r;
}

/// Expresses [X]^(n) over {t, [X]^(1), ..., [X]^(k0-1)} using moments only,
/// where k0 = first_zero_index(gd). Result has k0 entries, t first.
inline Coefficients span_expansion(const LevySpec &spec, int n, const GramData &gd)
{
    const auto zero = first_zero_index(gd);
    if (!zero)
        throw NotInSpan(spec.name + ": no degenerate orthogonal direction within truncation order " +
                        std::to_string(gd.order));
    const int k0 = *zero;
    if (n < k0)
        throw NotInSpan(spec.name + ": [X]^(" + std::to_string(n) + ") is below the first degenerate order " +
                        std::to_string(k0));
    const auto m = static_cast<std::size_t>(k0 - 1);

    auto sharp = [&](int i, int j) {
        Rational v = moment(spec, i + j);
        if (i == 1 && j == 1)
            v += spec.sigma * spec.sigma;
        return v;
    };

    // d_i = <Y^(n), H^(i)> / h_i for the nondegenerate directions i < k0.
    std::vector<Rational> inner(m), d(m);
    for (std::size_t i = 0; i < m; ++i) {
        Rational v = sharp(n, static_cast<int>(i + 1));
        for (std::size_t l = 0; l < i; ++l)
            v -= gd.coeff(i, l) * inner[l];
        inner[i] = v;
        d[i] = v / gd.norms[i];
    }

    std::optional<Rational> self;
    try {
        self = sharp(n, n);
    }
    catch (const MomentUnavailable &) {
    }
    if (self) {
        Rational residual = *self;
        for (std::size_t i = 0; i < m; ++i)
            residual -= d[i] * d[i] * gd.norms[i];
        if (sgn(residual) != 0)
            throw NotInSpan(spec.name + ": residual norm " + to_string(residual) + " of [X]^(" +
                            std::to_string(n) + ") is nonzero; moments are inconsistent");
    }

    // Y^(n) = d^T H and Y = L H on the leading block, so Y^(n) = e^T Y with L^T e = d.
    std::vector<Rational> e(m);
    for (std::size_t i = m; i-- > 0;) {
        Rational v = d[i];
        for (std::size_t j = i + 1; j < m; ++j)
            v -= gd.coeff(j, i) * e[j];
        e[i] = v;
    }

    Coefficients out;
    out.values.resize(m + 1);
    Rational t = deterministic_rate(spec, n);
    for (std::size_t i = 0; i < m; ++i) {
        t -= e[i] * deterministic_rate(spec, static_cast<int>(i + 1));
        out.values[i + 1] = e[i];
    }
    out.values[0] = t;
    return out;
}

/// Load-time check of a moment sequence: the Gram matrix at the largest
/// truncation the moments allow must be positive semidefinite.
inline void validate_moments(const LevySpec &spec)
{
    const auto top = max_moment_order(spec);
    if (!top)
        return;
    const int order = *top / 2;
    if (order < 1)
        throw InconsistentSpec(spec.name + ": moment sequence must supply at least alpha_2");
    strong_orthogonalize(spec, order);
}

} // namespace qsalg

#endif
