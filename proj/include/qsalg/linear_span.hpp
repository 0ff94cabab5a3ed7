#ifndef QSALG_LINEAR_SPAN_HPP
#define QSALG_LINEAR_SPAN_HPP

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "levy.hpp"

namespace qsalg {

struct Independent {
    friend bool operator==(Independent, Independent) = default;
};

struct Coefficients {
    std::vector<Rational> values;
    friend bool operator==(const Coefficients &, const Coefficients &) = default;
};

using Reduction = std::variant<Independent, Coefficients>;

/// Incremental row echelon form over process vectors. Each stored row keeps
/// its pivot (first nonzero coordinate in canonical basis order) and its
/// expression in terms of the vectors offered so far.
class SpanReducer {
public:
    /// Adds a basis vector; returns false if it was already in the span
    /// (it then receives coefficient 0 in every later reduction).
    bool push(const ProcessVector &v)
    {
        const std::size_t index = count_++;
        auto [residual, combo] = eliminate(v);
        for (auto &r : rows_)
            r.combination.resize(count_);
        if (residual.is_zero())
            return false;
        // residual = v - sum combo_k basis_k, so basis_index is the residual
        // plus the negated partial combination.
        std::vector<Rational> expression(count_);
        for (std::size_t k = 0; k < count_; ++k)
            expression[k] = k == index ? Rational(1) : Rational(-combo[k]);
        const BasisSymbol pivot = residual.begin()->first;
        const Rational lead = residual.begin()->second;
        residual *= Rational(1) / lead;
        for (auto &e : expression)
            e /= lead;
        rows_.push_back(Row{pivot, std::move(residual), std::move(expression)});
        return true;
    }

    [[nodiscard]] std::size_t size() const noexcept { return count_; }
    [[nodiscard]] std::size_t rank() const noexcept { return rows_.size(); }

    [[nodiscard]] Reduction reduce(const ProcessVector &target) const
    {
        auto [residual, combo] = eliminate(target);
        if (!residual.is_zero())
            return Independent{};
        combo.resize(count_);
        return Coefficients{std::move(combo)};
    }

private:
    struct Row {
        BasisSymbol pivot;
        ProcessVector vector;                 // pivot coordinate normalized to 1
        std::vector<Rational> combination;    // vector = sum combination_k basis_k
    };

    // Returns (target - sum f_r row_r, coefficients over original basis of sum f_r row_r).
    std::pair<ProcessVector, std::vector<Rational>> eliminate(const ProcessVector &target) const
    {
        ProcessVector residual = target;
        std::vector<Rational> combo(count_);
        for (const auto &row : rows_) {
            const Rational f = residual[row.pivot];
            if (sgn(f) == 0)
                continue;
            residual = residual - f * row.vector;
            for (std::size_t k = 0; k < row.combination.size(); ++k)
                combo[k] += f * row.combination[k];
        }
        return {std::move(residual), std::move(combo)};
    }

    std::vector<Row> rows_;
    std::size_t count_ = 0;
};

/// Solves target = sum_k c_k basis_k exactly. Basis vectors that are already
/// in the span of earlier ones receive coefficient 0.
inline Reduction reduce_against(const ProcessVector &target, std::span<const ProcessVector> basis)
{
    SpanReducer reducer;
    for (const auto &b : basis)
        reducer.push(b);
    return reducer.reduce(target);
}

inline Reduction reduce_against(const ProcessVector &target, std::initializer_list<ProcessVector> basis)
{
    return reduce_against(target, std::span<const ProcessVector>(basis.begin(), basis.size()));
}

inline const Coefficients *coefficients_if(const Reduction &r) { return std::get_if<Coefficients>(&r); }

} // namespace qsalg

#endif
