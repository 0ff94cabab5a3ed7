#ifndef QSALG_MATRIX_HPP
#define QSALG_MATRIX_HPP

#include <string>
#include <vector>

#include "rational.hpp"

namespace qsalg {

/// Dense row-major matrix of exact rationals, 0-based indices.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix identity(std::size_t n)
    {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static RationalMatrix from_rows(const std::vector<std::vector<Rational>> &rows)
    {
        RationalMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < m.rows_; ++i) {
            if (rows[i].size() != m.cols_)
                throw std::invalid_argument("ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

    Rational &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    [[nodiscard]] bool is_symmetric() const
    {
        if (!is_square())
            return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if ((*this)(i, j) != (*this)(j, i))
                    return false;
        return true;
    }

    [[nodiscard]] RationalMatrix transpose() const
    {
        RationalMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    [[nodiscard]] std::vector<std::vector<Rational>> to_rows() const
    {
        std::vector<std::vector<Rational>> out(rows_, std::vector<Rational>(cols_));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out[i][j] = (*this)(i, j);
        return out;
    }

    friend RationalMatrix operator*(const RationalMatrix &a, const RationalMatrix &b)
    {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix shape mismatch");
        RationalMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational &x = a(i, k);
                if (sgn(x) == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += x * b(k, j);
            }
        return c;
    }

    friend bool operator==(const RationalMatrix &, const RationalMatrix &) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

inline RationalMatrix diagonal(const std::vector<Rational> &d)
{
    RationalMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        m(i, i) = d[i];
    return m;
}

inline std::string to_string(const RationalMatrix &m)
{
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j)
                out += ", ";
            out += to_string(m(i, j));
        }
        out += "]\n";
    }
    return out;
}

} // namespace qsalg

#endif
