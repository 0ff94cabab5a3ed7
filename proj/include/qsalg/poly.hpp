#ifndef QSALG_POLY_HPP
#define QSALG_POLY_HPP

#include <map>
#include <utility>

#include "rational.hpp"
#include "word.hpp"

namespace qsalg {

/// Finite formal linear combination of words with exact rational
/// coefficients. Zero coefficients are never stored, so structural equality
/// is equality of elements.
class Poly {
public:
    using Terms = std::map<Word, Rational>;

    Poly() = default;
    explicit Poly(Word w, Rational c = 1) { add(std::move(w), c); }

    static Poly unit() { return Poly(Word{}); }
    static Poly letter(LetterId a, Rational c = 1) { return Poly(Word{a}, std::move(c)); }

    [[nodiscard]] const Terms &terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    [[nodiscard]] auto begin() const noexcept { return terms_.begin(); }
    [[nodiscard]] auto end() const noexcept { return terms_.end(); }

    [[nodiscard]] Rational coefficient(const Word &w) const
    {
        auto it = terms_.find(w);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// True when every term is a single letter.
    [[nodiscard]] bool is_linear_in_letters() const
    {
        for (const auto &[w, c] : terms_)
            if (w.size() != 1)
                return false;
        return true;
    }

    void add(const Word &w, const Rational &c)
    {
        if (is_zero_q(c))
            return;
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (is_zero_q(it->second))
                terms_.erase(it);
        }
    }

    void add(Word &&w, const Rational &c)
    {
        if (is_zero_q(c))
            return;
        auto [it, inserted] = terms_.try_emplace(std::move(w), c);
        if (!inserted) {
            it->second += c;
            if (is_zero_q(it->second))
                terms_.erase(it);
        }
    }

    /// this += c * p
    void add_scaled(const Poly &p, const Rational &c)
    {
        if (is_zero_q(c))
            return;
        for (const auto &[w, d] : p.terms_)
            add(w, c * d);
    }

    Poly &operator+=(const Poly &p)
    {
        for (const auto &[w, c] : p.terms_)
            add(w, c);
        return *this;
    }

    Poly &operator-=(const Poly &p)
    {
        for (const auto &[w, c] : p.terms_)
            add(w, -c);
        return *this;
    }

    Poly &operator*=(const Rational &c)
    {
        if (is_zero_q(c)) {
            terms_.clear();
            return *this;
        }
        for (auto &[w, d] : terms_)
            d *= c;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly &b) { return a += b; }
    friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
    friend Poly operator-(Poly a) { return a *= Rational(-1); }
    friend Poly operator*(Poly a, const Rational &c) { return a *= c; }
    friend Poly operator*(const Rational &c, Poly a) { return a *= c; }

    friend bool operator==(const Poly &, const Poly &) = default;

    /// Every word with letter `a` appended, i.e. right multiplication by a.
    [[nodiscard]] Poly append(LetterId a) const
    {
        Poly out;
        for (const auto &[w, c] : terms_) {
            Word v = w;
            v.push_back(a);
            out.terms_.emplace_hint(out.terms_.end(), std::move(v), c);
        }
        return out;
    }

    /// Right concatenation with a linear combination of letters.
    [[nodiscard]] Poly append(const Poly &letters) const
    {
        Poly out;
        for (const auto &[l, cl] : letters.terms_)
            for (const auto &[w, c] : terms_) {
                Word v = w;
                v.push_back(l[0]);
                out.add(std::move(v), c * cl);
            }
        return out;
    }

private:
    static bool is_zero_q(const Rational &c) { return sgn(c) == 0; }

    Terms terms_;
};

/// Concatenation product, extended bilinearly.
inline Poly concat(const Poly &p, const Poly &q)
{
    Poly out;
    for (const auto &[v, a] : p)
        for (const auto &[w, b] : q)
            out.add(concat(v, w), a * b);
    return out;
}

} // namespace qsalg

#endif
