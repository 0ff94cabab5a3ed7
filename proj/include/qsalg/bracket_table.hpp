#ifndef QSALG_BRACKET_TABLE_HPP
#define QSALG_BRACKET_TABLE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"

namespace qsalg {

/// The letters of an alphabet together with the commutative bracket of
/// letters, stored as structure constants. A missing entry means zero.
///
/// Letter ids are dense: letters()[k].id == LetterId{k}.
class BracketTable {
public:
    BracketTable() = default;

    explicit BracketTable(std::vector<Letter> letters) : letters_(std::move(letters))
    {
        for (std::size_t k = 0; k < letters_.size(); ++k) {
            if (letters_[k].id.value != k)
                throw invariant_violation("letter ids must be dense and ordered");
            if (letters_[k].grade < 1)
                throw invariant_violation("letter grade must be positive: " + letters_[k].label);
        }
    }

    [[nodiscard]] const std::vector<Letter> &letters() const noexcept { return letters_; }
    [[nodiscard]] std::size_t letter_count() const noexcept { return letters_.size(); }

    [[nodiscard]] bool contains(LetterId a) const noexcept { return a.value < letters_.size(); }

    [[nodiscard]] const Letter &letter(LetterId a) const
    {
        require(a);
        return letters_[a.value];
    }

    void require(LetterId a) const
    {
        if (!contains(a))
            throw UnknownLetter("letter id " + std::to_string(a.value) + " is not in the alphabet");
    }

    void require(const Word &w) const
    {
        for (auto a : w)
            require(a);
    }

    void require(const Poly &p) const
    {
        for (const auto &[w, c] : p)
            require(w);
    }

    /// Sets [a,b] = [b,a] = value. The value must be a combination of letters.
    void set(LetterId a, LetterId b, Poly value)
    {
        require(a);
        require(b);
        require(value);
        if (!value.is_linear_in_letters())
            throw invariant_violation("bracket entries must be linear combinations of letters");
        auto key = ordered(a, b);
        undetermined_.erase(key);
        if (value.is_zero())
            entries_.erase(key);
        else
            entries_[key] = std::move(value);
    }

    /// Marks [a,b] as not computable (the alphabet was truncated before it).
    void set_undetermined(LetterId a, LetterId b)
    {
        require(a);
        require(b);
        auto key = ordered(a, b);
        entries_.erase(key);
        undetermined_.insert(key);
    }

    [[nodiscard]] bool is_undetermined(LetterId a, LetterId b) const
    {
        return undetermined_.count(ordered(a, b)) != 0;
    }

    /// [a,b]; zero when absent.
    [[nodiscard]] const Poly &bracket(LetterId a, LetterId b) const
    {
        static const Poly zero;
        require(a);
        require(b);
        auto key = ordered(a, b);
        if (undetermined_.count(key))
            throw TruncationExceeded("bracket [" + letters_[a.value].label + "," + letters_[b.value].label +
                                     "] lies beyond the truncation of the alphabet");
        auto it = entries_.find(key);
        return it == entries_.end() ? zero : it->second;
    }

    /// Bilinear extension of the letter bracket to linear combinations of letters.
    [[nodiscard]] Poly bracket(const Poly &x, const Poly &y) const
    {
        Poly out;
        for (const auto &[u, cu] : x)
            for (const auto &[v, cv] : y)
                out.add_scaled(bracket(u[0], v[0]), cu * cv);
        return out;
    }

    [[nodiscard]] const std::map<std::pair<LetterId, LetterId>, Poly> &entries() const noexcept { return entries_; }
    [[nodiscard]] const std::set<std::pair<LetterId, LetterId>> &undetermined() const noexcept { return undetermined_; }

    [[nodiscard]] int grade(LetterId a) const { return letter(a).grade; }

    [[nodiscard]] int grade(const Word &w) const
    {
        int g = 0;
        for (auto a : w)
            g += grade(a);
        return g;
    }

    /// First letter triple (a,b,c) with [a,[b,c]] != [[a,b],c], skipping
    /// triples that touch undetermined entries.
    [[nodiscard]] std::optional<std::tuple<LetterId, LetterId, LetterId>> associativity_violation() const
    {
        const auto n = static_cast<std::uint32_t>(letters_.size());
        auto touches_undetermined = [&](const Poly &x, LetterId c) {
            for (const auto &[w, _] : x)
                if (is_undetermined(w[0], c))
                    return true;
            return false;
        };
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j)
                for (std::uint32_t k = 0; k < n; ++k) {
                    LetterId a{i}, b{j}, c{k};
                    if (is_undetermined(b, c) || is_undetermined(a, b))
                        continue;
                    const Poly &bc = bracket(b, c);
                    const Poly &ab = bracket(a, b);
                    if (touches_undetermined(bc, a) || touches_undetermined(ab, c))
                        continue;
                    if (bracket(Poly::letter(a), bc) != bracket(ab, Poly::letter(c)))
                        return std::tuple{a, b, c};
                }
        return std::nullopt;
    }

    friend bool operator==(const BracketTable &x, const BracketTable &y)
    {
        if (x.entries_ != y.entries_ || x.undetermined_ != y.undetermined_ ||
            x.letters_.size() != y.letters_.size())
            return false;
        for (std::size_t k = 0; k < x.letters_.size(); ++k)
            if (x.letters_[k].grade != y.letters_[k].grade || x.letters_[k].label != y.letters_[k].label)
                return false;
        return true;
    }

private:
    static std::pair<LetterId, LetterId> ordered(LetterId a, LetterId b)
    {
        return a <= b ? std::pair{a, b} : std::pair{b, a};
    }

    std::vector<Letter> letters_;
    std::map<std::pair<LetterId, LetterId>, Poly> entries_;
    std::set<std::pair<LetterId, LetterId>> undetermined_;
};

/// Table over `count` letters of grade 1 labelled a, b, c, ... with no
/// bracket entries; handy for tests and for the plain shuffle product.
inline BracketTable free_table(std::size_t count)
{
    std::vector<Letter> letters;
    for (std::size_t k = 0; k < count; ++k) {
        std::string label = k < 26 ? std::string(1, static_cast<char>('a' + k)) : "l" + std::to_string(k);
        letters.push_back(Letter{LetterId{static_cast<std::uint32_t>(k)}, 1, label});
    }
    return BracketTable(std::move(letters));
}

} // namespace qsalg

#endif
