#ifndef QSALG_WORD_HPP
#define QSALG_WORD_HPP

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qsalg {

struct LetterId {
    std::uint32_t value = 0;

    friend constexpr auto operator<=>(LetterId, LetterId) = default;
};

struct Letter {
    LetterId id;
    int grade = 1;
    std::string label;
};

/// Finite sequence of letter ids; the empty word is the unit of every product.
class Word {
public:
    Word() = default;
    Word(std::initializer_list<LetterId> letters) : letters_(letters) {}
    explicit Word(std::vector<LetterId> letters) : letters_(std::move(letters)) {}
    explicit Word(std::span<const LetterId> letters) : letters_(letters.begin(), letters.end()) {}

    static Word letter(LetterId a) { return Word{a}; }

    [[nodiscard]] std::size_t size() const noexcept { return letters_.size(); }
    [[nodiscard]] bool empty() const noexcept { return letters_.empty(); }
    [[nodiscard]] LetterId operator[](std::size_t i) const { return letters_[i]; }
    [[nodiscard]] std::span<const LetterId> letters() const noexcept { return letters_; }
    [[nodiscard]] auto begin() const noexcept { return letters_.begin(); }
    [[nodiscard]] auto end() const noexcept { return letters_.end(); }

    [[nodiscard]] Word prefix(std::size_t n) const { return Word(std::span(letters_).first(n)); }
    [[nodiscard]] Word suffix_from(std::size_t n) const { return Word(std::span(letters_).subspan(n)); }

    void push_back(LetterId a) { letters_.push_back(a); }

    friend bool operator==(const Word &, const Word &) = default;

    /// Shortlex order: length first, then lexicographic by id. Used as the
    /// storage order of polynomial terms.
    friend std::strong_ordering operator<=>(const Word &v, const Word &w)
    {
        if (auto c = v.size() <=> w.size(); c != 0)
            return c;
        return std::lexicographical_compare_three_way(v.letters_.begin(), v.letters_.end(), w.letters_.begin(),
                                                      w.letters_.end());
    }

private:
    std::vector<LetterId> letters_;
};

inline Word concat(const Word &v, const Word &w)
{
    std::vector<LetterId> out(v.begin(), v.end());
    out.insert(out.end(), w.begin(), w.end());
    return Word(std::move(out));
}

/// All |w|+1 prefix/suffix splittings in left-to-right order.
inline std::vector<std::pair<Word, Word>> deconcat(const Word &w)
{
    std::vector<std::pair<Word, Word>> out;
    out.reserve(w.size() + 1);
    for (std::size_t k = 0; k <= w.size(); ++k)
        out.emplace_back(w.prefix(k), w.suffix_from(k));
    return out;
}

} // namespace qsalg

#endif
