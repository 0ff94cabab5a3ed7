#ifndef QSALG_RENDER_HPP
#define QSALG_RENDER_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bracket_table.hpp"
#include "poly.hpp"

namespace qsalg {

/// Display order of terms: grade ascending, then longer words first, then
/// lexicographic by letter id.
inline std::vector<std::pair<Word, Rational>> canonical_terms(const Poly &p, const BracketTable &table)
{
    std::vector<std::pair<Word, Rational>> terms(p.begin(), p.end());
    std::stable_sort(terms.begin(), terms.end(), [&](const auto &x, const auto &y) {
        const int gx = table.grade(x.first), gy = table.grade(y.first);
        if (gx != gy)
            return gx < gy;
        if (x.first.size() != y.first.size())
            return x.first.size() > y.first.size();
        return std::lexicographical_compare(x.first.begin(), x.first.end(), y.first.begin(), y.first.end());
    });
    return terms;
}

inline std::string render_word(const Word &w, const BracketTable &table)
{
    std::string out;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k)
            out += '.';
        out += table.letter(w[k]).label;
    }
    return out;
}

/// "2 (x1.x1) + 1 (t)"; the zero polynomial renders as "0", the empty word as "()".
inline std::string render(const Poly &p, const BracketTable &table)
{
    if (p.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (const auto &[w, c] : canonical_terms(p, table)) {
        if (first)
            out += to_string(c);
        else if (sgn(c) < 0)
            out += " - " + to_string(Rational(-c));
        else
            out += " + " + to_string(c);
        out += " (" + render_word(w, table) + ")";
        first = false;
    }
    return out;
}

class LabelIndex {
public:
    explicit LabelIndex(const BracketTable &table)
    {
        for (const auto &l : table.letters())
            ids_.emplace(l.label, l.id);
    }

    [[nodiscard]] LetterId find(std::string_view label) const
    {
        auto it = ids_.find(std::string(label));
        if (it == ids_.end())
            throw UnknownLetter("unknown letter \"" + std::string(label) + "\"");
        return it->second;
    }

private:
    std::map<std::string, LetterId, std::less<>> ids_;
};

/// Dot-joined labels ("x1.x1.t"). "" and "()" denote the empty word.
inline Word parse_word(std::string_view text, const BracketTable &table)
{
    if (text == "()")
        text = "";
    if (text.size() >= 2 && text.front() == '(' && text.back() == ')')
        text = text.substr(1, text.size() - 2);
    Word w;
    if (text.empty())
        return w;
    LabelIndex index(table);
    std::size_t start = 0;
    while (true) {
        auto dot = text.find('.', start);
        auto label = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
        if (label.empty())
            throw ParseError("empty letter label in word \"" + std::string(text) + "\"");
        w.push_back(index.find(label));
        if (dot == std::string_view::npos)
            break;
        start = dot + 1;
    }
    return w;
}

/// Inverse of render(). Also accepts a bare word ("x1.t"), read with coefficient 1.
inline Poly parse_poly(std::string_view text, const BracketTable &table)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
            s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text == "0")
        return Poly{};
    if (text.find('(') == std::string_view::npos)
        return Poly(parse_word(text, table));

    Poly out;
    std::size_t pos = 0;
    bool first = true;
    while (true) {
        while (pos < text.size() && text[pos] == ' ')
            ++pos;
        if (pos == text.size())
            break;
        bool negative = false;
        if (!first) {
            if (text[pos] != '+' && text[pos] != '-')
                throw ParseError("expected '+' or '-' in \"" + std::string(text) + "\"");
            negative = text[pos] == '-';
            ++pos;
            while (pos < text.size() && text[pos] == ' ')
                ++pos;
        }
        const auto open = text.find('(', pos);
        const auto close = text.find(')', pos);
        if (open == std::string_view::npos || close == std::string_view::npos || close < open)
            throw ParseError("malformed term in \"" + std::string(text) + "\"");
        Rational c = parse_rational(trim(text.substr(pos, open - pos)));
        if (negative)
            c = -c;
        out.add(parse_word(text.substr(open + 1, close - open - 1), table), c);
        pos = close + 1;
        first = false;
    }
    return out;
}

} // namespace qsalg

#endif
