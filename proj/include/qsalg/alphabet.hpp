#ifndef QSALG_ALPHABET_HPP
#define QSALG_ALPHABET_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bracket_table.hpp"
#include "levy.hpp"
#include "linear_span.hpp"
#include "orthogonalize.hpp"

namespace qsalg {

/// What a letter stands for: a generator X^i, the time process t, or the
/// power bracket [X^i]^(n) with n >= 2.
struct Provenance {
    enum class Kind { Generator, Time, PowerBracket };
    Kind kind = Kind::Generator;
    std::size_t process = 0;
    int order = 1;

    friend bool operator==(const Provenance &, const Provenance &) = default;
};

struct TruncationNotice {
    std::size_t process = 0;
    int last_order = 0;      // highest power bracket order that received a letter
    std::string reason;

    friend bool operator==(const TruncationNotice &, const TruncationNotice &) = default;
};

/// Letters, their meaning, and the bracket structure constants for a family
/// of independent Levy processes.
struct Alphabet {
    BracketTable table;
    std::vector<Provenance> provenance;                // by letter id
    std::vector<std::optional<ProcessVector>> vectors; // by letter id, absent for moment-only processes
    std::vector<LevySpec> family;
    int max_grade = 6;
    std::vector<TruncationNotice> notices;

    [[nodiscard]] const std::vector<Letter> &letters() const noexcept { return table.letters(); }

    [[nodiscard]] LetterId time_letter() const { return LetterId{static_cast<std::uint32_t>(family.size())}; }

    [[nodiscard]] std::optional<LetterId> letter_for(std::size_t process, int order) const
    {
        for (std::size_t k = 0; k < provenance.size(); ++k) {
            const auto &p = provenance[k];
            if (p.kind != Provenance::Kind::Time && p.process == process && p.order == order)
                return LetterId{static_cast<std::uint32_t>(k)};
        }
        return std::nullopt;
    }

    /// Highest power bracket order with a letter for `process` (1 = generator only).
    [[nodiscard]] int top_order(std::size_t process) const
    {
        int top = 0;
        for (const auto &p : provenance)
            if (p.kind != Provenance::Kind::Time && p.process == process)
                top = std::max(top, p.order);
        return top;
    }

    [[nodiscard]] bool truncated() const noexcept { return !notices.empty(); }
};

namespace detail {

struct ProcessLetters {
    int top = 1;                         // letters for orders 1..top
    bool complete = false;               // a reduction was found at order top + 1
    std::optional<SpanReducer> reducer;  // coordinate route: basis T, X^(1..top)
    std::optional<GramData> gram;        // moment route
    std::string truncation_reason;
};

inline ProcessLetters classify_by_coordinates(const LevySpec &spec, std::size_t index)
{
    ProcessLetters out;
    SpanReducer reducer;
    reducer.push(ProcessVector{{BasisSymbol::time(), 1}});
    if (!reducer.push(canonicalize(spec, index)))
        throw InconsistentSpec(spec.name + ": process is deterministic");
    // k atoms allow at most k power bracket letters; the bound is a guard only.
    std::size_t guard = 2;
    if (spec.has_atoms())
        guard += spec.atoms().atoms.size();
    for (int n = 2;; ++n) {
        if (static_cast<std::size_t>(n) > guard + 1)
            throw invariant_violation(spec.name + ": power brackets failed to reduce within the atom bound");
        if (!reducer.push(power_bracket_vector(spec, n, index)))
            break;
        out.top = n;
    }
    out.complete = true;
    out.reducer = std::move(reducer);
    return out;
}

inline ProcessLetters classify_by_moments(const LevySpec &spec, int max_grade)
{
    ProcessLetters out;
    const int available = *max_moment_order(spec) / 2;
    if (available < 1)
        throw InconsistentSpec(spec.name + ": moment sequence must supply at least alpha_2");
    GramData gd = strong_orthogonalize(spec, available);
    const auto zero = first_zero_index(gd);
    if (zero && *zero == 1)
        throw InconsistentSpec(spec.name + ": process is deterministic");
    if (zero && *zero - 1 <= max_grade) {
        out.top = *zero - 1;
        out.complete = true;
    }
    else if (zero) {
        out.top = max_grade;
        out.truncation_reason = "max_grade " + std::to_string(max_grade) + " reached";
    }
    else {
        out.top = std::min(available, max_grade);
        out.truncation_reason = available <= max_grade
                                    ? "moments exhausted: no degeneracy at truncation order " +
                                          std::to_string(available)
                                    : "max_grade " + std::to_string(max_grade) + " reached";
    }
    out.gram = std::move(gd);
    return out;
}

} // namespace detail

/// Builds the alphabet and bracket table of a family of independent Levy
/// processes. Letter ids: generators in family order, then t, then power
/// brackets ordered by (process, order). Finite-atom processes always
/// terminate; `max_grade` only truncates moment-sequence processes.
inline Alphabet build_alphabet(const std::vector<LevySpec> &family, int max_grade = 6)
{
    if (family.empty())
        throw InconsistentSpec("family must contain at least one process");
    if (max_grade < 2)
        throw InconsistentSpec("max_grade must be at least 2");
    std::set<std::string> names;
    for (const auto &spec : family) {
        validate(spec);
        if (spec.name == "t")
            throw InconsistentSpec("process name \"t\" is reserved for the time letter");
        if (!names.insert(spec.name).second)
            throw InconsistentSpec("duplicate process name \"" + spec.name + "\"");
    }

    std::vector<detail::ProcessLetters> classes;
    for (std::size_t i = 0; i < family.size(); ++i)
        classes.push_back(family[i].has_coordinates() ? detail::classify_by_coordinates(family[i], i)
                                                      : detail::classify_by_moments(family[i], max_grade));

    Alphabet alpha;
    alpha.family = family;
    alpha.max_grade = max_grade;

    std::vector<Letter> letters;
    auto add_letter = [&](std::string label, int grade, Provenance prov, std::optional<ProcessVector> vec) {
        letters.push_back(Letter{LetterId{static_cast<std::uint32_t>(letters.size())}, grade, std::move(label)});
        alpha.provenance.push_back(prov);
        alpha.vectors.push_back(std::move(vec));
    };

    for (std::size_t i = 0; i < family.size(); ++i)
        add_letter(family[i].name, 1, {Provenance::Kind::Generator, i, 1},
                   family[i].has_coordinates() ? std::optional(canonicalize(family[i], i)) : std::nullopt);
    add_letter("t", 2, {Provenance::Kind::Time, 0, 0}, ProcessVector{{BasisSymbol::time(), 1}});
    for (std::size_t i = 0; i < family.size(); ++i)
        for (int n = 2; n <= classes[i].top; ++n)
            add_letter(family[i].name + "^" + std::to_string(n), n, {Provenance::Kind::PowerBracket, i, n},
                       family[i].has_coordinates() ? std::optional(power_bracket_vector(family[i], n, i))
                                                   : std::nullopt);

    alpha.table = BracketTable(std::move(letters));

    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto &spec = family[i];
        const auto &cls = classes[i];
        if (!cls.truncation_reason.empty())
            alpha.notices.push_back({i, cls.top, cls.truncation_reason});

        auto expansion_poly = [&](const Coefficients &c) {
            Poly p = Poly::letter(alpha.time_letter(), c.values[0]);
            for (int k = 1; k <= cls.top; ++k)
                p.add(Word{*alpha.letter_for(i, k)}, c.values[static_cast<std::size_t>(k)]);
            return p;
        };

        for (int n = 1; n <= cls.top; ++n)
            for (int m = n; m <= cls.top; ++m) {
                const LetterId a = *alpha.letter_for(i, n), b = *alpha.letter_for(i, m);
                const int s = n + m;
                if (s <= cls.top) {
                    alpha.table.set(a, b, Poly::letter(*alpha.letter_for(i, s)));
                    continue;
                }
                if (!cls.complete) {
                    alpha.table.set_undetermined(a, b);
                    continue;
                }
                Coefficients coeffs;
                if (cls.reducer) {
                    auto r = cls.reducer->reduce(power_bracket_vector(spec, s, i));
                    const auto *c = coefficients_if(r);
                    if (!c)
                        throw invariant_violation(spec.name + ": [X]^(" + std::to_string(s) +
                                                  ") escaped the span of lower brackets");
                    coeffs = *c;
                }
                else {
                    try {
                        coeffs = span_expansion(spec, s, *cls.gram);
                    }
                    catch (const MomentUnavailable &e) {
                        throw TruncationExceeded(spec.name + ": bracket [" + alpha.table.letter(a).label + "," +
                                                 alpha.table.letter(b).label +
                                                 "] needs moments beyond the supplied range (" + e.what() + ")");
                    }
                }
                alpha.table.set(a, b, expansion_poly(coeffs));
            }
    }
    if (auto bad = alpha.table.associativity_violation()) {
        const auto &[a, b, c] = *bad;
        throw invariant_violation("bracket table is not associative at (" + alpha.table.letter(a).label + "," +
                                  alpha.table.letter(b).label + "," + alpha.table.letter(c).label + ")");
    }
    return alpha;
}

/// [a,b] as a combination of letters; zero when the entry is absent.
inline Poly bracket_letters(const Alphabet &alpha, LetterId a, LetterId b) { return alpha.table.bracket(a, b); }

struct GradedVerdict {
    bool graded = true;
    std::optional<std::pair<LetterId, LetterId>> witness;
};

/// Graded iff every nonzero [a,b] is homogeneous of grade g(a)+g(b).
/// The witness is the first violating pair in letter-id order.
inline GradedVerdict is_graded(const BracketTable &table)
{
    for (const auto &[key, value] : table.entries()) {
        const int expected = table.grade(key.first) + table.grade(key.second);
        for (const auto &[w, c] : value)
            if (table.grade(w) != expected)
                return {false, key};
    }
    return {};
}

inline GradedVerdict is_graded(const Alphabet &alpha) { return is_graded(alpha.table); }

} // namespace qsalg

#endif
