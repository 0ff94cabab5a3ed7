#ifndef QSALG_LEVY_HPP
#define QSALG_LEVY_HPP

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <type_traits>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace qsalg {

struct Atom {
    Rational size;
    Rational prob;
};

/// Compound Poisson jump part with finitely many jump sizes.
struct FiniteAtoms {
    Rational rate;
    std::vector<Atom> atoms;
};

/// Jump moments only: alpha[k] is alpha_{k+2}, the integral of x^(k+2)
/// against the Levy measure.
struct MomentSequence {
    std::vector<Rational> alpha;
};

using JumpLaw = std::variant<std::monostate, FiniteAtoms, MomentSequence>;

/// One Levy process X = drift t + sigma W + J with J a compensated pure
/// jump martingale.
struct LevySpec {
    std::string name;
    Rational drift = 0;
    Rational sigma = 0;
    JumpLaw jumps;

    [[nodiscard]] bool has_atoms() const { return std::holds_alternative<FiniteAtoms>(jumps); }
    [[nodiscard]] bool has_moment_sequence() const { return std::holds_alternative<MomentSequence>(jumps); }
    [[nodiscard]] bool is_continuous() const { return std::holds_alternative<std::monostate>(jumps); }
    [[nodiscard]] bool has_coordinates() const { return !has_moment_sequence(); }
    [[nodiscard]] const FiniteAtoms &atoms() const { return std::get<FiniteAtoms>(jumps); }
};

inline Rational first_jump_moment(const FiniteAtoms &law)
{
    Rational m = 0;
    for (const auto &a : law.atoms)
        m += a.prob * a.size;
    return law.rate * m;
}

/// Converts a drift b of X = b t + sigma W + (uncompensated jump sum) into the
/// compensated-form drift alpha = b + lambda sum p_j a_j.
inline Rational compensated_drift(const Rational &raw_drift, const FiniteAtoms &law)
{
    return raw_drift + first_jump_moment(law);
}

/// Structural checks on a single spec; throws InconsistentSpec.
inline void validate(const LevySpec &spec)
{
    auto fail = [&](const std::string &what) { throw InconsistentSpec(spec.name + ": " + what); };
    if (spec.name.empty())
        fail("empty process name");
    if (sgn(spec.sigma) < 0)
        fail("sigma must be nonnegative");
    if (const auto *law = std::get_if<FiniteAtoms>(&spec.jumps)) {
        if (sgn(law->rate) <= 0)
            fail("jump rate must be positive");
        if (law->atoms.empty())
            fail("jump law needs at least one atom");
        Rational total = 0;
        std::set<Rational> sizes;
        for (const auto &a : law->atoms) {
            if (sgn(a.size) == 0)
                fail("atom sizes must be nonzero");
            if (sgn(a.prob) <= 0)
                fail("atom probabilities must be positive");
            if (!sizes.insert(a.size).second)
                fail("atom sizes must be pairwise distinct");
            total += a.prob;
        }
        if (total != 1)
            fail("atom probabilities must sum to 1");
    }
    else if (std::holds_alternative<std::monostate>(spec.jumps)) {
        if (sgn(spec.sigma) == 0)
            fail("process is deterministic (no Brownian part and no jumps)");
    }
}

/// n-th jump moment alpha_n, n >= 2.
inline Rational moment(const LevySpec &spec, int n)
{
    if (n < 2)
        throw std::invalid_argument("moment order must be at least 2");
    return std::visit(
        [&](const auto &law) -> Rational {
            using T = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<T, std::monostate>)
                return 0;
            else if constexpr (std::is_same_v<T, FiniteAtoms>) {
                Rational m = 0;
                for (const auto &a : law.atoms)
                    m += a.prob * pow(a.size, static_cast<unsigned>(n));
                return law.rate * m;
            }
            else {
                const auto k = static_cast<std::size_t>(n - 2);
                if (k >= law.alpha.size())
                    throw MomentUnavailable(spec.name + ": moment alpha_" + std::to_string(n) +
                                            " is beyond the supplied sequence (last: alpha_" +
                                            std::to_string(law.alpha.size() + 1) + ")");
                return law.alpha[k];
            }
        },
        spec.jumps);
}

/// Highest moment order available; nullopt means unbounded.
inline std::optional<int> max_moment_order(const LevySpec &spec)
{
    if (const auto *seq = std::get_if<MomentSequence>(&spec.jumps))
        return static_cast<int>(seq->alpha.size()) + 1;
    return std::nullopt;
}

/// Coordinate of a process vector: time T, Brownian driver W_i, or the
/// uncompensated counter C_{i,j} of jumps of process i with size a_j.
/// The ordering T < W_* < C_* is the canonical basis order.
struct BasisSymbol {
    enum class Kind : int { Time = 0, Brownian = 1, Counter = 2 };
    Kind kind = Kind::Time;
    std::size_t process = 0;
    std::size_t atom = 0;

    static BasisSymbol time() { return {}; }
    static BasisSymbol brownian(std::size_t i) { return {Kind::Brownian, i, 0}; }
    static BasisSymbol counter(std::size_t i, std::size_t j) { return {Kind::Counter, i, j}; }

    friend auto operator<=>(const BasisSymbol &, const BasisSymbol &) = default;
};

/// "T", "W_1", "C_{1,2}" with 1-based indices.
inline std::string to_string(const BasisSymbol &s)
{
    switch (s.kind) {
    case BasisSymbol::Kind::Time:
        return "T";
    case BasisSymbol::Kind::Brownian:
        return "W_" + std::to_string(s.process + 1);
    case BasisSymbol::Kind::Counter:
        return "C_{" + std::to_string(s.process + 1) + "," + std::to_string(s.atom + 1) + "}";
    }
    return "?";
}

inline BasisSymbol parse_basis_symbol(const std::string &text)
{
    auto number = [&](const std::string &s) -> std::size_t {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || std::stoul(s) == 0)
            throw ParseError("bad basis symbol \"" + text + "\"");
        return std::stoul(s) - 1;
    };
    if (text == "T")
        return BasisSymbol::time();
    if (text.rfind("W_", 0) == 0)
        return BasisSymbol::brownian(number(text.substr(2)));
    if (text.rfind("C_{", 0) == 0 && text.back() == '}') {
        auto inner = text.substr(3, text.size() - 4);
        auto comma = inner.find(',');
        if (comma == std::string::npos)
            throw ParseError("bad basis symbol \"" + text + "\"");
        return BasisSymbol::counter(number(inner.substr(0, comma)), number(inner.substr(comma + 1)));
    }
    throw ParseError("bad basis symbol \"" + text + "\"");
}

/// Exact sparse coordinates of a semimartingale over {T, W_i, C_{i,j}}.
class ProcessVector {
public:
    using Coords = std::map<BasisSymbol, Rational>;

    ProcessVector() = default;
    ProcessVector(std::initializer_list<std::pair<const BasisSymbol, Rational>> init)
    {
        for (const auto &[s, c] : init)
            add(s, c);
    }

    [[nodiscard]] const Coords &coords() const noexcept { return coords_; }
    [[nodiscard]] bool is_zero() const noexcept { return coords_.empty(); }
    [[nodiscard]] auto begin() const noexcept { return coords_.begin(); }
    [[nodiscard]] auto end() const noexcept { return coords_.end(); }

    [[nodiscard]] Rational operator[](const BasisSymbol &s) const
    {
        auto it = coords_.find(s);
        return it == coords_.end() ? Rational(0) : it->second;
    }

    void add(const BasisSymbol &s, const Rational &c)
    {
        if (sgn(c) == 0)
            return;
        auto [it, inserted] = coords_.try_emplace(s, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0)
                coords_.erase(it);
        }
    }

    ProcessVector &operator+=(const ProcessVector &v)
    {
        for (const auto &[s, c] : v.coords_)
            add(s, c);
        return *this;
    }

    ProcessVector &operator*=(const Rational &c)
    {
        if (sgn(c) == 0) {
            coords_.clear();
            return *this;
        }
        for (auto &[s, d] : coords_)
            d *= c;
        return *this;
    }

    friend ProcessVector operator+(ProcessVector a, const ProcessVector &b) { return a += b; }
    friend ProcessVector operator*(const Rational &c, ProcessVector a) { return a *= c; }
    friend ProcessVector operator-(ProcessVector a, const ProcessVector &b)
    {
        for (const auto &[s, c] : b.coords_)
            a.add(s, -c);
        return a;
    }

    friend bool operator==(const ProcessVector &, const ProcessVector &) = default;

private:
    Coords coords_;
};

inline std::string to_string(const ProcessVector &v)
{
    if (v.is_zero())
        return "0";
    std::string out = "{";
    bool first = true;
    for (const auto &[s, c] : v) {
        if (!first)
            out += ", ";
        out += to_string(s) + ": " + to_string(c);
        first = false;
    }
    return out + "}";
}

/// Coordinates of X itself for the process at position `index` in its family:
/// drift T + sigma W + sum_j a_j C_j - (lambda sum_j p_j a_j) T.
inline ProcessVector canonicalize(const LevySpec &spec, std::size_t index = 0)
{
    if (!spec.has_coordinates())
        throw NoCoordinateForm(spec.name + ": moment-sequence processes have no coordinate form");
    ProcessVector v;
    v.add(BasisSymbol::time(), spec.drift);
    v.add(BasisSymbol::brownian(index), spec.sigma);
    if (const auto *law = std::get_if<FiniteAtoms>(&spec.jumps)) {
        for (std::size_t j = 0; j < law->atoms.size(); ++j)
            v.add(BasisSymbol::counter(index, j), law->atoms[j].size);
        v.add(BasisSymbol::time(), -first_jump_moment(*law));
    }
    return v;
}

/// [X]^(n): X for n = 1, sigma^2 1{n=2} T + sum_j a_j^n C_j for n >= 2.
inline ProcessVector power_bracket_vector(const LevySpec &spec, int n, std::size_t index = 0)
{
    if (n < 1)
        throw std::invalid_argument("power bracket order must be positive");
    if (n == 1)
        return canonicalize(spec, index);
    if (!spec.has_coordinates())
        throw NoCoordinateForm(spec.name + ": moment-sequence processes have no coordinate form");
    ProcessVector v;
    if (n == 2)
        v.add(BasisSymbol::time(), spec.sigma * spec.sigma);
    if (const auto *law = std::get_if<FiniteAtoms>(&spec.jumps))
        for (std::size_t j = 0; j < law->atoms.size(); ++j)
            v.add(BasisSymbol::counter(index, j), pow(law->atoms[j].size, static_cast<unsigned>(n)));
    return v;
}

/// Square bracket of two process vectors: [W_i,W_i] = T, [C,C] = C for the
/// same counter, every other pair of basis symbols brackets to zero.
inline ProcessVector bracket_vectors(const ProcessVector &u, const ProcessVector &v)
{
    ProcessVector out;
    for (const auto &[s, c] : u) {
        if (s.kind == BasisSymbol::Kind::Time)
            continue;
        const Rational d = v[s];
        if (sgn(d) == 0)
            continue;
        if (s.kind == BasisSymbol::Kind::Brownian)
            out.add(BasisSymbol::time(), c * d);
        else
            out.add(s, c * d);
    }
    return out;
}

} // namespace qsalg

#endif
