#ifndef QSALG_PATHSIM_HPP
#define QSALG_PATHSIM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <thread>
#include <vector>

#include "alphabet.hpp"
#include "quasi_shuffle.hpp"

namespace qsalg {

// ---------------------------------------------------------------------------
// Seeds
//
// Every random stream is a std::mt19937_64 seeded with
//   splitmix64(splitmix64(master) ^ splitmix64(stream_tag))
// where stream_tag = 2 * (process + 1) for jump arrivals and
// 2 * (process + 1) + 1 for Brownian increments. Path k of a Monte Carlo run
// uses master = path_seed(seed, k).
// ---------------------------------------------------------------------------

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t tag) noexcept
{
    return splitmix64(splitmix64(master) ^ splitmix64(tag));
}

constexpr std::uint64_t path_seed(std::uint64_t master, std::uint64_t path_index) noexcept
{
    return splitmix64(master + 0xD1B54A32D192ED03ull * (path_index + 1));
}

struct JumpEvent {
    std::uint64_t tick = 0;   // time = horizon * tick / 2^64
    double time = 0.0;
    std::size_t process = 0;
    std::size_t atom = 0;
};

struct BrownianGrid {
    Rational step;
    std::size_t steps = 0;
    double step_value = 0.0;
    double last_step_value = 0.0;                  // final cell may be shorter
    std::vector<std::vector<double>> increments;   // per process; empty when sigma = 0

    [[nodiscard]] double cell_length(std::size_t k) const { return k + 1 == steps ? last_step_value : step_value; }
};

/// One sampled trajectory of a Levy family on (0, T].
struct PathRecord {
    Rational horizon;
    double horizon_value = 0.0;
    std::vector<JumpEvent> jumps;   // strictly increasing ticks
    std::optional<BrownianGrid> grid;
    std::uint64_t seed = 0;

    /// Exact event time.
    [[nodiscard]] Rational time_of(const JumpEvent &e) const
    {
        mpz_class num;
        mpz_import(num.get_mpz_t(), 1, 1, sizeof(e.tick), 0, 0, &e.tick);
        mpz_class den = 1;
        den <<= 64;
        Rational frac(num, den);
        frac.canonicalize();
        return horizon * frac;
    }

    [[nodiscard]] std::size_t jump_count(std::size_t process) const
    {
        return static_cast<std::size_t>(
            std::count_if(jumps.begin(), jumps.end(), [&](const JumpEvent &e) { return e.process == process; }));
    }

    /// W^i at the horizon (zero without a grid or without a Brownian part).
    [[nodiscard]] double brownian_endpoint(std::size_t process) const
    {
        if (!grid || process >= grid->increments.size())
            return 0.0;
        double w = 0.0;
        for (double dw : grid->increments[process])
            w += dw;
        return w;
    }
};

inline bool has_diffusion(const std::vector<LevySpec> &family)
{
    return std::any_of(family.begin(), family.end(), [](const LevySpec &s) { return sgn(s.sigma) != 0; });
}

inline PathRecord sample_path(const std::vector<LevySpec> &family, const Rational &horizon, std::uint64_t seed,
                              const std::optional<Rational> &dt = std::nullopt)
{
    if (sgn(horizon) <= 0)
        throw validation_error("horizon T must be positive");
    for (const auto &spec : family)
        if (spec.has_moment_sequence())
            throw UnsupportedSpec(spec.name + ": moment-sequence processes cannot be simulated");
    const bool diffusive = has_diffusion(family);
    if (diffusive && !dt)
        throw MissingGrid("a Brownian grid step dt is required when some sigma > 0");
    if (diffusive && sgn(*dt) <= 0)
        throw validation_error("grid step dt must be positive");

    PathRecord path;
    path.horizon = horizon;
    path.horizon_value = horizon.get_d();
    path.seed = seed;

    std::set<std::uint64_t> used_ticks;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto *law = std::get_if<FiniteAtoms>(&family[i].jumps);
        if (!law || sgn(law->rate) == 0)
            continue;
        std::mt19937_64 rng(substream_seed(seed, 2 * (i + 1)));
        std::poisson_distribution<long> arrivals(Rational(law->rate * horizon).get_d());
        std::vector<double> probs;
        for (const auto &a : law->atoms)
            probs.push_back(a.prob.get_d());
        std::discrete_distribution<std::size_t> pick(probs.begin(), probs.end());
        const long count = arrivals(rng);
        for (long k = 0; k < count; ++k) {
            std::uint64_t tick = 0;
            while (tick == 0 || used_ticks.count(tick))
                tick = rng();
            used_ticks.insert(tick);
            JumpEvent e;
            e.tick = tick;
            e.time = path.horizon_value * std::ldexp(static_cast<double>(tick), -64);
            e.process = i;
            e.atom = pick(rng);
            path.jumps.push_back(e);
        }
    }
    std::sort(path.jumps.begin(), path.jumps.end(),
              [](const JumpEvent &a, const JumpEvent &b) { return a.tick < b.tick; });

    if (diffusive) {
        BrownianGrid g;
        g.step = *dt;
        const Rational cells = horizon / *dt;
        mpz_class n = cells.get_num() / cells.get_den();
        if (n * cells.get_den() != cells.get_num())
            n += 1;
        g.steps = static_cast<std::size_t>(n.get_ui());
        g.step_value = dt->get_d();
        g.last_step_value = Rational(horizon - Rational(n - 1) * *dt).get_d();
        g.increments.resize(family.size());
        for (std::size_t i = 0; i < family.size(); ++i) {
            if (sgn(family[i].sigma) == 0)
                continue;
            std::mt19937_64 rng(substream_seed(seed, 2 * (i + 1) + 1));
            std::normal_distribution<double> normal(0.0, 1.0);
            auto &inc = g.increments[i];
            inc.resize(g.steps);
            for (std::size_t k = 0; k < g.steps; ++k)
                inc[k] = normal(rng) * std::sqrt(g.cell_length(k));
        }
        path.grid = std::move(g);
    }
    return path;
}

// ---------------------------------------------------------------------------
// Iterated integrals
// ---------------------------------------------------------------------------

/// Evaluates I_w(T) for a set of words sharing one pass over the path. Words
/// are stored as a prefix trie; node u.a evolves by dI_{u.a} = I_u(s-) dI_a(s).
class IteratedIntegrals {
public:
    IteratedIntegrals(const Alphabet &alpha, const std::vector<Word> &words) : alpha_(&alpha)
    {
        nodes_.push_back(Node{});
        for (const auto &w : words) {
            alpha.table.require(w);
            std::size_t at = 0;
            for (auto a : w)
                at = child(at, a);
            word_nodes_.push_back(at);
        }
        letter_data_.resize(alpha.letters().size());
        for (std::size_t k = 0; k < nodes_.size(); ++k)
            if (k)
                prepare_letter(nodes_[k].letter);
    }

    /// True when no letter in use has a Brownian coordinate.
    [[nodiscard]] bool event_driven() const
    {
        for (std::size_t k = 1; k < nodes_.size(); ++k)
            if (!letter_data_[nodes_[k].letter.value]->brownian.empty())
                return false;
        return true;
    }

    /// Exact (rational) event-driven evaluation.
    [[nodiscard]] std::vector<Rational> exact(const PathRecord &path) const
    {
        if (!event_driven())
            throw validation_error("exact evaluation requires letters without a Brownian part");
        return run_events<Rational>(path, [&](const JumpEvent &e) { return path.time_of(e); }, path.horizon);
    }

    /// Floating-point evaluation; event-driven when possible, grid otherwise.
    [[nodiscard]] std::vector<double> approximate(const PathRecord &path) const
    {
        if (event_driven())
            return run_events<double>(path, [](const JumpEvent &e) { return e.time; }, path.horizon_value);
        return run_grid(path);
    }

private:
    struct Node {
        std::size_t parent = 0;
        LetterId letter{};
        std::size_t depth = 0;
    };

    struct LetterData {
        Rational time_rate;
        double time_rate_value = 0.0;
        std::map<std::pair<std::size_t, std::size_t>, Rational> jumps;   // (process, atom) -> increment
        std::map<std::pair<std::size_t, std::size_t>, double> jump_values;
        std::vector<std::pair<std::size_t, double>> brownian;            // (process, coefficient)
    };

    std::size_t child(std::size_t parent, LetterId a)
    {
        for (std::size_t k = 1; k < nodes_.size(); ++k)
            if (nodes_[k].parent == parent && nodes_[k].letter == a)
                return k;
        nodes_.push_back(Node{parent, a, nodes_[parent].depth + 1});
        return nodes_.size() - 1;
    }

    void prepare_letter(LetterId a)
    {
        auto &slot = letter_data_[a.value];
        if (slot)
            return;
        const auto &vec = alpha_->vectors.at(a.value);
        if (!vec)
            throw NoCoordinateForm("letter " + alpha_->table.letter(a).label + " has no coordinate form");
        LetterData d;
        for (const auto &[s, c] : *vec) {
            switch (s.kind) {
            case BasisSymbol::Kind::Time:
                d.time_rate = c;
                d.time_rate_value = c.get_d();
                break;
            case BasisSymbol::Kind::Brownian:
                d.brownian.emplace_back(s.process, c.get_d());
                break;
            case BasisSymbol::Kind::Counter:
                d.jumps[{s.process, s.atom}] = c;
                d.jump_values[{s.process, s.atom}] = c.get_d();
                break;
            }
        }
        slot = std::move(d);
    }

    template <typename S>
    const S &time_rate(const LetterData &d) const
    {
        if constexpr (std::is_same_v<S, Rational>)
            return d.time_rate;
        else
            return d.time_rate_value;
    }

    template <typename S>
    S jump_increment(const LetterData &d, const JumpEvent &e) const
    {
        if constexpr (std::is_same_v<S, Rational>) {
            auto it = d.jumps.find({e.process, e.atom});
            return it == d.jumps.end() ? Rational(0) : it->second;
        }
        else {
            auto it = d.jump_values.find({e.process, e.atom});
            return it == d.jump_values.end() ? 0.0 : it->second;
        }
    }

    template <typename S>
    std::vector<S> collect(const std::vector<S> &values) const
    {
        std::vector<S> out;
        out.reserve(word_nodes_.size());
        for (auto k : word_nodes_)
            out.push_back(values[k]);
        return out;
    }

    // Between events every I_u is a polynomial in the elapsed time r:
    // P_{u.a}(r) = I_{u.a}(s) + rate_a * int_0^r P_u.
    template <typename S, typename TimeOf>
    std::vector<S> run_events(const PathRecord &path, TimeOf time_of, const S &horizon) const
    {
        const std::size_t n = nodes_.size();
        std::vector<S> value(n, S(0)), left(n, S(0));
        value[0] = S(1);
        std::vector<std::vector<S>> poly(n);
        S start = S(0);

        auto advance = [&](const S &until) {
            const S elapsed = until - start;
            poly[0] = {S(1)};
            left[0] = S(1);
            for (std::size_t k = 1; k < n; ++k) {
                const auto &parent = poly[nodes_[k].parent];
                const S &rate = time_rate<S>(*letter_data_[nodes_[k].letter.value]);
                auto &p = poly[k];
                p.assign(1, value[k]);
                if (rate != S(0)) {
                    p.resize(parent.size() + 1, S(0));
                    for (std::size_t d = 0; d < parent.size(); ++d)
                        p[d + 1] = rate * parent[d] / S(static_cast<long>(d + 1));
                }
                S acc = S(0);
                for (std::size_t d = p.size(); d-- > 0;)
                    acc = acc * elapsed + p[d];
                left[k] = acc;
            }
            start = until;
        };

        for (const auto &e : path.jumps) {
            advance(time_of(e));
            value[0] = S(1);
            for (std::size_t k = 1; k < n; ++k) {
                const S inc = jump_increment<S>(*letter_data_[nodes_[k].letter.value], e);
                value[k] = left[k];
                if (inc != S(0))
                    value[k] += left[nodes_[k].parent] * inc;
            }
        }
        advance(horizon);
        return collect(left);
    }

    // Left-point sums on the Brownian grid; each cell is split at the jump
    // times inside it, with W interpolated linearly across the cell.
    std::vector<double> run_grid(const PathRecord &path) const
    {
        if (!path.grid)
            throw MissingGrid("path has no Brownian grid");
        const auto &g = *path.grid;
        const std::size_t n = nodes_.size();
        std::vector<double> value(n, 0.0);
        value[0] = 1.0;

        std::vector<std::size_t> order(n - 1);
        for (std::size_t k = 0; k + 1 < n; ++k)
            order[k] = k + 1;
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return nodes_[a].depth > nodes_[b].depth; });
        auto apply_ordered = [&](auto increment_of) {
            for (auto k : order) {
                const double inc = increment_of(*letter_data_[nodes_[k].letter.value]);
                if (inc != 0.0)
                    value[k] += value[nodes_[k].parent] * inc;
            }
        };

        std::size_t next_jump = 0;
        for (std::size_t cell = 0; cell < g.steps; ++cell) {
            const double h = g.cell_length(cell);
            const double cell_end =
                cell + 1 == g.steps ? path.horizon_value : static_cast<double>(cell + 1) * g.step_value;
            double t = static_cast<double>(cell) * g.step_value;
            auto continuous = [&](double until) {
                const double delta = std::max(0.0, until - t);
                const double frac = delta / h;
                apply_ordered([&](const LetterData &d) {
                    double inc = d.time_rate_value * delta;
                    for (const auto &[proc, coef] : d.brownian)
                        inc += coef * g.increments[proc][cell] * frac;
                    return inc;
                });
                t = until;
            };
            while (next_jump < path.jumps.size() && path.jumps[next_jump].time <= cell_end) {
                const auto &e = path.jumps[next_jump++];
                continuous(e.time);
                apply_ordered([&](const LetterData &d) {
                    auto it = d.jump_values.find({e.process, e.atom});
                    return it == d.jump_values.end() ? 0.0 : it->second;
                });
            }
            continuous(cell_end);
        }
        return collect(value);
    }

    const Alphabet *alpha_;
    std::vector<Node> nodes_;
    std::vector<std::size_t> word_nodes_;
    std::vector<std::optional<LetterData>> letter_data_;
};

/// I_w(T) as a double.
inline double eval_iterated(const PathRecord &path, const Word &w, const Alphabet &alpha)
{
    return IteratedIntegrals(alpha, {w}).approximate(path).front();
}

/// I_w(T) exactly; requires letters without a Brownian part.
inline Rational eval_iterated_exact(const PathRecord &path, const Word &w, const Alphabet &alpha)
{
    return IteratedIntegrals(alpha, {w}).exact(path).front();
}

struct ErrorReport {
    std::size_t n_paths = 0;
    double max_abs_error = 0.0;
    double rms_error = 0.0;
    bool exact = false;
};

struct VerifyOptions {
    std::size_t paths = 100;
    Rational horizon = 1;
    std::uint64_t seed = 42;
    std::optional<Rational> dt;
    bool exact = false;
    unsigned threads = 1;
};

/// Samples paths and measures |I_v I_w - sum_u coeff(u) I_u| at the horizon,
/// where the sum runs over the quasi-shuffle v * w. In exact mode every
/// error is computed in rational arithmetic.
inline ErrorReport verify_product(const Word &v, const Word &w, const Alphabet &alpha, const VerifyOptions &opt)
{
    const Poly product = quasi_shuffle(v, w, alpha.table);
    std::vector<Word> words{v, w};
    std::vector<Rational> coeffs;
    for (const auto &[u, c] : product) {
        words.push_back(u);
        coeffs.push_back(c);
    }
    const IteratedIntegrals integrals(alpha, words);
    if (opt.exact && !integrals.event_driven())
        throw validation_error("--exact requires letters without a Brownian part (all sigma = 0)");
    std::vector<double> coeff_values;
    for (const auto &c : coeffs)
        coeff_values.push_back(c.get_d());

    std::vector<double> errors(opt.paths, 0.0);
    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const PathRecord path = sample_path(alpha.family, opt.horizon, path_seed(opt.seed, k), opt.dt);
            if (opt.exact) {
                const auto vals = integrals.exact(path);
                Rational e = vals[0] * vals[1];
                for (std::size_t j = 0; j < coeffs.size(); ++j)
                    e -= coeffs[j] * vals[j + 2];
                errors[k] = std::fabs(e.get_d());
                if (sgn(e) != 0 && errors[k] == 0.0)
                    errors[k] = std::numeric_limits<double>::denorm_min();
            }
            else {
                const auto vals = integrals.approximate(path);
                double e = vals[0] * vals[1];
                for (std::size_t j = 0; j < coeff_values.size(); ++j)
                    e -= coeff_values[j] * vals[j + 2];
                errors[k] = std::fabs(e);
            }
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(opt.paths)));
    if (threads == 1)
        run_range(0, opt.paths);
    else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (opt.paths + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t b = t * chunk, e = std::min(opt.paths, b + chunk);
            if (b < e)
                pool.emplace_back(run_range, b, e);
        }
    }

    ErrorReport report;
    report.n_paths = opt.paths;
    report.exact = opt.exact;
    long double sum_sq = 0.0L;
    for (double e : errors) {
        report.max_abs_error = std::max(report.max_abs_error, e);
        sum_sq += static_cast<long double>(e) * e;
    }
    report.rms_error = opt.paths ? static_cast<double>(std::sqrt(sum_sq / opt.paths)) : 0.0;
    return report;
}

/// Teugels martingale Y^(n) of process `process` at the horizon:
/// Y^(1) = X - drift t, Y^(n) = sum of n-th powers of jumps - alpha_n t.
inline double teugels_value(const PathRecord &path, const std::vector<LevySpec> &family, std::size_t process,
                            int n)
{
    const auto &spec = family.at(process);
    double sum = 0.0;
    if (spec.has_atoms()) {
        const auto &atoms = spec.atoms().atoms;
        for (const auto &e : path.jumps)
            if (e.process == process)
                sum += std::pow(atoms[e.atom].size.get_d(), n);
    }
    if (n == 1) {
        const double compensator = spec.has_atoms() ? first_jump_moment(spec.atoms()).get_d() : 0.0;
        return spec.sigma.get_d() * path.brownian_endpoint(process) + sum - compensator * path.horizon_value;
    }
    return sum - moment(spec, n).get_d() * path.horizon_value;
}

} // namespace qsalg

#endif
