#ifndef QSALG_CONFIG_HPP
#define QSALG_CONFIG_HPP

#include <json.hpp>

#include <fstream>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>

#include "json_io.hpp"
#include "levy.hpp"
#include "orthogonalize.hpp"

namespace qsalg {

class ConfigError : public validation_error {
public:
    ConfigError(const std::string &field, const std::string &what) : validation_error(field + ": " + what) {}
};

struct RunDefaults {
    Rational horizon = 1;
    std::optional<Rational> dt;
    std::size_t paths = 100;
    std::uint64_t seed = 42;
};

struct Config {
    int schema_version = 1;
    std::vector<LevySpec> processes;
    int max_grade = 6;
    RunDefaults defaults;

    [[nodiscard]] const LevySpec &process(const std::string &name) const
    {
        for (const auto &p : processes)
            if (p.name == name)
                return p;
        throw ConfigError("processes", "no process named \"" + name + "\"");
    }
};

inline constexpr int current_schema_version = 1;

namespace detail {

using nlohmann::json;

inline void reject_unknown_keys(const json &obj, const std::string &path, std::initializer_list<const char *> keys)
{
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto &[key, _] : obj.items())
        if (!allowed.count(key))
            throw ConfigError(path + "." + key, "unknown field");
}

inline const json &require_object(const json &j, const std::string &path)
{
    if (!j.is_object())
        throw ConfigError(path, "expected an object");
    return j;
}

inline Rational read_rational(const json &j, const std::string &path)
{
    try {
        if (j.is_string())
            return parse_rational(j.get<std::string>());
        if (j.is_number_integer())
            return Rational(j.get<long>());
    }
    catch (const ParseError &e) {
        throw ConfigError(path, e.what());
    }
    throw ConfigError(path, "expected a rational string such as \"1/2\"");
}

template <typename Int>
Int read_integer(const json &j, const std::string &path, long long min_value)
{
    if (!j.is_number_integer() || j.get<long long>() < min_value)
        throw ConfigError(path, "expected an integer >= " + std::to_string(min_value));
    return j.get<Int>();
}

inline LevySpec read_process(const json &j, const std::string &path)
{
    require_object(j, path);
    reject_unknown_keys(j, path, {"name", "drift", "raw_drift", "sigma", "jumps"});
    LevySpec spec;
    if (!j.contains("name") || !j.at("name").is_string())
        throw ConfigError(path + ".name", "required string");
    spec.name = j.at("name").get<std::string>();
    static const std::regex name_pattern("[A-Za-z_][A-Za-z0-9_]*");
    if (!std::regex_match(spec.name, name_pattern))
        throw ConfigError(path + ".name", "must match [A-Za-z_][A-Za-z0-9_]*, got \"" + spec.name + "\"");
    if (spec.name == "t")
        throw ConfigError(path + ".name", "\"t\" is reserved for the time letter");
    if (j.contains("sigma")) {
        spec.sigma = read_rational(j.at("sigma"), path + ".sigma");
        if (sgn(spec.sigma) < 0)
            throw ConfigError(path + ".sigma", "must be nonnegative");
    }
    if (j.contains("drift") && j.contains("raw_drift"))
        throw ConfigError(path, "give either drift or raw_drift, not both");

    if (j.contains("jumps")) {
        const auto jp = path + ".jumps";
        const auto &jumps = require_object(j.at("jumps"), jp);
        reject_unknown_keys(jumps, jp, {"rate", "atoms", "moments"});
        if (jumps.contains("moments")) {
            if (jumps.contains("rate") || jumps.contains("atoms"))
                throw ConfigError(jp, "moments cannot be combined with rate/atoms");
            const auto &m = jumps.at("moments");
            if (!m.is_array() || m.empty())
                throw ConfigError(jp + ".moments", "expected a nonempty array [alpha_2, alpha_3, ...]");
            MomentSequence seq;
            for (std::size_t k = 0; k < m.size(); ++k)
                seq.alpha.push_back(read_rational(m[k], jp + ".moments[" + std::to_string(k) + "]"));
            spec.jumps = std::move(seq);
        }
        else {
            if (!jumps.contains("rate") || !jumps.contains("atoms"))
                throw ConfigError(jp, "finite jump law needs rate and atoms");
            FiniteAtoms law;
            law.rate = read_rational(jumps.at("rate"), jp + ".rate");
            if (sgn(law.rate) <= 0)
                throw ConfigError(jp + ".rate", "must be positive");
            const auto &atoms = jumps.at("atoms");
            if (!atoms.is_array() || atoms.empty())
                throw ConfigError(jp + ".atoms", "expected a nonempty array");
            Rational total = 0;
            std::set<Rational> sizes;
            for (std::size_t k = 0; k < atoms.size(); ++k) {
                const auto ap = jp + ".atoms[" + std::to_string(k) + "]";
                require_object(atoms[k], ap);
                reject_unknown_keys(atoms[k], ap, {"size", "prob"});
                if (!atoms[k].contains("size") || !atoms[k].contains("prob"))
                    throw ConfigError(ap, "atom needs size and prob");
                Atom a{read_rational(atoms[k].at("size"), ap + ".size"), read_rational(atoms[k].at("prob"), ap + ".prob")};
                if (sgn(a.size) == 0)
                    throw ConfigError(ap + ".size", "must be nonzero");
                if (!sizes.insert(a.size).second)
                    throw ConfigError(ap + ".size", "duplicate atom size");
                if (sgn(a.prob) <= 0)
                    throw ConfigError(ap + ".prob", "must be positive");
                total += a.prob;
                law.atoms.push_back(std::move(a));
            }
            if (total != 1)
                throw ConfigError(jp + ".atoms", "probabilities sum to " + to_string(total) + ", expected 1");
            spec.jumps = std::move(law);
        }
    }

    if (j.contains("drift"))
        spec.drift = read_rational(j.at("drift"), path + ".drift");
    else if (j.contains("raw_drift")) {
        const Rational raw = read_rational(j.at("raw_drift"), path + ".raw_drift");
        if (spec.has_moment_sequence())
            throw ConfigError(path + ".raw_drift", "needs a finite jump law (the first jump moment is unknown)");
        spec.drift = spec.has_atoms() ? compensated_drift(raw, spec.atoms()) : raw;
    }

    try {
        validate(spec);
        validate_moments(spec);
    }
    catch (const validation_error &e) {
        throw ConfigError(path, e.what());
    }
    return spec;
}

} // namespace detail

/// Parses and validates a config document. Every error names the offending field.
inline Config parse_config(const nlohmann::json &j)
{
    detail::require_object(j, "$");
    detail::reject_unknown_keys(j, "$", {"schema_version", "processes", "max_grade", "defaults"});
    Config cfg;
    if (!j.contains("schema_version"))
        throw ConfigError("$.schema_version", "required");
    cfg.schema_version = detail::read_integer<int>(j.at("schema_version"), "$.schema_version", 1);
    if (cfg.schema_version != current_schema_version)
        throw ConfigError("$.schema_version", "unsupported version " + std::to_string(cfg.schema_version) +
                                                  " (expected " + std::to_string(current_schema_version) + ")");
    if (j.contains("max_grade"))
        cfg.max_grade = detail::read_integer<int>(j.at("max_grade"), "$.max_grade", 2);
    if (!j.contains("processes") || !j.at("processes").is_array() || j.at("processes").empty())
        throw ConfigError("$.processes", "required nonempty array");
    std::set<std::string> names;
    const auto &procs = j.at("processes");
    for (std::size_t k = 0; k < procs.size(); ++k) {
        const auto path = "$.processes[" + std::to_string(k) + "]";
        cfg.processes.push_back(detail::read_process(procs[k], path));
        if (!names.insert(cfg.processes.back().name).second)
            throw ConfigError(path + ".name", "duplicate process name \"" + cfg.processes.back().name + "\"");
    }
    if (j.contains("defaults")) {
        const auto &d = detail::require_object(j.at("defaults"), "$.defaults");
        detail::reject_unknown_keys(d, "$.defaults", {"T", "dt", "paths", "seed"});
        if (d.contains("T")) {
            cfg.defaults.horizon = detail::read_rational(d.at("T"), "$.defaults.T");
            if (sgn(cfg.defaults.horizon) <= 0)
                throw ConfigError("$.defaults.T", "must be positive");
        }
        if (d.contains("dt")) {
            cfg.defaults.dt = detail::read_rational(d.at("dt"), "$.defaults.dt");
            if (sgn(*cfg.defaults.dt) <= 0)
                throw ConfigError("$.defaults.dt", "must be positive");
        }
        if (d.contains("paths"))
            cfg.defaults.paths = detail::read_integer<std::size_t>(d.at("paths"), "$.defaults.paths", 1);
        if (d.contains("seed"))
            cfg.defaults.seed = detail::read_integer<std::uint64_t>(d.at("seed"), "$.defaults.seed", 0);
    }
    return cfg;
}

inline Config parse_config_text(const std::string &text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error &e) {
        throw ConfigError("$", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(j);
}

inline Config load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path, "cannot open config file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

} // namespace qsalg

#endif
