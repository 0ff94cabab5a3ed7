#ifndef QSALG_CLI_HPP
#define QSALG_CLI_HPP

#include <CLI11.hpp>
#include <json.hpp>

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "hoffman.hpp"
#include "hopf.hpp"
#include "json_io.hpp"

namespace qsalg::cli {

enum ExitCode : int { ok = 0, validation_failure = 1, invariant_failure = 2 };

namespace detail {

inline void print_alphabet(std::ostream &out, const Alphabet &alpha)
{
    const auto &table = alpha.table;
    out << "letters:\n";
    for (const auto &l : alpha.letters()) {
        const auto &prov = alpha.provenance[l.id.value];
        out << "  " << l.label << "  grade " << l.grade << "  ";
        switch (prov.kind) {
        case Provenance::Kind::Generator:
            out << "generator " << alpha.family[prov.process].name;
            break;
        case Provenance::Kind::Time:
            out << "time";
            break;
        case Provenance::Kind::PowerBracket:
            out << "[" << alpha.family[prov.process].name << "]^(" << prov.order << ")";
            break;
        }
        if (const auto &v = alpha.vectors[l.id.value])
            out << "  coords " << to_string(*v);
        out << "\n";
    }
    out << "brackets:\n";
    if (table.entries().empty())
        out << "  (all zero)\n";
    for (const auto &[key, value] : table.entries())
        out << "  [" << table.letter(key.first).label << "," << table.letter(key.second).label
            << "] = " << render(value, table) << "\n";
    for (const auto &[a, b] : table.undetermined())
        out << "  [" << table.letter(a).label << "," << table.letter(b).label << "] = undetermined (truncated)\n";
    out << "  all other brackets are zero\n";
    const auto verdict = is_graded(alpha);
    out << "graded: " << (verdict.graded ? "true" : "false");
    if (verdict.witness)
        out << " (witness [" << table.letter(verdict.witness->first).label << ","
            << table.letter(verdict.witness->second).label << "])";
    out << "\nfiltered: true\n";
    for (const auto &n : alpha.notices)
        out << "truncation: " << alpha.family[n.process].name << " has letters up to order " << n.last_order << " ("
            << n.reason << ")\n";
}

inline void print_gram(std::ostream &out, const GramData &gd, bool with_factors)
{
    out << "G (order " << gd.order << "):\n" << to_string(gd.gram);
    if (!with_factors)
        return;
    out << "C:\n" << to_string(gd.coeff) << "h: [";
    for (std::size_t k = 0; k < gd.norms.size(); ++k)
        out << (k ? ", " : "") << to_string(gd.norms[k]);
    out << "]\n";
    if (auto k0 = first_zero_index(gd))
        out << "first zero index: " << *k0 << " (at truncation order " << gd.order << ")\n";
    else
        out << "first zero index: none (at truncation order " << gd.order << ")\n";
}

/// Truncation order that is guaranteed to expose the degeneracy of a
/// finite-atom process, or the largest one the moments allow.
inline int default_order(const LevySpec &spec, int n)
{
    if (auto top = max_moment_order(spec))
        return *top / 2;
    std::size_t k = spec.has_atoms() ? spec.atoms().atoms.size() : 0;
    return std::max(n, static_cast<int>(k) + 2);
}

} // namespace detail

/// Runs one CLI invocation; `args` excludes the program name.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Quasi-shuffle algebras of independent Levy processes", "qsalg"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "emit JSON instead of text");

    std::string config_path, lhs, rhs, name;
    int order = 0;
    std::optional<int> truncation;

    auto *alphabet_cmd = app.add_subcommand("alphabet", "letters, grades, provenance and bracket table");
    alphabet_cmd->add_option("config", config_path)->required();

    auto add_binary = [&](const char *cmd, const char *help) {
        auto *sub = app.add_subcommand(cmd, help);
        sub->add_option("config", config_path)->required();
        sub->add_option("v", lhs, "word (x1.x1.t) or polynomial")->required();
        sub->add_option("w", rhs, "word or polynomial")->required();
        return sub;
    };
    auto *mul_cmd = add_binary("mul", "quasi-shuffle product");
    auto *shuffle_cmd = add_binary("shuffle", "shuffle product");

    auto add_unary = [&](const char *cmd, const char *help) {
        auto *sub = app.add_subcommand(cmd, help);
        sub->add_option("config", config_path)->required();
        sub->add_option("p", lhs, "word or polynomial")->required();
        return sub;
    };
    auto *exp_cmd = add_unary("exp", "Hoffman exponential");
    auto *log_cmd = add_unary("log", "Hoffman logarithm");
    auto *antipode_cmd = add_unary("antipode", "Hopf antipode");

    auto add_process_cmd = [&](const char *cmd, const char *help, const char *what) {
        auto *sub = app.add_subcommand(cmd, help);
        sub->add_option("config", config_path)->required();
        sub->add_option("name", name, "process name")->required();
        sub->add_option(what, order)->required()->check(CLI::PositiveNumber);
        return sub;
    };
    auto *gram_cmd = add_process_cmd("gram", "Gram matrix of Teugels sharp brackets", "N");
    auto *orth_cmd = add_process_cmd("orthogonalize", "strong orthogonalization G = C diag(h) C^T", "N");
    auto *expand_cmd = add_process_cmd("expand", "span expansion of [X]^(n) from moments", "n");
    expand_cmd->add_option("--order", truncation, "Gram truncation order")->check(CLI::PositiveNumber);

    auto *verify_cmd = add_binary("verify", "pathwise check of I_v I_w = I_(v*w)");
    std::optional<std::size_t> paths;
    std::optional<std::string> horizon_text, dt_text;
    std::optional<std::uint64_t> seed;
    bool exact = false;
    unsigned threads = 1;
    verify_cmd->add_option("--paths", paths, "number of sample paths")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--T", horizon_text, "horizon as a rational");
    verify_cmd->add_option("--seed", seed, "master seed");
    verify_cmd->add_option("--dt", dt_text, "Brownian grid step as a rational");
    verify_cmd->add_flag("--exact", exact, "exact rational evaluation (pure-jump families)");
    verify_cmd->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

    std::vector<std::string> argv_store{"qsalg"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &a : argv_store)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : validation_failure;
    }

    using Json = nlohmann::json;
    namespace jio = qsalg::json;
    try {
        const Config cfg = load_config(config_path);
        auto emit = [&](const Json &j) { out << j.dump(2) << "\n"; };

        if (alphabet_cmd->parsed()) {
            const Alphabet alpha = build_alphabet(cfg.processes, cfg.max_grade);
            if (as_json)
                emit(jio::alphabet(alpha));
            else
                detail::print_alphabet(out, alpha);
            return ok;
        }

        if (mul_cmd->parsed() || shuffle_cmd->parsed() || exp_cmd->parsed() || log_cmd->parsed() ||
            antipode_cmd->parsed()) {
            const Alphabet alpha = build_alphabet(cfg.processes, cfg.max_grade);
            const auto &table = alpha.table;
            const Poly p = parse_poly(lhs, table);
            Poly result;
            if (mul_cmd->parsed())
                result = quasi_shuffle(p, parse_poly(rhs, table), table);
            else if (shuffle_cmd->parsed())
                result = shuffle(p, parse_poly(rhs, table));
            else if (exp_cmd->parsed())
                result = hoffman_exp(p, table);
            else if (log_cmd->parsed())
                result = hoffman_log(p, table);
            else
                result = antipode(p, table);
            if (as_json)
                emit(jio::poly(result, table));
            else
                out << render(result, table) << "\n";
            return ok;
        }

        if (gram_cmd->parsed() || orth_cmd->parsed()) {
            const auto &spec = cfg.process(name);
            if (gram_cmd->parsed()) {
                const auto g = gram_matrix(spec, order);
                if (as_json)
                    emit(Json{{"process", name}, {"order", order}, {"G", jio::matrix(g)}});
                else
                    out << "G (order " << order << "):\n" << to_string(g);
                return ok;
            }
            const auto gd = strong_orthogonalize(spec, order);
            if (as_json) {
                auto j = jio::gram_data(gd);
                j["process"] = name;
                emit(j);
            }
            else
                detail::print_gram(out, gd, true);
            return ok;
        }

        if (expand_cmd->parsed()) {
            const auto &spec = cfg.process(name);
            const int n = order;
            const auto gd = strong_orthogonalize(spec, truncation.value_or(detail::default_order(spec, n)));
            const auto c = span_expansion(spec, n, gd);
            std::vector<std::string> basis{"t"};
            for (std::size_t k = 1; k < c.values.size(); ++k)
                basis.push_back("[" + name + "]^(" + std::to_string(k) + ")");
            if (as_json) {
                Json coeffs = Json::array();
                for (const auto &v : c.values)
                    coeffs.push_back(to_string(v));
                emit(Json{{"process", name}, {"n", n}, {"order", gd.order}, {"basis", basis}, {"coefficients", coeffs}});
            }
            else {
                out << "[" << name << "]^(" << n << ") =";
                for (std::size_t k = 0; k < c.values.size(); ++k) {
                    const Rational &v = c.values[k];
                    if (k == 0)
                        out << " " << to_string(v);
                    else
                        out << (sgn(v) < 0 ? " - " : " + ") << to_string(Rational(abs(v)));
                    out << " " << basis[k];
                }
                out << "\n(first zero index " << c.values.size() << " at truncation order " << gd.order << ")\n";
            }
            return ok;
        }

        if (verify_cmd->parsed()) {
            const Alphabet alpha = build_alphabet(cfg.processes, cfg.max_grade);
            VerifyOptions opt;
            opt.paths = paths.value_or(cfg.defaults.paths);
            opt.horizon = horizon_text ? parse_rational(*horizon_text) : cfg.defaults.horizon;
            opt.seed = seed.value_or(cfg.defaults.seed);
            opt.dt = dt_text ? std::optional(parse_rational(*dt_text)) : cfg.defaults.dt;
            opt.exact = exact;
            opt.threads = threads;
            const Word v = parse_word(lhs, alpha.table), w = parse_word(rhs, alpha.table);
            const ErrorReport report = verify_product(v, w, alpha, opt);
            if (as_json)
                emit(jio::error_report(report));
            else
                out << "n_paths: " << report.n_paths << "\nmax_abs_error: " << report.max_abs_error
                    << "\nrms_error: " << report.rms_error << "\nexact: " << (report.exact ? "true" : "false")
                    << "\n";
            if (report.exact && report.max_abs_error != 0.0) {
                err << "error: exact evaluation produced a nonzero product defect\n";
                return invariant_failure;
            }
            return ok;
        }
    }
    catch (const invariant_violation &e) {
        err << "internal invariant violated: " << e.what() << "\n";
        return invariant_failure;
    }
    catch (const validation_error &e) {
        err << "error: " << e.what() << "\n";
        return validation_failure;
    }
    catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return validation_failure;
    }
    catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return invariant_failure;
    }
    return validation_failure;
}

} // namespace qsalg::cli

#endif
