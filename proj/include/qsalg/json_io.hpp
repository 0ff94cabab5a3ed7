#ifndef QSALG_JSON_IO_HPP
#define QSALG_JSON_IO_HPP

#include <json.hpp>

#include <string>

#include "alphabet.hpp"
#include "matrix.hpp"
#include "orthogonalize.hpp"
#include "pathsim.hpp"
#include "render.hpp"

namespace qsalg::json {

using nlohmann::json;

inline json rational(const Rational &q) { return to_string(q); }

inline Rational to_rational(const json &j)
{
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return Rational(j.get<long>());
    throw ParseError("expected a rational string, got " + j.dump());
}

inline json word(const Word &w, const BracketTable &table)
{
    json out = json::array();
    for (auto a : w)
        out.push_back(table.letter(a).label);
    return out;
}

inline Word to_word(const json &j, const BracketTable &table)
{
    LabelIndex index(table);
    Word w;
    for (const auto &label : j)
        w.push_back(index.find(label.get<std::string>()));
    return w;
}

/// {"text": "...", "terms": [{"coeff": "p/q", "word": [labels]}]}, terms in canonical order.
inline json poly(const Poly &p, const BracketTable &table)
{
    json terms = json::array();
    for (const auto &[w, c] : canonical_terms(p, table))
        terms.push_back({{"coeff", to_string(c)}, {"word", word(w, table)}});
    return {{"text", render(p, table)}, {"terms", terms}};
}

inline Poly to_poly(const json &j, const BracketTable &table)
{
    Poly p;
    for (const auto &t : j.at("terms"))
        p.add(to_word(t.at("word"), table), to_rational(t.at("coeff")));
    return p;
}

inline json vector(const ProcessVector &v)
{
    json out = json::object();
    for (const auto &[s, c] : v)
        out[to_string(s)] = to_string(c);
    return out;
}

inline ProcessVector to_vector(const json &j)
{
    ProcessVector v;
    for (const auto &[key, value] : j.items())
        v.add(parse_basis_symbol(key), to_rational(value));
    return v;
}

inline json matrix(const RationalMatrix &m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(to_string(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline RationalMatrix to_matrix(const json &j)
{
    std::vector<std::vector<Rational>> rows;
    for (const auto &r : j) {
        rows.emplace_back();
        for (const auto &x : r)
            rows.back().push_back(to_rational(x));
    }
    return RationalMatrix::from_rows(rows);
}

inline json levy_spec(const LevySpec &spec)
{
    json out = {{"name", spec.name}, {"drift", to_string(spec.drift)}, {"sigma", to_string(spec.sigma)}};
    if (const auto *law = std::get_if<FiniteAtoms>(&spec.jumps)) {
        json atoms = json::array();
        for (const auto &a : law->atoms)
            atoms.push_back({{"size", to_string(a.size)}, {"prob", to_string(a.prob)}});
        out["jumps"] = {{"rate", to_string(law->rate)}, {"atoms", atoms}};
    }
    else if (const auto *seq = std::get_if<MomentSequence>(&spec.jumps)) {
        json moments = json::array();
        for (const auto &m : seq->alpha)
            moments.push_back(to_string(m));
        out["jumps"] = {{"moments", moments}};
    }
    return out;
}

inline const char *kind_name(Provenance::Kind k)
{
    switch (k) {
    case Provenance::Kind::Generator:
        return "generator";
    case Provenance::Kind::Time:
        return "time";
    case Provenance::Kind::PowerBracket:
        return "power_bracket";
    }
    return "?";
}

inline Provenance::Kind to_kind(const std::string &s)
{
    if (s == "generator")
        return Provenance::Kind::Generator;
    if (s == "time")
        return Provenance::Kind::Time;
    if (s == "power_bracket")
        return Provenance::Kind::PowerBracket;
    throw ParseError("unknown provenance kind \"" + s + "\"");
}

inline json alphabet(const Alphabet &alpha)
{
    const auto &table = alpha.table;
    json letters = json::array();
    for (const auto &l : alpha.letters()) {
        const auto &prov = alpha.provenance[l.id.value];
        json entry = {{"id", l.id.value}, {"label", l.label}, {"grade", l.grade}};
        json p = {{"kind", kind_name(prov.kind)}};
        if (prov.kind != Provenance::Kind::Time) {
            p["process"] = alpha.family[prov.process].name;
            p["order"] = prov.order;
        }
        entry["provenance"] = p;
        if (const auto &v = alpha.vectors[l.id.value])
            entry["coords"] = vector(*v);
        letters.push_back(entry);
    }
    json brackets = json::array();
    for (const auto &[key, value] : table.entries())
        brackets.push_back({{"a", table.letter(key.first).label},
                            {"b", table.letter(key.second).label},
                            {"value", poly(value, table)}});
    json undetermined = json::array();
    for (const auto &[a, b] : table.undetermined())
        undetermined.push_back({table.letter(a).label, table.letter(b).label});
    json family = json::array();
    for (const auto &s : alpha.family)
        family.push_back(levy_spec(s));
    json notices = json::array();
    for (const auto &n : alpha.notices)
        notices.push_back({{"process", alpha.family[n.process].name}, {"last_order", n.last_order},
                           {"reason", n.reason}});
    const auto verdict = is_graded(alpha);
    json graded = {{"graded", verdict.graded}};
    if (verdict.witness)
        graded["witness"] = {table.letter(verdict.witness->first).label,
                             table.letter(verdict.witness->second).label};
    return {{"letters", letters},     {"brackets", brackets}, {"undetermined", undetermined},
            {"graded", graded},       {"family", family},     {"max_grade", alpha.max_grade},
            {"truncation", notices}};
}

inline LevySpec to_levy_spec(const json &j);

inline Alphabet to_alphabet(const json &j)
{
    Alphabet alpha;
    for (const auto &s : j.at("family"))
        alpha.family.push_back(to_levy_spec(s));
    alpha.max_grade = j.at("max_grade").get<int>();
    auto process_index = [&](const std::string &name) {
        for (std::size_t i = 0; i < alpha.family.size(); ++i)
            if (alpha.family[i].name == name)
                return i;
        throw ParseError("unknown process \"" + name + "\"");
    };
    std::vector<Letter> letters;
    for (const auto &l : j.at("letters")) {
        letters.push_back(Letter{LetterId{l.at("id").get<std::uint32_t>()}, l.at("grade").get<int>(),
                                 l.at("label").get<std::string>()});
        const auto &p = l.at("provenance");
        Provenance prov;
        prov.kind = to_kind(p.at("kind").get<std::string>());
        if (prov.kind == Provenance::Kind::Time)
            prov.order = 0;
        else {
            prov.process = process_index(p.at("process").get<std::string>());
            prov.order = p.at("order").get<int>();
        }
        alpha.provenance.push_back(prov);
        alpha.vectors.push_back(l.contains("coords") ? std::optional(to_vector(l.at("coords"))) : std::nullopt);
    }
    alpha.table = BracketTable(std::move(letters));
    LabelIndex index(alpha.table);
    for (const auto &b : j.at("brackets"))
        alpha.table.set(index.find(b.at("a").get<std::string>()), index.find(b.at("b").get<std::string>()),
                        to_poly(b.at("value"), alpha.table));
    for (const auto &u : j.at("undetermined"))
        alpha.table.set_undetermined(index.find(u.at(0).get<std::string>()), index.find(u.at(1).get<std::string>()));
    for (const auto &n : j.at("truncation"))
        alpha.notices.push_back({process_index(n.at("process").get<std::string>()), n.at("last_order").get<int>(),
                                 n.at("reason").get<std::string>()});
    return alpha;
}

inline LevySpec to_levy_spec(const json &j)
{
    LevySpec s;
    s.name = j.at("name").get<std::string>();
    s.drift = to_rational(j.at("drift"));
    s.sigma = to_rational(j.at("sigma"));
    if (j.contains("jumps")) {
        const auto &jumps = j.at("jumps");
        if (jumps.contains("moments")) {
            MomentSequence seq;
            for (const auto &m : jumps.at("moments"))
                seq.alpha.push_back(to_rational(m));
            s.jumps = seq;
        }
        else {
            FiniteAtoms law;
            law.rate = to_rational(jumps.at("rate"));
            for (const auto &a : jumps.at("atoms"))
                law.atoms.push_back({to_rational(a.at("size")), to_rational(a.at("prob"))});
            s.jumps = law;
        }
    }
    return s;
}

inline json gram_data(const GramData &gd)
{
    json h = json::array();
    for (const auto &x : gd.norms)
        h.push_back(to_string(x));
    json out = {{"order", gd.order}, {"G", matrix(gd.gram)}, {"C", matrix(gd.coeff)}, {"h", h}};
    if (auto k = first_zero_index(gd))
        out["first_zero_index"] = *k;
    else
        out["first_zero_index"] = nullptr;
    return out;
}

inline json error_report(const ErrorReport &r)
{
    return {{"n_paths", r.n_paths}, {"max_abs_error", r.max_abs_error}, {"rms_error", r.rms_error},
            {"exact", r.exact}};
}

} // namespace qsalg::json

#endif
