#ifndef RESONANCE_IO_HPP
#define RESONANCE_IO_HPP

#include <complex>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "extremes.hpp"
#include "kronecker.hpp"
#include "resonator.hpp"
#include "trigpoly.hpp"

namespace resonance::io {

using json = nlohmann::json;

/// [{"lambda": x, "f": y}, ...] with nonnegative real f.
inline TrigSeries series_from_json(const json &j)
{
    if (!j.is_array())
        throw std::invalid_argument("series JSON must be an array of {\"lambda\", \"f\"} objects");
    std::vector<Term> terms;
    terms.reserve(j.size());
    for (const auto &e : j) {
        if (!e.contains("lambda") || !e.contains("f") || !e["lambda"].is_number() || !e["f"].is_number())
            throw std::invalid_argument("series JSON entry needs numeric \"lambda\" and \"f\"");
        terms.push_back({e["lambda"].get<double>(), e["f"].get<double>()});
    }
    return TrigSeries(std::move(terms));
}

/// As series_from_json, but "f" may also be {"re": a, "im": b}.
inline ComplexTrigSeries complex_series_from_json(const json &j)
{
    if (!j.is_array())
        throw std::invalid_argument("series JSON must be an array");
    std::vector<ComplexTerm> terms;
    for (const auto &e : j) {
        if (!e.contains("lambda") || !e["lambda"].is_number() || !e.contains("f"))
            throw std::invalid_argument("series JSON entry needs \"lambda\" and \"f\"");
        const auto &f = e["f"];
        std::complex<double> c;
        if (f.is_number())
            c = {f.get<double>(), 0.0};
        else if (f.is_object() && f.contains("re") && f.contains("im"))
            c = {f["re"].get<double>(), f["im"].get<double>()};
        else
            throw std::invalid_argument("series JSON \"f\" must be a number or {\"re\", \"im\"}");
        terms.push_back({e["lambda"].get<double>(), c});
    }
    return ComplexTrigSeries(std::move(terms));
}

inline json to_json(const TrigSeries &s)
{
    json arr = json::array();
    for (const auto &t : s.terms())
        arr.push_back({{"lambda", t.lambda}, {"f", t.f}});
    return arr;
}

inline json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
}

inline json to_json(const ResonanceReport &r)
{
    json per = json::array();
    for (const auto &e : r.per_m)
        per.push_back({{"index", e.index}, {"lambda", e.lambda}, {"f", e.f}, {"sum", e.sum}, {"threshold", e.threshold}});
    return {
        {"mode", to_string(r.mode)},
        {"M", r.M},
        {"L", r.L},
        {"T", r.T},
        {"X", r.X},
        {"Y", r.Y},
        {"gamma", r.gamma},
        {"J1", r.J1},
        {"J2", r.J2},
        {"J2_lower", r.J2_lower},
        {"J2_upper", r.J2_upper},
        {"ratio", r.ratio},
        {"selected_mass", r.selected_mass},
        {"weighted_mass", r.weighted_mass},
        {"theorem_bound", r.theorem_bound},
        {"weighted_bound", r.weighted_bound},
        {"lemma_bound", r.lemma_bound},
        {"coefficient_mass", r.coefficient_mass},
        {"tail_error", r.tail_error},
        {"bound", r.bound},
        {"ratio_meets_constant", r.ratio_meets_constant},
        {"lemma_holds", r.lemma_holds},
        {"per_m", per},
    };
}

inline json to_json(const ScanResult &s)
{
    return {{"lo", s.lo},
            {"hi", s.hi},
            {"grid_step", s.grid_step},
            {"best_x", s.best_x},
            {"best_value", s.best_value},
            {"grid_best", s.grid_best},
            {"lipschitz", s.lipschitz},
            {"bracket", {s.bracket_lo, s.bracket_hi}},
            {"evaluations", s.evaluations}};
}

inline json to_json(const LevelSetEstimate &l)
{
    json j = {{"V", l.V},       {"lo", l.lo},         {"hi", l.hi}, {"grid_step", l.grid_step},
              {"measured", l.measured}, {"certified", l.certified}};
    j["theoretical"] = l.theoretical ? json(*l.theoretical) : json(nullptr);
    return j;
}

inline json to_json(const Theorem1Check &c)
{
    return {{"report", to_json(c.report)},
            {"defect", c.defect},
            {"half_bound", c.half_bound},
            {"certified", c.certified},
            {"sixteenth_mass", c.sixteenth_mass},
            {"scan", to_json(c.scan)},
            {"vacuous", c.vacuous},
            {"passed", c.passed}};
}

inline json to_json(const Theorem2Check &c)
{
    return {{"report", to_json(c.report)},
            {"scan", to_json(c.scan)},
            {"level_set", to_json(c.level)},
            {"V", c.V},
            {"measure_bound", {{"theorem_form", c.measure.theorem_form}, {"symmetric_form", c.measure.symmetric_form}}},
            {"max_passed", c.max_passed},
            {"measure_passed", c.measure_passed},
            {"passed", c.passed}};
}

inline json to_json(const kronecker::KroneckerSolution &s)
{
    return {{"x0", s.x0},         {"achieved", s.achieved}, {"L", s.L},
            {"T", s.T},           {"delta", s.delta},       {"real_value", s.real_value},
            {"target", s.target}, {"step", s.step},         {"evaluations", s.evaluations},
            {"success", s.success}};
}

} // namespace resonance::io
#endif // RESONANCE_IO_HPP
