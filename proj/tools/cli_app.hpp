#ifndef RESONANCE_TOOLS_CLI_APP_HPP
#define RESONANCE_TOOLS_CLI_APP_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "resonance/resonance.hpp"

namespace resonance::cli {

using json = nlohmann::json;

inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid = 1;
inline constexpr int exit_check_failed = 2;

/// Input validation failure: reported as JSON with exit status 1.
class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

struct SeriesOptions
{
    std::string series_file;
    std::vector<double> m_lambdas;
    std::vector<double> m_f;
    std::vector<double> extra_lambdas;
    std::vector<double> extra_f;
    std::vector<std::size_t> select;
    std::size_t random_terms = 0;
    std::uint64_t seed = 1;
};

struct ExperimentConfig
{
    std::string command;
    SeriesOptions series;
    double X = 0.0;
    double Y = 1.0;
    std::optional<double> Y_opt;
    double gamma = default_bucket_gamma;
    double window = default_window;
    int mode = 2;
    std::size_t pivot = 0;
    double beta = 0.0;
    std::optional<double> V;
    std::uint64_t budget = 0;
    std::uint64_t N = 0;
    double rho = lattice::default_rho;
    std::size_t max_M = 10;
    std::string input_file;
    std::vector<double> lambdas;
    std::vector<double> alphas;
    double epsilon = 0.0;
    double from = 1.0;
    double to = 100.0;
    double step = 1.0;
    unsigned k = 3;
    std::string output;
    std::string dump_scan;
    std::string format = "json";
};

namespace detail {

/// The series plus the selected indices it implies.
struct BuiltSeries
{
    TrigSeries series;
    std::vector<std::size_t> selected;
};

inline BuiltSeries random_series(std::size_t terms, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> lam(0.2, 3.0), coef(0.5, 1.5), small(0.0, 0.2);
    std::vector<double> lambdas;
    while (lambdas.size() < terms) {
        const double v = lam(rng);
        if (std::find(lambdas.begin(), lambdas.end(), v) == lambdas.end())
            lambdas.push_back(v);
    }
    std::sort(lambdas.begin(), lambdas.end());
    std::vector<Term> t;
    for (double l : lambdas)
        t.push_back({l, coef(rng)});
    BuiltSeries out{TrigSeries(std::move(t)), {}};
    for (std::size_t i = 0; i < terms; ++i)
        out.selected.push_back(i);
    return out;
}

inline BuiltSeries build_series(const SeriesOptions &o)
{
    if (o.random_terms > 0)
        return random_series(o.random_terms, o.seed);
    if (!o.series_file.empty()) {
        BuiltSeries out{io::series_from_json(io::read_json_file(o.series_file)), o.select};
        if (out.selected.empty())
            for (std::size_t i = 0; i < out.series.size(); ++i)
                out.selected.push_back(i);
        return out;
    }
    if (o.m_lambdas.empty())
        throw ConfigError("one of --series, --m-lambdas or --random-terms is required");
    if (!o.m_f.empty() && o.m_f.size() != o.m_lambdas.size())
        throw ConfigError("--m-f must have one entry per --m-lambdas value");
    if (!o.extra_f.empty() && o.extra_f.size() != o.extra_lambdas.size())
        throw ConfigError("--extra-f must have one entry per --extra-lambdas value");
    struct Tagged
    {
        Term term;
        bool selected;
    };
    std::vector<Tagged> all;
    for (std::size_t i = 0; i < o.m_lambdas.size(); ++i)
        all.push_back({{o.m_lambdas[i], o.m_f.empty() ? 1.0 : o.m_f[i]}, true});
    for (std::size_t i = 0; i < o.extra_lambdas.size(); ++i)
        all.push_back({{o.extra_lambdas[i], o.extra_f.empty() ? 0.1 : o.extra_f[i]}, false});
    std::stable_sort(all.begin(), all.end(), [](const Tagged &a, const Tagged &b) { return a.term.lambda < b.term.lambda; });
    std::vector<Term> terms;
    BuiltSeries out;
    for (std::size_t i = 0; i < all.size(); ++i) {
        terms.push_back(all[i].term);
        if (all[i].selected)
            out.selected.push_back(i);
    }
    out.series = TrigSeries(std::move(terms));
    return out;
}

inline ResonatorConfig resonator_config(const ExperimentConfig &c, std::vector<std::size_t> selected)
{
    ResonatorConfig rc;
    rc.selected = std::move(selected);
    rc.X = c.X;
    rc.Y = c.Y;
    rc.gamma = c.gamma;
    rc.window = c.window;
    rc.pivot = c.pivot;
    rc.beta = c.beta;
    return rc;
}

inline void write_scan_csv(const std::string &path, const TrigSeries &s, double beta, double lo, double hi,
                           std::uint64_t points)
{
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write " + path);
    out << "x,ReF\n" << std::setprecision(17);
    points = std::max<std::uint64_t>(points, 2);
    for (std::uint64_t i = 0; i < points; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
        out << x << ',' << s.real_part(x, beta) << '\n';
    }
}

struct Outcome
{
    json report;
    bool passed;
};

inline Outcome run_resonate(const ExperimentConfig &c)
{
    auto built = build_series(c.series);
    const Mode mode = c.mode == 1 ? Mode::theorem1 : Mode::theorem2;
    const auto rep = certify_lower_bound(resonator_config(c, built.selected), built.series, mode);
    json j = io::to_json(rep);
    return {j, rep.ratio_meets_constant && rep.lemma_holds};
}

inline Outcome run_theorem2(const ExperimentConfig &c)
{
    auto built = build_series(c.series);
    const auto chk = verify_theorem2(resonator_config(c, built.selected), built.series, c.V, c.budget);
    if (!c.dump_scan.empty())
        write_scan_csv(c.dump_scan, built.series, 0.0, c.Y, chk.report.T,
                       std::min<std::uint64_t>(chk.scan.evaluations, 100'000));
    json j = io::to_json(chk);
    j["series"] = io::to_json(built.series);
    return {j, chk.passed};
}

/// Sieve, resonance set, truncated oscillatory series, then the theorem-1 check.
inline Outcome run_lattice(const ExperimentConfig &c, bool circle)
{
    if (c.N < 16)
        throw ConfigError("--N must be >= 16");
    if (!(c.X >= 1.0))
        throw ConfigError("--X must be >= 1");
    const auto n_max = lattice::cube_floor(c.X);
    if (n_max < (9 * c.N) / 4)
        throw ConfigError("--X too small: need X^3 >= 9N/4 so that every m in the resonance set is a term");
    const auto tables = lattice::sieve_tables(n_max);
    auto mset = lattice::build_M_set(tables, c.N, c.rho);
    const auto diag = lattice::cardinality_diagnostic(tables, c.N, c.rho);
    const auto vs = circle ? lattice::circle_series(tables, c.X) : lattice::voronoi_series(tables, c.X);

    // term index of each n present in the series
    std::map<std::uint64_t, std::size_t> index_of;
    {
        std::size_t idx = 0;
        for (std::uint64_t n = 1; n <= n_max; ++n)
            if (!circle || tables.r[n] > 0)
                index_of[n] = idx++;
    }
    if (!index_of.contains(c.N))
        throw ConfigError("pivot term n = N is absent from the series (r(N) = 0); choose another --N");
    if (circle)
        std::erase_if(mset, [&](std::uint64_t m) { return tables.r[m] == 0; });
    if (mset.empty())
        throw ConfigError("resonance set is empty for this N and rho");
    const std::size_t full_M = mset.size();
    if (mset.size() > c.max_M)
        mset.resize(c.max_M);

    ExperimentConfig cc = c;
    cc.pivot = index_of.at(c.N);
    cc.beta = vs.beta;
    cc.Y = c.Y_opt.value_or(std::sqrt(c.X) > 1.0 ? std::sqrt(c.X) : 1.0);
    std::vector<std::size_t> selected;
    for (auto m : mset)
        selected.push_back(index_of.at(m));

    const auto chk = verify_theorem1(resonator_config(cc, selected), vs.series, c.budget);
    json j = io::to_json(chk);
    j["lattice"] = {{"problem", circle ? "circle" : "divisor"},
                    {"N", c.N},
                    {"rho", c.rho},
                    {"target_omega", diag.target_omega},
                    {"resonance_set_size", full_M},
                    {"resonance_set_used", mset},
                    {"predicted_size", diag.predicted},
                    {"size_ratio", diag.ratio},
                    {"series_terms", vs.series.size()},
                    {"beta", vs.beta},
                    {"identity_range", {vs.lo, vs.hi}}};
    return {j, chk.passed};
}

inline Outcome run_kronecker(const ExperimentConfig &c)
{
    auto lambdas = c.lambdas;
    auto alphas = c.alphas;
    double eps = c.epsilon;
    if (!c.input_file.empty()) {
        const auto in = io::read_json_file(c.input_file);
        try {
            lambdas = in.at("lambdas").get<std::vector<double>>();
            alphas = in.at("alphas").get<std::vector<double>>();
            eps = in.at("epsilon").get<double>();
        } catch (const json::exception &e) {
            throw ConfigError(std::string("kronecker input needs lambdas, alphas, epsilon: ") + e.what());
        }
    }
    if (lambdas.empty())
        throw ConfigError("--lambdas (or --input) is required");
    if (alphas.size() != lambdas.size())
        throw ConfigError("--alphas must have one entry per frequency");
    const auto sol = kronecker::solve_kronecker(lambdas, alphas, eps);
    return {io::to_json(sol), sol.success};
}

inline std::string run_delta_scan(const ExperimentConfig &c)
{
    if (!(c.from > 0.0) || !(c.to >= c.from) || !(c.step > 0.0))
        throw ConfigError("delta-scan needs 0 < --from <= --to and --step > 0");
    const auto tables = lattice::sieve_tables(static_cast<std::uint64_t>(std::ceil(c.to)), c.k);
    std::ostringstream os;
    os << "x,Delta,P,Delta_k\n" << std::setprecision(17);
    const auto count = static_cast<std::uint64_t>(std::floor((c.to - c.from) / c.step + 1e-9)) + 1;
    for (std::uint64_t i = 0; i < count; ++i) {
        const double x = c.from + static_cast<double>(i) * c.step;
        os << x << ',' << lattice::delta(tables, x) << ',' << lattice::gauss_p(tables, x) << ','
           << lattice::delta_k(tables, x) << '\n';
    }
    return os.str();
}

inline void add_series_flags(CLI::App *sub, ExperimentConfig &c)
{
    sub->add_option("--series", c.series.series_file, "JSON file [{\"lambda\", \"f\"}, ...]: the series F");
    sub->add_option("--m-lambdas", c.series.m_lambdas, "frequencies lambda_m of the resonated terms (set M)")
        ->delimiter(',');
    sub->add_option("--m-f", c.series.m_f, "coefficients f(m) >= 0 of the resonated terms (default 1)")->delimiter(',');
    sub->add_option("--extra-lambdas", c.series.extra_lambdas, "frequencies of further, unselected terms")
        ->delimiter(',');
    sub->add_option("--extra-f", c.series.extra_f, "coefficients of the unselected terms (default 0.1)")
        ->delimiter(',');
    sub->add_option("--select", c.series.select, "indices of M into --series (default: all terms)")->delimiter(',');
    sub->add_option("--random-terms", c.series.random_terms, "generate a random series with this many terms, all in M");
    sub->add_option("--seed", c.series.seed, "seed for --random-terms");
    sub->add_option("--X", c.X, "X >= 1; T = 2^M X")->required();
    sub->add_option("--Y", c.Y, "Y >= 1 with Y < 2^M X")->default_val(1.0);
    sub->add_option("--gamma", c.gamma, "bucket parameter gamma in (0, sqrt(ln2/pi)]")->default_val(default_bucket_gamma);
    sub->add_option("--window", c.window, "Gaussian truncation window W")->default_val(default_window);
}

} // namespace detail

/**
 *  Parses argv and dispatches. Reports go to `out` (or --output); errors are
 *  JSON objects on `err`. Exit 0 on success, 1 on invalid input, 2 when a
 *  theorem check fails.
 */
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    ExperimentConfig c;
    CLI::App app{"Resonance-method lower bounds for trigonometric series, lattice error terms and Kronecker "
                 "approximation. Set RESONANCE_THREADS to control the worker count."};
    app.require_subcommand(1);
    app.add_option("--output", c.output, "write the report to this file instead of stdout");

    auto *res = app.add_subcommand("resonate", "certify max Re F >= J1/J2 - tail (closed-form J1, J2)");
    detail::add_series_flags(res, c);
    res->add_option("--mode", c.mode, "1: smoothed F_1 with pivot N; 2: raw F")->default_val(2)->check(CLI::IsMember({1, 2}));
    res->add_option("--pivot", c.pivot, "pivot index N (mode 1): 2|lambda_m - lambda_N| <= lambda_N");

    auto *th2 = app.add_subcommand("theorem2", "certificate plus scan of max Re F on [Y, 2^M X] and level-set measure");
    detail::add_series_flags(th2, c);
    th2->add_option("--V", c.V, "level V for the measure bound, 0 < V <= Sigma (default Sigma/2)");
    th2->add_option("--budget", c.budget, "scan grid intervals (default: resolve the fastest oscillation)");
    th2->add_option("--dump-scan", c.dump_scan, "CSV file of (x, Re F(x)) samples");

    CLI::App *lat[2];
    lat[0] = app.add_subcommand("divisor", "divisor-problem pipeline: sieve, set M, truncated series, theorem-1 check");
    lat[1] = app.add_subcommand("circle", "circle-problem analogue of the divisor pipeline");
    for (auto *s : lat) {
        s->add_option("--N", c.N, "N >= 16: M = {m in [N/4, 9N/4] : omega(m) = floor(rho log log N)}")->required();
        s->add_option("--rho", c.rho, "exponent parameter rho (default 2^{4/3})")->default_val(lattice::default_rho);
        s->add_option("--X", c.X, "truncation X: terms n <= X^3, T = 2^M X")->required();
        s->add_option("--Y", c.Y_opt, "Y (default sqrt(X))");
        s->add_option("--gamma", c.gamma, "bucket parameter gamma")->default_val(default_bucket_gamma);
        s->add_option("--window", c.window, "Gaussian truncation window W")->default_val(default_window);
        s->add_option("--max-M", c.max_M, "use only the first max-M elements of the set M")->default_val(10);
        s->add_option("--budget", c.budget, "scan grid intervals");
    }

    auto *kr = app.add_subcommand("kronecker", "find x0 with max_n ||x0 lambda_n - alpha_n|| < epsilon");
    kr->add_option("--input", c.input_file, "JSON {\"lambdas\": [...], \"alphas\": [...], \"epsilon\": e}");
    kr->add_option("--lambdas", c.lambdas, "frequencies lambda_n")->delimiter(',');
    kr->add_option("--alphas", c.alphas, "targets alpha_n (mod 1)")->delimiter(',');
    kr->add_option("--epsilon", c.epsilon, "tolerance epsilon in (0, 1/2)");

    auto *ds = app.add_subcommand("delta-scan", "CSV of x, Delta(x), P(x), Delta_k(x)");
    ds->add_option("--from", c.from, "first x > 0")->default_val(1.0);
    ds->add_option("--to", c.to, "last x")->default_val(100.0);
    ds->add_option("--step", c.step, "x increment")->default_val(1.0);
    ds->add_option("--k", c.k, "order k of d_k, 1..4")->default_val(3)->check(CLI::Range(1, 4));

    auto error_report = [&](const std::string &kind, const std::string &msg) {
        err << json{{"status", "error"}, {"kind", kind}, {"message", msg}}.dump() << '\n';
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError &e) {
        error_report("usage", e.what());
        return exit_invalid;
    }

    try {
        std::string text;
        bool passed = true;
        if (res->parsed() || th2->parsed()) {
            c.command = res->parsed() ? "resonate" : "theorem2";
            auto o = res->parsed() ? detail::run_resonate(c) : detail::run_theorem2(c);
            json j = {{"command", c.command}, {"status", o.passed ? "ok" : "check_failed"}, {"result", o.report}};
            text = j.dump(2) + "\n";
            passed = o.passed;
        } else if (lat[0]->parsed() || lat[1]->parsed()) {
            const bool circle = lat[1]->parsed();
            c.command = circle ? "circle" : "divisor";
            auto o = detail::run_lattice(c, circle);
            json j = {{"command", c.command}, {"status", o.passed ? "ok" : "check_failed"}, {"result", o.report}};
            text = j.dump(2) + "\n";
            passed = o.passed;
        } else if (kr->parsed()) {
            c.command = "kronecker";
            auto o = detail::run_kronecker(c);
            json j = {{"command", c.command}, {"status", o.passed ? "ok" : "check_failed"}, {"result", o.report}};
            text = j.dump(2) + "\n";
            passed = o.passed;
        } else {
            c.command = "delta-scan";
            text = detail::run_delta_scan(c);
        }

        if (c.output.empty()) {
            out << text;
        } else {
            std::ofstream f(c.output);
            if (!f)
                throw ConfigError("cannot write " + c.output);
            f << text;
        }
        return passed ? exit_ok : exit_check_failed;
    } catch (const std::invalid_argument &e) {
        error_report("invalid_input", e.what());
        return exit_invalid;
    } catch (const std::out_of_range &e) {
        error_report("invalid_input", e.what());
        return exit_invalid;
    } catch (const std::domain_error &e) {
        error_report("invalid_input", e.what());
        return exit_invalid;
    } catch (const std::exception &e) {
        error_report("internal", e.what());
        return exit_check_failed;
    }
}

} // namespace resonance::cli
#endif // RESONANCE_TOOLS_CLI_APP_HPP
