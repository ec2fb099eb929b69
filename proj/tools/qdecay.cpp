// qdecay -- command-line front end for the quenched point-well decay model.
//
// Subcommands: psi, survival, fit, oracle, figures, verify.
// Every command writes its numeric output as CSV (15 significant digits)
// plus a JSON run manifest listing the resolved parameters and output files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdecay/io.hpp"
#include "qdecay/qdecay.hpp"
#include "qdecay/verify.hpp"

namespace fs = std::filesystem;
using qdecay::Complex;
using qdecay::CsvCell;
using qdecay::CsvTable;
using qdecay::json;

namespace {

struct GlobalOpts {
    std::string out_dir = ".";
    long seed = 0;  // reserved; the pipeline is deterministic
};

std::string trim_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

fs::path out_path(const GlobalOpts& g, const std::string& name) {
    fs::create_directories(g.out_dir);
    return fs::path(g.out_dir) / name;
}

void write_outputs(const GlobalOpts& g, const std::string& command, const json& params,
                   const std::vector<std::pair<std::string, CsvTable>>& tables,
                   json extra_report = {}) {
    qdecay::RunManifest manifest;
    manifest.command = command;
    manifest.parameters = params;
    for (const auto& [name, table] : tables) {
        qdecay::write_csv(out_path(g, name), table);
        manifest.outputs.push_back(name);
    }
    if (!extra_report.is_null()) {
        const std::string report_name = command + "_report.json";
        std::ofstream os(out_path(g, report_name));
        os << extra_report.dump(2) << "\n";
        manifest.outputs.push_back(report_name);
    }
    const std::string mname = command + ".manifest.json";
    qdecay::write_manifest(out_path(g, mname), manifest);
    for (const auto& o : manifest.outputs)
        std::printf("wrote %s\n", (fs::path(g.out_dir) / o).string().c_str());
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

std::vector<double> make_range(double lo, double hi, int n, const std::string& spacing) {
    if (n < 2) throw CLI::ValidationError("--nt/--nx must be at least 2");
    if (!(lo < hi)) throw CLI::ValidationError("range requires min < max");
    std::vector<double> t(n);
    if (spacing == "log") {
        if (!(lo > 0.0)) throw CLI::ValidationError("log spacing requires a positive minimum");
        for (int i = 0; i < n; ++i) t[i] = lo * std::pow(hi / lo, i / double(n - 1));
    } else {
        for (int i = 0; i < n; ++i) t[i] = lo + (hi - lo) * i / double(n - 1);
    }
    return t;
}

// ---------------------------------------------------------------- psi ----

struct PsiArgs {
    double mu = 3.0, t = 0.2;
    double xmin = -10.0, xmax = 10.0;
    int nx = 2001;
    std::string method = "exact";
    double oracle_h = 0.005, oracle_dt = 5e-5;
};

CsvTable psi_table(const PsiArgs& a) {
    const qdecay::GridSpec grid(a.xmin, a.xmax, a.nx);
    const bool with_refs = a.mu > 0.0;
    CsvTable table;
    table.header = {"x", "re_psi", "im_psi", "abs2"};
    if (with_refs) {
        table.header.push_back("abs2_initial");
        table.header.push_back("abs2_final");
    }

    std::vector<Complex> values(grid.n_points);
    std::vector<bool> valid(grid.n_points, true);
    long n_out_of_regime = 0;

    auto eval_pointwise = [&](auto&& f) {
        for (int i = 0; i < grid.n_points; ++i) {
            try {
                values[i] = f(grid.x(i));
            } catch (const qdecay::RegimeError&) {
                valid[i] = false;
                ++n_out_of_regime;
            }
        }
    };

    if (a.method == "exact") {
        eval_pointwise([&](double x) {
            return a.t == 0.0 ? qdecay::psi_initial(x, 0.0) : qdecay::psi_exact(x, a.t, a.mu);
        });
    } else if (a.method == "kernel") {
        eval_pointwise([&](double x) {
            return qdecay::propagate_by_kernel_fn(
                [](double xp) { return qdecay::psi_initial(xp, 0.0); }, x, a.t, a.mu);
        });
    } else if (a.method == "shorttime") {
        eval_pointwise([&](double x) { return qdecay::psi_shorttime(x, a.t, a.mu); });
    } else if (a.method == "longtime") {
        eval_pointwise([&](double x) { return qdecay::psi_longtime(x, a.t, a.mu); });
    } else if (a.method == "farfield") {
        eval_pointwise([&](double x) { return qdecay::psi_farfield(x, a.t, a.mu); });
    } else if (a.method == "oracle") {
        const double half = std::max({60.0, std::abs(a.xmin) + 20.0, std::abs(a.xmax) + 20.0});
        qdecay::OracleConfig cfg;
        cfg.grid = qdecay::GridSpec(-half, half,
                                    static_cast<int>(std::lround(2.0 * half / a.oracle_h)) + 1);
        cfg.dt = a.oracle_dt;
        cfg.mu = a.mu;
        const auto run = qdecay::quench_experiment(cfg, {}, std::vector<double>{a.t});
        const auto& snap = run.snapshots.at(0);
        for (int i = 0; i < grid.n_points; ++i)
            values[i] = qdecay::interpolate_field(snap, grid.x(i));
    } else {
        throw CLI::ValidationError("unknown psi method: " + a.method);
    }

    if (n_out_of_regime > 0)
        std::fprintf(stderr,
                     "warning: %ld of %d rows outside the '%s' validity domain; "
                     "cells left empty\n",
                     n_out_of_regime, grid.n_points, a.method.c_str());

    for (int i = 0; i < grid.n_points; ++i) {
        const double x = grid.x(i);
        std::vector<CsvCell> row;
        row.emplace_back(x);
        if (valid[i]) {
            row.emplace_back(values[i].real());
            row.emplace_back(values[i].imag());
            row.emplace_back(std::norm(values[i]));
        } else {
            row.emplace_back(std::nullopt);
            row.emplace_back(std::nullopt);
            row.emplace_back(std::nullopt);
        }
        if (with_refs) {
            row.emplace_back(std::norm(qdecay::psi_initial(x, 0.0)));
            row.emplace_back(std::norm(qdecay::psi_bound_final(x, 0.0, a.mu)));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

json psi_params(const PsiArgs& a, const GlobalOpts& g) {
    return json{{"mu", a.mu},       {"t", a.t},           {"xmin", a.xmin},
                {"xmax", a.xmax},   {"nx", a.nx},         {"method", a.method},
                {"oracle_h", a.oracle_h}, {"oracle_dt", a.oracle_dt}, {"out", g.out_dir},
                {"seed", g.seed}};
}

// ----------------------------------------------------------- survival ----

struct SurvivalArgs {
    double mu = 3.0;
    double tmin = 0.0, tmax = 20.0;
    int nt = 2001;
    std::string spacing = "linear";
    std::string method = "exact";
};

CsvTable survival_table(const SurvivalArgs& a) {
    const auto times = make_range(a.tmin, a.tmax, a.nt, a.spacing);
    qdecay::SurvivalMethod method;
    if (a.method == "exact") method = qdecay::SurvivalMethod::exact;
    else if (a.method == "quadrature") method = qdecay::SurvivalMethod::quadrature;
    else if (a.method == "short_time") method = qdecay::SurvivalMethod::short_time;
    else if (a.method == "long_time") method = qdecay::SurvivalMethod::long_time;
    else throw CLI::ValidationError("unknown survival method: " + a.method);

    CsvTable table;
    table.header = {"t", "re_A", "im_A", "P", "one_minus_P", "P_inf"};
    const double pinf = qdecay::survival_probability_limit(a.mu);
    long n_out_of_regime = 0;
    for (double t : times) {
        std::vector<CsvCell> row;
        row.emplace_back(t);
        try {
            const Complex amp = qdecay::survival_amplitude_by(method, t, a.mu);
            const double p = std::clamp(std::norm(amp), 0.0, 1.0);
            const double escape = method == qdecay::SurvivalMethod::exact
                                      ? qdecay::escape_probability(t, a.mu)
                                      : 1.0 - p;
            row.emplace_back(amp.real());
            row.emplace_back(amp.imag());
            row.emplace_back(p);
            row.emplace_back(escape);
        } catch (const qdecay::RegimeError&) {
            ++n_out_of_regime;
            for (int k = 0; k < 4; ++k) row.emplace_back(std::nullopt);
        }
        row.emplace_back(pinf);
        table.rows.push_back(std::move(row));
    }
    if (n_out_of_regime > 0)
        std::fprintf(stderr,
                     "warning: %ld of %d rows outside the '%s' validity domain; "
                     "cells left empty\n",
                     n_out_of_regime, a.nt, a.method.c_str());
    return table;
}

json survival_params(const SurvivalArgs& a, const GlobalOpts& g) {
    return json{{"mu", a.mu},     {"tmin", a.tmin},       {"tmax", a.tmax},
                {"nt", a.nt},     {"spacing", a.spacing}, {"method", a.method},
                {"out", g.out_dir}, {"seed", g.seed}};
}

// ---------------------------------------------------------------- fit ----

struct FitArgs {
    std::string input;  // CSV path; empty = generate
    std::string tcol = "t", ycol = "one_minus_P";
    std::string generate = "escape";  // escape | envelope
    double mu = 3.0;
    double tlo = 1e-4, thi = 1e-2;
    int nt = 200;
};

std::pair<std::vector<double>, std::vector<double>> read_csv_columns(
    const std::string& path, const std::string& tcol, const std::string& ycol) {
    std::ifstream is(path);
    if (!is) throw CLI::ValidationError("cannot open " + path);
    std::string line;
    if (!std::getline(is, line)) throw CLI::ValidationError("empty CSV " + path);
    std::vector<std::string> header;
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) header.push_back(cell);
    int it = -1, iy = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == tcol) it = static_cast<int>(i);
        if (header[i] == ycol) iy = static_cast<int>(i);
    }
    if (it < 0 || iy < 0)
        throw CLI::ValidationError("columns '" + tcol + "'/'" + ycol + "' not found in " + path);
    std::vector<double> ts, ys;
    while (std::getline(is, line)) {
        std::stringstream ls(line);
        std::vector<std::string> cells;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (static_cast<int>(cells.size()) <= std::max(it, iy)) continue;
        if (cells[it].empty() || cells[iy].empty()) continue;  // null cells
        ts.push_back(std::stod(cells[it]));
        ys.push_back(std::stod(cells[iy]));
    }
    return {ts, ys};
}

json run_fit(const FitArgs& a) {
    std::vector<double> ts, ys;
    if (!a.input.empty()) {
        std::tie(ts, ys) = read_csv_columns(a.input, a.tcol, a.ycol);
    } else if (a.generate == "escape") {
        ts = make_range(a.tlo, a.thi, a.nt, "log");
        for (double t : ts) ys.push_back(qdecay::escape_probability(t, a.mu));
    } else if (a.generate == "envelope") {
        // oscillation envelope of |P - P_inf|: local maxima over an extended scan
        const double pinf = qdecay::survival_probability_limit(a.mu);
        std::vector<double> st, sv;
        const double dt = (a.thi - a.tlo) / (40.0 * a.nt);
        for (double t = 0.9 * a.tlo; t <= 1.1 * a.thi; t += dt) {
            st.push_back(t);
            sv.push_back(std::abs(qdecay::survival_probability(t, a.mu) - pinf));
        }
        for (const auto& [tp, vp] : qdecay::local_maxima(st, sv)) {
            ts.push_back(tp);
            ys.push_back(vp);
        }
    } else {
        throw CLI::ValidationError("unknown --generate mode: " + a.generate);
    }
    const auto fit = qdecay::fit_power_law(ts, ys, a.tlo * 0.999, a.thi * 1.001);
    return json{{"exponent", fit.exponent},
                {"coefficient", fit.coefficient},
                {"rms_log_residual", fit.rms_log_residual},
                {"window", {{"t_lo", a.tlo}, {"t_hi", a.thi}}},
                {"n_points", fit.n_points}};
}

// ------------------------------------------------------------- oracle ----

struct OracleArgs {
    double mu = 3.0, h = 0.005, dt = 5e-5, box = 60.0;
    std::string t_samples = "0.07,0.2,0.7";
    std::string snapshot_times;
    double well_width = 0.0, cap_strength = 0.0, cap_width = 0.0;
    bool compare_exact = false;
};

void run_oracle(const OracleArgs& a, const GlobalOpts& g, const json& params) {
    qdecay::OracleConfig cfg;
    cfg.grid = qdecay::GridSpec(-a.box, a.box,
                                static_cast<int>(std::lround(2.0 * a.box / a.h)) + 1);
    cfg.dt = a.dt;
    cfg.mu = a.mu;
    cfg.well_width = a.well_width;
    cfg.cap_strength = a.cap_strength;
    cfg.cap_width = a.cap_width;
    const auto samples = parse_list(a.t_samples);
    const auto snaps = parse_list(a.snapshot_times);
    const auto run = qdecay::quench_experiment(cfg, samples, snaps);

    std::vector<std::pair<std::string, CsvTable>> tables;
    CsvTable surv;
    surv.header = {"t", "re_A", "im_A", "P", "one_minus_P", "P_inf"};
    const double pinf = qdecay::survival_probability_limit(a.mu);
    for (std::size_t i = 0; i < run.series.times.size(); ++i) {
        const Complex amp = run.series.amplitudes[i];
        const double p = run.series.probabilities[i];
        surv.rows.push_back({CsvCell(run.series.times[i]), CsvCell(amp.real()),
                             CsvCell(amp.imag()), CsvCell(p), CsvCell(1.0 - p), CsvCell(pinf)});
    }
    tables.emplace_back("oracle_survival.csv", std::move(surv));

    json report;
    for (const auto& snap : run.snapshots) {
        CsvTable st;
        st.header = {"x", "re_psi", "im_psi", "abs2"};
        for (int i = 0; i < snap.grid.n_points; ++i)
            st.rows.push_back({CsvCell(snap.grid.x(i)), CsvCell(snap.values[i].real()),
                               CsvCell(snap.values[i].imag()), CsvCell(std::norm(snap.values[i]))});
        tables.emplace_back("oracle_psi_t" + trim_num(snap.time) + ".csv", std::move(st));
        if (a.compare_exact && a.well_width == 0.0 && snap.time > 0.0) {
            const auto exact = qdecay::sample_field(
                snap.grid, [&](double x) { return qdecay::psi_exact(x, snap.time, a.mu); });
            const auto cmp = qdecay::compare_fields(snap, exact);
            report["l2_rel"][trim_num(snap.time)] = cmp.l2_rel;
            report["linf"][trim_num(snap.time)] = cmp.linf;
        }
    }
    if (a.compare_exact) {
        for (std::size_t i = 0; i < run.series.times.size(); ++i)
            report["abs_P_error"][trim_num(run.series.times[i])] = std::abs(
                run.series.probabilities[i] -
                qdecay::survival_probability(run.series.times[i], a.mu));
    }
    write_outputs(g, "oracle", params, tables, report);
}

// ------------------------------------------------------------- verify ----

int run_verify(const std::string& suite, double tol_scale, double mu_override,
               bool has_mu, const GlobalOpts& g) {
    qdecay::verify::VerifyOptions opt;
    opt.tol_scale = tol_scale;
    if (has_mu) opt.mu = mu_override;
    json report;
    int failed = 0;
    for (int n : qdecay::verify::suite_criteria(suite)) {
        const auto checks = qdecay::verify::run_criterion(n, opt);
        bool pass = true;
        json jchecks = json::array();
        for (const auto& c : checks) {
            pass = pass && c.passed;
            std::printf("  %-22s %-55s measured %.6g %s %.6g [%s]\n", c.id.c_str(),
                        c.description.c_str(), c.measured, c.less_is_pass ? "<=" : ">=",
                        c.threshold, c.passed ? "ok" : "FAIL");
            jchecks.push_back(json{{"id", c.id},
                                   {"description", c.description},
                                   {"measured", c.measured},
                                   {"threshold", c.threshold},
                                   {"comparison", c.less_is_pass ? "le" : "ge"},
                                   {"passed", c.passed}});
        }
        std::printf("criterion %d: %s\n", n, pass ? "PASS" : "FAIL");
        report["criteria"][std::to_string(n)] = json{{"passed", pass}, {"checks", jchecks}};
        if (!pass) ++failed;
    }
    report["suite"] = suite;
    report["failed_criteria"] = failed;
    std::ofstream os(out_path(g, "verify_report.json"));
    os << report.dump(2) << "\n";
    qdecay::RunManifest manifest;
    manifest.command = "verify";
    manifest.parameters = json{{"suite", suite},
                               {"tol-scale", tol_scale},
                               {"mu", has_mu ? json(mu_override) : json()},
                               {"out", g.out_dir}};
    manifest.outputs = {"verify_report.json"};
    qdecay::write_manifest(out_path(g, "verify.manifest.json"), manifest);
    std::printf("wrote %s\n", (fs::path(g.out_dir) / "verify_report.json").string().c_str());
    return failed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quenched point-well decay model: exact fields, survival "
                 "probabilities, asymptotics, and a grid-propagation oracle"};
    app.set_config("--config", "", "key=value configuration file (flags take precedence)");
    app.require_subcommand(0, 1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOpts g;
    bool show_config = false;
    app.add_option("--out", g.out_dir, "output directory")->capture_default_str();
    app.add_option("--seed", g.seed,
                   "reserved for future stochastic features; the pipeline is deterministic")
        ->capture_default_str();
    app.add_flag("--show-config", show_config, "print all defaults and exit");

    PsiArgs pa;
    auto* psi = app.add_subcommand("psi", "evaluate the wavefunction on a grid");
    psi->add_option("--mu", pa.mu, "quench strength ratio")->capture_default_str();
    psi->add_option("--t", pa.t, "evaluation time")->capture_default_str();
    psi->add_option("--xmin", pa.xmin, "grid minimum")->capture_default_str();
    psi->add_option("--xmax", pa.xmax, "grid maximum")->capture_default_str();
    psi->add_option("--nx", pa.nx, "grid points")->capture_default_str();
    psi->add_option("--method", pa.method,
                    "exact | kernel | shorttime | longtime | farfield | oracle")
        ->capture_default_str();
    psi->add_option("--oracle-h", pa.oracle_h, "oracle grid spacing")->capture_default_str();
    psi->add_option("--oracle-dt", pa.oracle_dt, "oracle time step")->capture_default_str();

    SurvivalArgs sa;
    auto* surv = app.add_subcommand("survival", "survival amplitude and probability series");
    surv->add_option("--mu", sa.mu, "quench strength ratio")->capture_default_str();
    surv->add_option("--tmin", sa.tmin, "first sample time")->capture_default_str();
    surv->add_option("--tmax", sa.tmax, "last sample time")->capture_default_str();
    surv->add_option("--nt", sa.nt, "number of samples")->capture_default_str();
    surv->add_option("--spacing", sa.spacing, "linear | log")->capture_default_str();
    surv->add_option("--method", sa.method, "exact | quadrature | short_time | long_time")
        ->capture_default_str();

    FitArgs fa;
    auto* fit = app.add_subcommand("fit", "power-law fit of an escape or envelope series");
    fit->add_option("--input", fa.input, "CSV file to fit (default: generate the series)");
    fit->add_option("--tcol", fa.tcol, "abscissa column name")->capture_default_str();
    fit->add_option("--ycol", fa.ycol, "ordinate column name")->capture_default_str();
    fit->add_option("--generate", fa.generate, "escape | envelope")->capture_default_str();
    fit->add_option("--mu", fa.mu, "quench strength ratio")->capture_default_str();
    fit->add_option("--tlo", fa.tlo, "fit window start")->capture_default_str();
    fit->add_option("--thi", fa.thi, "fit window end")->capture_default_str();
    fit->add_option("--nt", fa.nt, "generated sample count")->capture_default_str();

    OracleArgs oa;
    auto* orc = app.add_subcommand("oracle", "grid-propagation reference run");
    orc->add_option("--mu", oa.mu, "quench strength ratio")->capture_default_str();
    orc->add_option("--grid-h", oa.h, "grid spacing")->capture_default_str();
    orc->add_option("--dt", oa.dt, "time step")->capture_default_str();
    orc->add_option("--box", oa.box, "half-width of the box [-box, box]")->capture_default_str();
    orc->add_option("--t-samples", oa.t_samples, "comma-separated survival sample times")
        ->capture_default_str();
    orc->add_option("--snapshot-times", oa.snapshot_times, "comma-separated field snapshot times");
    orc->add_option("--well-width", oa.well_width, "0 = point well; > 0 = square well width")
        ->capture_default_str();
    orc->add_option("--cap-strength", oa.cap_strength, "absorbing layer strength")
        ->capture_default_str();
    orc->add_option("--cap-width", oa.cap_width, "absorbing layer width")->capture_default_str();
    orc->add_flag("--compare-exact", oa.compare_exact,
                  "report L2 distance of snapshots from the closed form");

    int fig_which = 1;
    auto* figs = app.add_subcommand("figures", "reproduce the reference figure data");
    figs->add_option("--which", fig_which, "1 | 2 | 3")->capture_default_str();

    std::string vsuite = "all";
    double tol_scale = 1.0, vmu = 3.0;
    auto* ver = app.add_subcommand("verify", "run the acceptance checks");
    ver->add_option("--suite", vsuite, "cerf | exact | survival | oracle | all")
        ->capture_default_str();
    ver->add_option("--tol-scale", tol_scale, "multiply every tolerance")->capture_default_str();
    auto* mu_opt = ver->add_option("--mu", vmu, "override mu for the oracle suite");

    CLI11_PARSE(app, argc, argv);

    if (show_config) {
        for (const CLI::App* sub : app.get_subcommands({})) {
            std::printf("[%s]\n", sub->get_name().c_str());
            for (const CLI::Option* o : sub->get_options()) {
                if (o->get_lnames().empty() || o->get_lnames()[0] == "help") continue;
                std::printf("%s=%s\n", o->get_lnames()[0].c_str(), o->get_default_str().c_str());
            }
        }
        return 0;
    }

    try {
        if (psi->parsed()) {
            write_outputs(g, "psi", psi_params(pa, g),
                          {{"psi_mu" + trim_num(pa.mu) + "_t" + trim_num(pa.t) + "_" + pa.method +
                                ".csv",
                            psi_table(pa)}});
        } else if (surv->parsed()) {
            write_outputs(g, "survival", survival_params(sa, g),
                          {{"survival_mu" + trim_num(sa.mu) + "_" + sa.method + ".csv",
                            survival_table(sa)}});
        } else if (fit->parsed()) {
            const json report = run_fit(fa);
            std::printf("exponent    %.6f\ncoefficient %.6f\nrms resid   %.3e  (n=%d)\n",
                        report["exponent"].get<double>(), report["coefficient"].get<double>(),
                        report["rms_log_residual"].get<double>(), report["n_points"].get<int>());
            write_outputs(g, "fit",
                          json{{"input", fa.input}, {"tcol", fa.tcol}, {"ycol", fa.ycol},
                               {"generate", fa.generate}, {"mu", fa.mu}, {"tlo", fa.tlo},
                               {"thi", fa.thi}, {"nt", fa.nt}, {"out", g.out_dir},
                               {"seed", g.seed}},
                          {}, report);
        } else if (orc->parsed()) {
            run_oracle(oa, g,
                       json{{"mu", oa.mu}, {"grid-h", oa.h}, {"dt", oa.dt}, {"box", oa.box},
                            {"t-samples", oa.t_samples}, {"snapshot-times", oa.snapshot_times},
                            {"well-width", oa.well_width}, {"cap-strength", oa.cap_strength},
                            {"cap-width", oa.cap_width},
                            {"compare-exact", oa.compare_exact}, {"out", g.out_dir},
                            {"seed", g.seed}});
        } else if (figs->parsed()) {
            if (fig_which == 1) {
                std::vector<std::pair<std::string, CsvTable>> tables;
                for (double t : {0.07, 0.2, 0.7, 100.0}) {
                    PsiArgs a;
                    a.mu = 3.0;
                    a.t = t;
                    tables.emplace_back("fig1_t" + trim_num(t) + ".csv", psi_table(a));
                }
                write_outputs(g, "figures", json{{"which", 1}, {"out", g.out_dir}}, tables);
            } else if (fig_which == 2) {
                SurvivalArgs a;  // mu = 3, linear t in [0, 20]
                write_outputs(g, "figures", json{{"which", 2}, {"out", g.out_dir}},
                              {{"fig2_survival.csv", survival_table(a)}});
            } else if (fig_which == 3) {
                CsvTable t3;
                t3.header = {"t", "one_minus_P", "one_minus_P_shorttime"};
                long skipped = 0;
                for (double t : make_range(1e-4, 1e-1, 200, "log")) {
                    std::vector<CsvCell> row{CsvCell(t),
                                             CsvCell(qdecay::escape_probability(t, 3.0))};
                    try {
                        row.emplace_back(qdecay::escape_probability_shorttime(t, 3.0));
                    } catch (const qdecay::RegimeError&) {
                        row.emplace_back(std::nullopt);
                        ++skipped;
                    }
                    t3.rows.push_back(std::move(row));
                }
                if (skipped > 0)
                    std::fprintf(stderr,
                                 "warning: %ld rows beyond the short-time validity domain; "
                                 "approximation cells left empty\n", skipped);
                write_outputs(g, "figures", json{{"which", 3}, {"out", g.out_dir}},
                              {{"fig3_escape.csv", std::move(t3)}});
            } else {
                throw CLI::ValidationError("--which must be 1, 2, or 3");
            }
        } else if (ver->parsed()) {
            return run_verify(vsuite, tol_scale, vmu, !mu_opt->empty(), g);
        } else {
            std::printf("%s\n", app.help().c_str());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
