// flatsub — residual checks, Lax-pair holonomy, Bonnet reconstruction, and
// hydrodynamic flows for flat torsionless submanifold data (η, μ, ψ_α / Φ).
//
// Exit codes: 0 all requested verdicts pass, 1 a residual check failed,
// 2 input or runtime-parameter error (structured JSON on stderr).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flatsub/bonnet.hpp"
#include "flatsub/checks.hpp"
#include "flatsub/frobenius.hpp"
#include "flatsub/hydro.hpp"
#include "flatsub/lax.hpp"
#include "flatsub/report.hpp"

namespace fs = flatsub;
using nlohmann::ordered_json;

namespace {

struct CommonArgs {
    std::string spec_path;
    bool use_float = false;
    bool serial = false;
    int grid = 0;
    std::string point;
    double tol_algebra = -1, tol_ode = -1, tol_fd = -1;
};

// Pointwise commands take the mode switch and --point; the integration
// commands (always float, whole-domain) do not.
void add_common(CLI::App* cmd, CommonArgs& a, bool pointwise = true) {
    cmd->add_option("spec", a.spec_path, "problem JSON file")->required();
    if (pointwise) {
        cmd->add_flag("--float,!--rational", a.use_float,
                      "evaluate in float arithmetic (default: rational, exact)");
        cmd->add_option("--point", a.point,
                        "single-point mode: comma-separated coordinates, e.g. \"1/2,-1/3,0\"");
    }
    cmd->add_flag("--serial", a.serial, "disable the OpenMP-parallel kernels");
    cmd->add_option("--grid", a.grid, "override grid resolution (points per axis)");
    cmd->add_option("--tol-algebra", a.tol_algebra, "override algebra tolerance");
    cmd->add_option("--tol-ode", a.tol_ode, "override ODE tolerance");
    cmd->add_option("--tol-fd", a.tol_fd, "override finite-difference tolerance");
}

fs::Rational parse_rational_arg(const std::string& s, bool float_ok) {
    try {
        return fs::Rational::parse(s);
    } catch (const std::exception&) {
        if (float_ok) {
            size_t pos = 0;
            double v = std::stod(s, &pos);
            if (pos == s.size()) return fs::Rational::from_double_exact(v);
        }
        throw fs::SpecError("cannot parse number '" + s + "'");
    }
}

std::vector<fs::Rational> parse_point_arg(const std::string& s, int n, bool float_ok) {
    std::vector<fs::Rational> out;
    size_t start = 0;
    while (start <= s.size()) {
        size_t comma = s.find(',', start);
        std::string tok = s.substr(start, comma == std::string::npos ? comma : comma - start);
        out.push_back(parse_rational_arg(tok, float_ok));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (static_cast<int>(out.size()) != n)
        throw fs::SpecError("--point needs " + std::to_string(n) + " coordinates");
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    size_t start = 0;
    while (start <= s.size()) {
        size_t comma = s.find(',', start);
        std::string tok = s.substr(start, comma == std::string::npos ? comma : comma - start);
        out.push_back(parse_rational_arg(tok, true).to_double());
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

struct LoadedProblem {
    fs::ProblemSpec spec;
    fs::CheckOptions opt;
    std::string fingerprint;
};

LoadedProblem load(const CommonArgs& a, bool force_float = false) {
    LoadedProblem lp;
    lp.opt.mode = (a.use_float || force_float) ? fs::ArithmeticMode::floating
                                               : fs::ArithmeticMode::rational;
    lp.spec = fs::load_problem_file(a.spec_path, lp.opt.mode);
    lp.fingerprint = fs::file_fingerprint(a.spec_path);
    lp.opt.policy = a.serial ? fs::ExecPolicy::serial : fs::ExecPolicy::parallel;
    lp.opt.grid_override = a.grid;
    if (!a.point.empty())
        lp.opt.point = parse_point_arg(a.point, lp.spec.n,
                                       lp.opt.mode == fs::ArithmeticMode::floating);
    if (a.tol_algebra > 0) lp.spec.tol.algebra = a.tol_algebra;
    if (a.tol_ode > 0) lp.spec.tol.ode = a.tol_ode;
    if (a.tol_fd > 0) lp.spec.tol.fd = a.tol_fd;
    return lp;
}

ordered_json report_envelope(const std::string& command, const LoadedProblem& lp) {
    ordered_json j;
    j["schema"] = 1;
    j["command"] = command;
    j["spec_fingerprint"] = lp.fingerprint;
    j["mode"] = lp.opt.mode == fs::ArithmeticMode::rational ? "rational" : "float";
    return j;
}

// Verdict JSON goes to stdout; per-check wall clock is diagnostic and goes
// to stderr so reports stay byte-identical across runs.
int emit(ordered_json& j, const std::vector<fs::ResidualReport>& checks,
         std::chrono::steady_clock::time_point t0, const std::string& command) {
    bool pass = true;
    ordered_json arr = ordered_json::array();
    for (const fs::ResidualReport& r : checks) {
        arr.push_back(fs::to_json(r));
        pass = pass && r.pass;
    }
    j["checks"] = std::move(arr);
    j["pass"] = pass;
    std::cout << fs::dump_deterministic(j);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fprintf(stderr, "# %s: %.3f s\n", command.c_str(), secs);
    return pass ? 0 : 1;
}

ordered_json signature_json(const fs::ProblemSpec& spec) {
    auto [pos, neg] = fs::ambient_signature(spec);
    ordered_json s;
    s["positive"] = pos;
    s["negative"] = neg;
    return s;
}

template <typename S>
ordered_json matrix_json(const fs::Mat<S>& m) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < m.cols(); ++j) {
            if constexpr (std::is_same_v<S, fs::Rational>)
                row.push_back(m(i, j).to_string());
            else
                row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

template <typename S>
ordered_json ten3_json(const fs::Ten3<S>& t) {
    ordered_json out = ordered_json::array();
    for (int k = 0; k < t.dim0(); ++k) {
        ordered_json mi = ordered_json::array();
        for (int i = 0; i < t.dim1(); ++i) {
            ordered_json row = ordered_json::array();
            for (int j = 0; j < t.dim2(); ++j) {
                if constexpr (std::is_same_v<S, fs::Rational>)
                    row.push_back(t(k, i, j).to_string());
                else
                    row.push_back(t(k, i, j));
            }
            mi.push_back(std::move(row));
        }
        out.push_back(std::move(mi));
    }
    return out;
}

int cmd_check_wdvv(const CommonArgs& a) {
    auto t0 = std::chrono::steady_clock::now();
    LoadedProblem lp = load(a);
    ordered_json j = report_envelope("check-wdvv", lp);
    std::vector<fs::ResidualReport> checks = {fs::run_wdvv_check(lp.spec, lp.opt)};
    return emit(j, checks, t0, "check-wdvv");
}

int cmd_check_gcr(const CommonArgs& a) {
    auto t0 = std::chrono::steady_clock::now();
    LoadedProblem lp = load(a);
    ordered_json j = report_envelope("check-gcr", lp);
    j["ambient_signature"] = signature_json(lp.spec);
    std::vector<fs::ResidualReport> checks = fs::run_gcr_check(lp.spec, lp.opt);
    checks.push_back(fs::run_commutator_check(lp.spec, lp.opt));
    return emit(j, checks, t0, "check-gcr");
}

int cmd_check_reduction(const CommonArgs& a, const std::string& c_arg) {
    auto t0 = std::chrono::steady_clock::now();
    LoadedProblem lp = load(a);
    fs::Rational c;
    if (!c_arg.empty())
        c = parse_rational_arg(c_arg, lp.opt.mode == fs::ArithmeticMode::floating);
    else if (lp.spec.mu_is_eta_scale)
        c = lp.spec.mu_scale;
    else
        throw fs::SpecError("check-reduction: pass --c unless mu is given as a scale of eta");
    ordered_json j = report_envelope("check-reduction", lp);
    j["parameters"]["c"] = c.to_string();
    std::vector<fs::ResidualReport> checks = {fs::run_reduction_check(lp.spec, c, lp.opt)};
    return emit(j, checks, t0, "check-reduction");
}

int cmd_algebra(const CommonArgs& a) {
    auto t0 = std::chrono::steady_clock::now();
    LoadedProblem lp = load(a);
    std::vector<fs::Rational> point =
        lp.opt.point ? *lp.opt.point : lp.spec.domain.base;

    ordered_json j = report_envelope("algebra", lp);
    ordered_json pj = ordered_json::array();
    for (const fs::Rational& x : point) pj.push_back(x.to_double());
    j["point"] = std::move(pj);

    if (lp.opt.mode == fs::ArithmeticMode::rational) {
        std::vector<fs::Rational> p = point;
        fs::Mat<fs::Rational> eta = fs::metric_view<fs::Rational>(lp.spec.eta_contra);
        auto w = fs::weingarten_operators<fs::Rational>(lp.spec.psi, eta, p);
        ordered_json ops = ordered_json::array();
        for (const auto& op : w.ops) ops.push_back(matrix_json(op));
        j["weingarten_operators"] = std::move(ops);
        j["commutator_defect"] = fs::weingarten_commutator_defect(w.ops).value.to_string();
        if (lp.spec.phi) {
            auto sc = fs::structure_constants<fs::Rational>(*lp.spec.phi, eta, p);
            j["structure_constants"] = ten3_json(sc.c);
            j["associativity_residual"] = fs::associativity_residual(sc.c).value.to_string();
            j["invariance_residual"] =
                fs::invariance_residual(sc.c, fs::metric_view<fs::Rational>(lp.spec.eta_cov))
                    .value.to_string();
        }
    } else {
        std::vector<double> p;
        for (const fs::Rational& x : point) p.push_back(x.to_double());
        fs::Mat<double> eta = fs::metric_view<double>(lp.spec.eta_contra);
        auto w = fs::weingarten_operators<double>(lp.spec.psi, eta, p);
        ordered_json ops = ordered_json::array();
        for (const auto& op : w.ops) ops.push_back(matrix_json(op));
        j["weingarten_operators"] = std::move(ops);
        j["commutator_defect"] = fs::weingarten_commutator_defect(w.ops).value;
        if (lp.spec.phi) {
            auto sc = fs::structure_constants<double>(*lp.spec.phi, eta, p);
            j["structure_constants"] = ten3_json(sc.c);
            j["associativity_residual"] = fs::associativity_residual(sc.c).value;
            j["invariance_residual"] =
                fs::invariance_residual(sc.c, fs::metric_view<double>(lp.spec.eta_cov)).value;
        }
    }
    j["pass"] = true;
    std::cout << fs::dump_deterministic(j);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fprintf(stderr, "# algebra: %.3f s\n", secs);
    return 0;
}

int cmd_lax_holonomy(const CommonArgs& a, const std::string& loop_sizes_arg, int substeps,
                     const std::string& lambdas_arg, const std::string& rhos_arg,
                     const std::string& base_arg) {
    auto t0 = std::chrono::steady_clock::now();
    LoadedProblem lp = load(a, /*force_float=*/true);
    const fs::ProblemSpec& spec = lp.spec;

    std::vector<double> loop_sizes = parse_double_list(loop_sizes_arg);
    std::vector<double> lambdas = parse_double_list(lambdas_arg);
    std::vector<double> rhos = parse_double_list(rhos_arg);
    std::vector<double> base(spec.n);
    for (int i = 0; i < spec.n; ++i) base[i] = spec.domain.base[i].to_double();
    if (!base_arg.empty()) {
        auto b = parse_point_arg(base_arg, spec.n, true);
        for (int i = 0; i < spec.n; ++i) base[i] = b[i].to_double();
    }

    fs::LaxSystem sys(spec.psi, spec.eta_contra.as_double(), spec.mu_contra.as_double());
    ordered_json j = report_envelope("lax-holonomy", lp);
    j["parameters"]["substeps"] = substeps;

    ordered_json table = ordered_json::array();
    double worst = 0.0;
    std::vector<int> worst_idx = {-1, -1, -1, -1};
    std::vector<double> worst_pt = base;
    for (double h : loop_sizes)
        for (int ai = 0; ai < spec.n; ++ai)
            for (int aj = ai + 1; aj < spec.n; ++aj)
                for (double lam : lambdas)
                    for (double rho : rhos) {
                        double d = sys.holonomy_defect(base, h, ai, aj, {lam, rho}, substeps,
                                                       lp.opt.policy);
                        ordered_json row;
                        row["loop_size"] = h;
                        row["axes"] = std::vector<int>{ai + 1, aj + 1};
                        row["lambda"] = lam;
                        row["rho"] = rho;
                        row["defect"] = d;
                        table.push_back(std::move(row));
                        if (d > worst) {
                            worst = d;
                            worst_idx = {ai + 1, aj + 1, -1, -1};
                        }
                    }
    j["table"] = std::move(table);

    fs::ResidualReport rep;
    rep.name = "holonomy";
    rep.value = worst;
    rep.worst_point = worst_pt;
    rep.worst_indices = worst_idx;
    rep.tolerance = spec.tol.ode;
    rep.pass = worst <= spec.tol.ode;
    std::vector<fs::ResidualReport> checks = {rep};
    return emit(j, checks, t0, "lax-holonomy");
}

int cmd_reconstruct(const CommonArgs& a, const std::string& out_csv, int substeps, bool frames,
                    bool drift, bool path_check) {
    auto t0 = std::chrono::steady_clock::now();
    LoadedProblem lp = load(a, /*force_float=*/true);
    const fs::ProblemSpec& spec = lp.spec;

    fs::IntegrateOptions io;
    io.substeps = substeps;
    io.grid_override = lp.opt.grid_override;
    io.policy = lp.opt.policy;
    fs::ImmersionGrid grid = fs::integrate_frame(spec, io);
    auto [f0, G] = fs::initial_frame(spec.eta_cov, spec.mu_cov);

    ordered_json j = report_envelope("reconstruct", lp);
    j["parameters"]["substeps"] = substeps;
    j["parameters"]["grid"] = grid.grid.points_per_axis();
    j["ambient_signature"] = signature_json(spec);

    auto make = [&](const std::string& name, double value, double tol) {
        fs::ResidualReport r;
        r.name = name;
        r.value = value;
        r.tolerance = tol;
        r.pass = value <= tol;
        return r;
    };
    std::vector<fs::ResidualReport> checks;
    checks.push_back(make("induced_metric", fs::verify_induced_metric(grid, G, spec.eta_cov,
                                                                      io.policy),
                          spec.tol.ode));
    if (grid.grid.points_per_axis() >= 3) {
        checks.push_back(
            make("second_forms", fs::verify_second_forms(grid, G, spec.psi, io.policy),
                 spec.tol.fd));
        checks.push_back(make("torsion", fs::verify_torsion(grid, G, io.policy), spec.tol.fd));
    }
    if (path_check) {
        fs::IntegrateOptions io2 = io;
        for (int i = spec.n - 1; i >= 0; --i) io2.axis_order.push_back(i);
        fs::ImmersionGrid grid2 = fs::integrate_frame(spec, io2);
        checks.push_back(
            make("path_independence", fs::frame_difference(grid, grid2), spec.tol.ode));
    }
    j["gram_drift"] = fs::gram_drift(grid, G, io.policy);

    if (!out_csv.empty()) {
        fs::write_point_cloud_csv(grid, G, out_csv, {frames, drift});
        j["csv"] = out_csv;
    }
    return emit(j, checks, t0, "reconstruct");
}

int cmd_flows(const CommonArgs& a, const std::string& pair_arg, int m, double dt, int steps,
              double amplitude, const std::string& out_csv, bool filter, bool allow_cfl,
              bool all_pairs) {
    auto t0 = std::chrono::steady_clock::now();
    LoadedProblem lp = load(a, /*force_float=*/true);
    const fs::ProblemSpec& spec = lp.spec;

    if (m < 16) throw fs::SpecError("flows: --m must be at least 16");
    if (dt <= 0 || steps < 0) throw fs::SpecError("flows: --dt must be positive, --steps nonnegative");

    fs::EvolveOptions eo;
    eo.dt = dt;
    eo.steps = steps;
    eo.spectral_filter = filter;
    eo.allow_cfl_violation = allow_cfl;
    eo.policy = lp.opt.policy;

    std::vector<std::pair<int, int>> pairs;
    if (all_pairs) {
        for (int x = 0; x < spec.l; ++x)
            for (int y = x + 1; y < spec.l; ++y) pairs.push_back({x, y});
    } else {
        std::vector<double> p = parse_double_list(pair_arg);
        if (p.size() != 2) throw fs::SpecError("--pair needs two flow indices, e.g. \"1,2\"");
        int x = static_cast<int>(p[0]) - 1, y = static_cast<int>(p[1]) - 1;
        if (x < 0 || y < 0 || x >= spec.l || y >= spec.l)
            throw fs::SpecError("--pair indices must be in 1.." + std::to_string(spec.l));
        pairs.push_back({x, y});
    }

    // Small smooth single-mode data around the domain base point.
    fs::GridState init(spec.n, m);
    for (int x = 0; x < m; ++x)
        for (int c = 0; c < spec.n; ++c)
            init.at(x, c) = spec.domain.base[c].to_double() +
                            amplitude * std::sin(2 * M_PI * (static_cast<double>(x) / m) +
                                                 2 * M_PI * c / spec.n);

    fs::Mat<double> eta = spec.eta_contra.as_double();
    std::vector<fs::FlowVelocity> flows;
    flows.reserve(spec.psi.size());
    for (const fs::Polynomial& p : spec.psi) flows.emplace_back(p, eta);

    ordered_json j = report_envelope("flows", lp);
    j["parameters"]["m"] = m;
    j["parameters"]["dt"] = dt;
    j["parameters"]["steps"] = steps;
    j["parameters"]["amplitude"] = amplitude;

    std::vector<std::string> warnings;
    ordered_json table = ordered_json::array();
    for (auto [x, y] : pairs) {
        double d = fs::commutator_defect(init, flows[x], flows[y], eo, &warnings);
        ordered_json row;
        row["alpha"] = x + 1;
        row["beta"] = y + 1;
        row["defect"] = d;
        table.push_back(std::move(row));
    }
    j["commutator_table"] = std::move(table);
    if (!warnings.empty()) j["warnings"] = warnings;

    if (!out_csv.empty()) {
        // Time series of grid norms for the first flow of the first pair.
        std::ofstream csv(out_csv, std::ios::binary);
        if (!csv) throw fs::SpecError("cannot open CSV output file: " + out_csv);
        csv << "step,time";
        for (int c = 0; c < spec.n; ++c) csv << ",max_abs_" << (c + 1);
        for (int c = 0; c < spec.n; ++c) csv << ",l2_" << (c + 1);
        csv << "\n";
        fs::GridState s = init;
        fs::EvolveOptions one = eo;
        one.steps = 1;
        for (int step = 0; step <= steps; ++step) {
            csv << step << "," << fs::format_double(step * dt);
            for (int c = 0; c < spec.n; ++c) {
                double mx = 0;
                for (int x = 0; x < m; ++x) mx = std::max(mx, std::fabs(s.at(x, c)));
                csv << "," << fs::format_double(mx);
            }
            for (int c = 0; c < spec.n; ++c) {
                double acc = 0;
                for (int x = 0; x < m; ++x) acc += s.at(x, c) * s.at(x, c);
                csv << "," << fs::format_double(std::sqrt(acc / m));
            }
            csv << "\n";
            if (step < steps) s = fs::evolve(s, flows[pairs[0].first], one, &warnings);
        }
        j["csv"] = out_csv;
    }

    j["pass"] = true;
    std::cout << fs::dump_deterministic(j);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fprintf(stderr, "# flows: %.3f s\n", secs);
    return 0;
}

int fail_input(const std::string& kind, const std::string& message) {
    ordered_json err;
    err["schema"] = 1;
    err["error"]["kind"] = kind;
    err["error"]["message"] = message;
    std::cerr << fs::dump_deterministic(err);
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"flat torsionless submanifold toolkit: WDVV/Gauss/Ricci residuals, "
                 "Lax holonomy, Bonnet reconstruction, hydrodynamic flows"};
    app.require_subcommand(1);

    CommonArgs wdvv_args;
    CLI::App* wdvv = app.add_subcommand("check-wdvv", "associativity residual over the grid");
    add_common(wdvv, wdvv_args);

    CommonArgs gcr_args;
    CLI::App* gcr = app.add_subcommand("check-gcr",
                                       "Gauss/Ricci/integrability residuals over the grid");
    add_common(gcr, gcr_args);

    CommonArgs red_args;
    std::string red_c;
    CLI::App* red = app.add_subcommand("check-reduction",
                                       "potential-case Gauss = c*Ricci = associativity identity");
    add_common(red, red_args);
    red->add_option("--c", red_c, "scale with mu = c*eta (default: from the file)");

    CommonArgs alg_args;
    CLI::App* alg = app.add_subcommand("algebra",
                                       "dump structure constants and Weingarten operators at a point");
    add_common(alg, alg_args);

    CommonArgs lax_args;
    std::string loop_sizes = "0.1", lambdas = "-1,-1/2,1/2,1,2", rhos = "-1,-1/2,1/2,1,2",
                lax_base;
    int lax_substeps = 64;
    CLI::App* lax = app.add_subcommand("lax-holonomy",
                                       "loop holonomy of the auxiliary linear problem");
    add_common(lax, lax_args, false);
    lax->add_option("--loop-sizes", loop_sizes, "comma list of loop edge lengths");
    lax->add_option("--substeps", lax_substeps, "integration substeps per loop edge");
    lax->add_option("--lambdas", lambdas, "comma list of lambda values");
    lax->add_option("--rhos", rhos, "comma list of rho values");
    lax->add_option("--base", lax_base, "loop corner (default: domain base point)");

    CommonArgs rec_args;
    std::string rec_out;
    int rec_substeps = 32;
    bool rec_frames = false, rec_drift = false, rec_path = false;
    CLI::App* rec = app.add_subcommand("reconstruct",
                                       "integrate the frame equations and export the immersion");
    add_common(rec, rec_args, false);
    rec->add_option("--out", rec_out, "CSV point-cloud output path");
    rec->add_option("--substeps", rec_substeps, "RK4 substeps per grid cell");
    rec->add_flag("--frames", rec_frames, "include tangent/normal columns in the CSV");
    rec->add_flag("--drift", rec_drift, "include the per-node Gram-drift column");
    rec->add_flag("--path-check", rec_path, "also integrate with the reversed axis order");

    CommonArgs flow_args;
    std::string flow_pair = "1,2", flow_out;
    int flow_m = 128, flow_steps = 50;
    double flow_dt = 1e-3, flow_amp = 1e-2;
    bool flow_filter = false, flow_cfl = false, flow_all = false;
    CLI::App* flow = app.add_subcommand("flows", "hydrodynamic-type flows and their commutator");
    add_common(flow, flow_args, false);
    flow->add_option("--pair", flow_pair, "flow pair, 1-based, e.g. \"1,2\"");
    flow->add_flag("--all-pairs", flow_all, "run every flow pair");
    flow->add_option("--m", flow_m, "spatial grid points");
    flow->add_option("--dt", flow_dt, "time step");
    flow->add_option("--steps", flow_steps, "number of time steps per leg");
    flow->add_option("--amplitude", flow_amp, "initial data amplitude");
    flow->add_option("--out", flow_out, "CSV time-series output path");
    flow->add_flag("--filter", flow_filter, "spectral filtering of the top third of modes");
    flow->add_flag("--allow-cfl", flow_cfl, "proceed past a CFL violation with a warning");

    CLI11_PARSE(app, argc, argv);

    try {
        if (wdvv->parsed()) return cmd_check_wdvv(wdvv_args);
        if (gcr->parsed()) return cmd_check_gcr(gcr_args);
        if (red->parsed()) return cmd_check_reduction(red_args, red_c);
        if (alg->parsed()) return cmd_algebra(alg_args);
        if (lax->parsed())
            return cmd_lax_holonomy(lax_args, loop_sizes, lax_substeps, lambdas, rhos, lax_base);
        if (rec->parsed())
            return cmd_reconstruct(rec_args, rec_out, rec_substeps, rec_frames, rec_drift,
                                   rec_path);
        if (flow->parsed())
            return cmd_flows(flow_args, flow_pair, flow_m, flow_dt, flow_steps, flow_amp,
                             flow_out, flow_filter, flow_cfl, flow_all);
    } catch (const fs::SpecError& e) {
        return fail_input("input", e.what());
    } catch (const fs::NumericError& e) {
        return fail_input("numeric", e.what());
    } catch (const fs::DegenerateMetricError& e) {
        return fail_input("input", e.what());
    } catch (const std::exception& e) {
        return fail_input("internal", e.what());
    }
    return 2;
}
