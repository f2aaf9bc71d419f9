#include "fraclab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fraclab/assembly.hpp"
#include "fraclab/pointwise.hpp"
#include "fraclab/rhs.hpp"
#include "fraclab/solvers.hpp"
#include "fraclab/special_functions.hpp"

namespace fraclab {

namespace {

// ---------------------------------------------------------------- config

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& key) {
    std::size_t pos = 0;
    double d;
    try {
        d = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad number for '" + key + "': " + v);
    }
    if (pos != v.size())
        throw std::invalid_argument("config: trailing junk for '" + key + "': " + v);
    return d;
}

// ---------------------------------------------------------------- output

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void write_dat(const std::string& path) const {
        std::ofstream os(path, std::ios::binary);
        os << "#";
        for (const auto& c : columns) os << " " << c;
        os << "\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? " " : "") << fmt(r[i]);
            os << "\n";
        }
    }

    void write_csv(const std::string& path) const {
        std::ofstream os(path, std::ios::binary);
        for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
        os << "\r\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << fmt(r[i]);
            os << "\r\n";
        }
    }
};

void write_outputs(const ExperimentConfig& cfg, const Table& table, const RunSummary& summary) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out);
    const std::string base = cfg.out + "/" + cfg.experiment;
    table.write_dat(base + ".dat");
    table.write_csv(base + ".csv");
    std::ofstream os(cfg.out + "/summary.txt", std::ios::binary | std::ios::app);
    for (const auto& c : summary.checks)
        os << (c.pass ? "PASS" : "FAIL") << " " << c.name << "=" << fmt(c.value) << "\n";
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

} // namespace

// -------------------------------------------------------------- plumbing

void ExperimentConfig::validate() const {
    static const std::vector<std::string> known = {
        "matrix-limits", "ball-validate", "pointwise-limits", "rate-study",
        "parabolic-study"};
    if (std::find(known.begin(), known.end(), experiment) == known.end())
        throw std::invalid_argument("unknown experiment: " + experiment);
    if (!(a < b)) throw std::invalid_argument("config: need a < b");
    if (n != 0 && n < 3) throw std::invalid_argument("config: need n >= 3");
    for (std::size_t i = 0; i < s_grid.size(); ++i) {
        if (!(s_grid[i] > 0.0 && s_grid[i] < 1.0))
            throw std::invalid_argument("config: s_grid values must lie in (0,1)");
        if (i > 0 && s_grid[i] <= s_grid[i - 1])
            throw std::invalid_argument("config: s_grid must be strictly increasing");
    }
    if (!(dt > 0.0) || !(T >= dt)) throw std::invalid_argument("config: need 0 < dt <= T");
}

std::vector<double> parse_s_grid(const std::string& text) {
    std::vector<double> grid;
    if (text.rfind("log1ms:", 0) == 0) {
        const std::string body = text.substr(7);
        std::stringstream ss(body);
        std::string part;
        std::vector<double> v;
        while (std::getline(ss, part, ',')) v.push_back(parse_double(trim(part), "s_grid"));
        if (v.size() != 3) throw std::invalid_argument("s_grid: log1ms needs lo,hi,count");
        const double lo = v[0], hi = v[1];
        const int count = static_cast<int>(v[2]);
        if (!(lo > 0.0 && hi < 1.0 && lo < hi) || count < 2)
            throw std::invalid_argument("s_grid: bad log1ms range");
        for (int i = 0; i < count; ++i) {
            const double t = static_cast<double>(i) / (count - 1);
            // descending gap -> ascending s
            grid.push_back(1.0 - hi * std::pow(lo / hi, t));
        }
    } else {
        std::stringstream ss(text);
        std::string part;
        while (std::getline(ss, part, ',')) grid.push_back(parse_double(trim(part), "s_grid"));
    }
    if (grid.empty()) throw std::invalid_argument("s_grid: empty");
    return grid;
}

ExperimentConfig load_config(const std::string& path, const std::string& experiment) {
    ExperimentConfig cfg;
    cfg.experiment = experiment;
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "a") cfg.a = parse_double(val, key);
        else if (key == "b") cfg.b = parse_double(val, key);
        else if (key == "n") cfg.n = static_cast<int>(parse_double(val, key));
        else if (key == "s_grid") cfg.s_grid = parse_s_grid(val);
        else if (key == "rhs") cfg.rhs = val;
        else if (key == "dt") cfg.dt = parse_double(val, key);
        else if (key == "T") cfg.T = parse_double(val, key);
        else if (key == "out") cfg.out = val;
        else if (key == "seed") cfg.seed = static_cast<unsigned long>(parse_double(val, key));
        else
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
    }
    return cfg;
}

bool RunSummary::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

namespace {

std::vector<double> default_rate_grid() { return parse_s_grid("log1ms:5e-3,0.5,20"); }

RhsSpec make_rhs(const std::string& name, const ExperimentConfig& cfg, double s_for_mollified) {
    if (name.empty() || name == "sinpix2") return RhsSpec{rhs::SinPiX2{}};
    if (name == "constant") return RhsSpec{rhs::Constant{1.0}};
    if (name == "piecewise") {
        const double mid = 0.5 * (cfg.a + cfg.b);
        const double quarter = 0.25 * (cfg.b - cfg.a);
        return RhsSpec{rhs::PiecewiseConstant{{mid - quarter, mid + quarter}, {0.0, 1.0, 0.0}}};
    }
    if (name == "mollified") {
        // fixed kinked profile g, sampled well below the smallest radius
        const int m = 4097;
        std::vector<double> g(m);
        const double width = 0.3 * (cfg.b - cfg.a);
        const double mid = 0.5 * (cfg.a + cfg.b);
        for (int i = 0; i < m; ++i) {
            const double x = cfg.a + (cfg.b - cfg.a) * i / (m - 1);
            g[i] = std::max(0.0, 1.0 - std::abs(x - mid) / width);
        }
        return build_fs(g, cfg.a, cfg.b, s_for_mollified);
    }
    throw std::invalid_argument("unknown rhs: " + name);
}

} // namespace

// ------------------------------------------------------------ experiments

RunSummary run_matrix_limits(const ExperimentConfig& cfg) {
    Timer timer;
    RunSummary summary;
    summary.experiment = cfg.experiment;
    const int n = cfg.n ? cfg.n : 63;

    std::vector<double> grid = cfg.s_grid;
    if (grid.empty()) grid = {1e-4, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.9999};

    Table table;
    table.columns = {"s", "eta0", "eta1", "eta2", "eta3", "eta4", "eta5"};
    for (double s : grid) {
        std::vector<double> row{s};
        for (int k = 0; k <= 5; ++k) row.push_back(stiffness_kernel(s, k));
        table.rows.push_back(row);
    }

    auto far_max = [&](double s) {
        double m = 0.0;
        for (int k = 2; k < n; ++k) m = std::max(m, std::abs(stiffness_kernel(s, k)));
        return m;
    };
    const double s_hi = 0.9999, s_lo = 1e-4;
    const double d0_hi = std::abs(stiffness_kernel(s_hi, 0) - 2.0);
    const double d1_hi = std::abs(stiffness_kernel(s_hi, 1) - (-1.0));
    const double far_hi = far_max(s_hi);
    const double d0_lo = std::abs(stiffness_kernel(s_lo, 0) - 2.0 / 3.0);
    const double d1_lo = std::abs(stiffness_kernel(s_lo, 1) - 1.0 / 6.0);
    const double far_lo = far_max(s_lo);
    summary.checks.push_back({"laplacian_limit_eta0_gap", d0_hi, d0_hi < 1e-2});
    summary.checks.push_back({"laplacian_limit_eta1_gap", d1_hi, d1_hi < 1e-2});
    summary.checks.push_back({"laplacian_limit_far_max", far_hi, far_hi < 1e-2});
    summary.checks.push_back({"identity_limit_eta0_gap", d0_lo, d0_lo < 1e-2});
    summary.checks.push_back({"identity_limit_eta1_gap", d1_lo, d1_lo < 1e-2});
    summary.checks.push_back({"identity_limit_far_max", far_lo, far_lo < 1e-2});

    write_outputs(cfg, table, summary);
    summary.wall_seconds = timer.seconds();
    return summary;
}

RunSummary run_ball_validate(const ExperimentConfig& cfg) {
    Timer timer;
    RunSummary summary;
    summary.experiment = cfg.experiment;
    const int n = cfg.n ? cfg.n : 1023;
    const UniformMesh mesh(-1.0, 1.0, n); // the explicit solution lives on the unit ball

    Table table;
    table.columns = {"x", "u_h_s05", "exact_s05", "u_h_s9999", "limit_profile"};

    auto solve_for = [&](double s) {
        EllipticProblem prob(FracParams(1, s), mesh, RhsSpec{rhs::Constant{1.0}});
        return solve_elliptic(prob);
    };
    const auto u_half = solve_for(0.5);
    const auto u_near1 = solve_for(0.9999);

    const FracParams p_half(1, 0.5);
    double err_half = 0.0, err_near1 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = mesh.node(i);
        const double exact_half = exact_ball_solution(p_half, x);
        const double limit_profile = 0.5 * (1.0 - x * x);
        err_half = std::max(err_half, std::abs(u_half.values[i] - exact_half));
        err_near1 = std::max(err_near1, std::abs(u_near1.values[i] - limit_profile));
        table.rows.push_back({x, u_half.values[i], exact_half, u_near1.values[i], limit_profile});
    }
    summary.checks.push_back({"ball_s05_max_nodal_err", err_half, err_half < 1e-2});
    summary.checks.push_back({"ball_s9999_max_nodal_err", err_near1, err_near1 < 2e-2});

    // seeded interpolation spot checks away from the nodes
    std::mt19937 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(-0.9, 0.9);
    double err_spot = 0.0;
    for (int i = 0; i < 16; ++i) {
        const double x = unif(rng);
        err_spot = std::max(err_spot, std::abs(u_half(x) - exact_ball_solution(p_half, x)));
    }
    summary.checks.push_back({"ball_s05_spot_err", err_spot, err_spot < 1e-2});

    write_outputs(cfg, table, summary);
    summary.wall_seconds = timer.seconds();
    return summary;
}

RunSummary run_pointwise_limits(const ExperimentConfig& cfg) {
    Timer timer;
    RunSummary summary;
    summary.experiment = cfg.experiment;

    CompactFunction bump{[](double y) {
                             const double d = 1.0 - y * y;
                             return d > 0.0 ? std::exp(-1.0 / d) : 0.0;
                         },
                         -1.0, 1.0};
    const double x = 0.3;
    const double ux = bump.eval(x);
    const double fd = 1e-5;
    const double upp =
        (bump.eval(x + fd) - 2.0 * ux + bump.eval(x - fd)) / (fd * fd);

    Table table;
    table.columns = {"s", "flap", "reference", "rel_err"};

    const double v_lo = pointwise_flap(bump, x, FracParams(1, 0.01));
    const double rel_lo = std::abs(v_lo - ux) / std::abs(ux);
    table.rows.push_back({0.01, v_lo, ux, rel_lo});

    const double v_hi = pointwise_flap(bump, x, FracParams(1, 0.999));
    const double rel_hi = std::abs(v_hi - (-upp)) / std::abs(upp);
    table.rows.push_back({0.999, v_hi, -upp, rel_hi});

    summary.checks.push_back({"identity_limit_rel_err", rel_lo, rel_lo < 5e-2});
    summary.checks.push_back({"laplacian_limit_rel_err", rel_hi, rel_hi < 1e-2});

    write_outputs(cfg, table, summary);
    summary.wall_seconds = timer.seconds();
    return summary;
}

RunSummary run_rate_study(const ExperimentConfig& cfg, ConvergenceReport* report) {
    Timer timer;
    RunSummary summary;
    summary.experiment = cfg.experiment;
    const int n = cfg.n ? cfg.n : 511;
    const UniformMesh mesh(cfg.a, cfg.b, n);
    std::vector<double> grid = cfg.s_grid;
    if (grid.empty()) grid = default_rate_grid();

    const bool mollified = cfg.rhs == "mollified";
    // classical reference: same load, tridiagonal stiffness; for the
    // mollified family the reference load is the unmollified divergence
    const auto A_classical = assemble_classical_stiffness(mesh);
    std::vector<double> b_ref;
    if (mollified) {
        const auto spec = std::get<rhs::MollifiedDiv>(make_rhs(cfg.rhs, cfg, grid.front()).spec);
        b_ref = assemble_load_divergence(mesh, spec.g_samples, spec.grid_lo, spec.grid_hi);
    } else {
        b_ref = assemble_load(mesh, make_rhs(cfg.rhs, cfg, 0.5).evaluator(mesh));
    }
    const DiscreteFunction u_ref(mesh, solve_spd(A_classical, b_ref));

    ConvergenceReport local;
    Table table;
    table.columns = {"s", "err_hs", "err_l2"};
    for (double s : grid) {
        EllipticProblem prob(FracParams(1, s), mesh, make_rhs(cfg.rhs, cfg, s));
        const auto u_s = solve_elliptic(prob);
        const double e_hs = hs_error(u_s, u_ref, s);
        std::vector<double> d(u_s.values);
        for (int i = 0; i < n; ++i) d[i] -= u_ref.values[i];
        const double e_l2 = l2_norm(DiscreteFunction(mesh, d));
        local.samples.push_back({s, e_hs, e_l2});
        table.rows.push_back({s, e_hs, e_l2});
    }
    std::vector<std::pair<double, double>> pairs;
    for (const auto& smp : local.samples) pairs.emplace_back(smp.s, smp.err_hs);
    const auto [slope, resid] = fit_rate(pairs);
    local.slope = slope;
    local.fit_residual = resid;

    summary.checks.push_back({"rate_slope", slope, slope >= 0.4 && slope <= 0.6});
    summary.checks.push_back({"rate_fit_residual", resid, resid < 0.1});

    write_outputs(cfg, table, summary);
    if (report) *report = std::move(local);
    summary.wall_seconds = timer.seconds();
    return summary;
}

RunSummary run_parabolic_study(const ExperimentConfig& cfg) {
    Timer timer;
    RunSummary summary;
    summary.experiment = cfg.experiment;
    const int n = cfg.n ? cfg.n : 255;
    const UniformMesh mesh(cfg.a, cfg.b, n);
    auto g = [](double, double) { return 1.0; };

    ParabolicProblem prob(FracParams(1, 0.9999), mesh, g, cfg.dt, cfg.T);
    const auto frac_run = solve_parabolic(prob);
    const auto classical_run = step_implicit_euler(assemble_classical_stiffness(mesh), mesh, g,
                                                   cfg.dt, cfg.T, DiscreteFunction::zero(mesh));

    Table table;
    table.columns = {"t", "l2_gap"};
    double sup_gap = 0.0;
    for (std::size_t m = 0; m < frac_run.size(); ++m) {
        std::vector<double> d(frac_run[m].values);
        for (int i = 0; i < n; ++i) d[i] -= classical_run[m].values[i];
        const double gap = l2_norm(DiscreteFunction(mesh, d));
        sup_gap = std::max(sup_gap, gap);
        table.rows.push_back({static_cast<double>(m) * cfg.dt, gap});
    }
    summary.checks.push_back({"parabolic_sup_l2_gap", sup_gap, sup_gap < 2e-2});

    write_outputs(cfg, table, summary);
    summary.wall_seconds = timer.seconds();
    return summary;
}

RunSummary run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.experiment == "matrix-limits") return run_matrix_limits(cfg);
    if (cfg.experiment == "ball-validate") return run_ball_validate(cfg);
    if (cfg.experiment == "pointwise-limits") return run_pointwise_limits(cfg);
    if (cfg.experiment == "rate-study") return run_rate_study(cfg);
    if (cfg.experiment == "parabolic-study") return run_parabolic_study(cfg);
    throw std::invalid_argument("unknown experiment: " + cfg.experiment);
}

} // namespace fraclab
