#include "dgfilter/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dgfilter::experiments {

using std::numbers::pi;

double error_linf(const Vector& u, const std::function<double(double)>& exact, const Vector& x) {
    if (u.size() != x.size()) throw std::invalid_argument("error_linf: length mismatch");
    double err = 0.0;
    for (Eigen::Index i = 0; i < u.size(); ++i) err = std::max(err, std::abs(u[i] - exact(x[i])));
    return err;
}

double total_variation(const Vector& u) {
    double tv = 0.0;
    for (Eigen::Index i = 0; i + 1 < u.size(); ++i) tv += std::abs(u[i + 1] - u[i]);
    return tv;
}

std::vector<int> parse_degree_list(std::string_view text) {
    auto to_int = [&](std::string_view piece) {
        int value = 0;
        const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
        if (ec != std::errc{} || ptr != piece.data() + piece.size() || piece.empty()) {
            throw std::invalid_argument("malformed degree list: " + std::string(text));
        }
        return value;
    };
    auto split = [](std::string_view s, char sep) {
        std::vector<std::string_view> parts;
        std::size_t start = 0;
        while (true) {
            const std::size_t pos = s.find(sep, start);
            parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
            if (pos == std::string_view::npos) break;
            start = pos + 1;
        }
        return parts;
    };

    std::vector<int> out;
    if (text.find(':') != std::string_view::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) throw std::invalid_argument("range must be start:stop:step");
        const int start = to_int(parts[0]);
        const int stop = to_int(parts[1]);
        const int step = to_int(parts[2]);
        if (step <= 0 || stop < start) throw std::invalid_argument("range must be ascending with step > 0");
        for (int n = start; n <= stop; n += step) out.push_back(n);
    } else {
        for (auto piece : split(text, ',')) out.push_back(to_int(piece));
    }
    for (int n : out) {
        if (n < 1 || n > kMaxDegree) throw std::invalid_argument("degree out of range in list");
    }
    return out;
}

namespace {

Vector sample(const std::function<double(double)>& fn, const Vector& x) {
    Vector out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = fn(x[i]);
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------

double gaussian_pulse(double x, double t) {
    const double zeta = std::log(2.0) / (0.2 * 0.2);
    const double r = x - 0.25 - t;
    return std::exp(-zeta * r * r);
}

ConvergenceSweep run_convergence(const std::vector<int>& degrees, double dt, const FilterSpec& filter,
                                 double final_time) {
    ConvergenceSweep sweep;
    sweep.dt = dt;
    sweep.final_time = final_time;
    sweep.filter = filter;

    ProblemSpec problem;
    problem.x_left = 0.0;
    problem.x_right = 1.0;
    problem.pde = AdvectionConstant{1.0};
    problem.bc = InflowDirichlet{[](double t) { return gaussian_pulse(0.0, t); }};
    problem.validate();

    for (int degree : degrees) {
        const OperatorSet ops(degree);
        const Vector x = problem.physical_nodes(ops);
        auto matrices = std::make_shared<const FilterMatrices>(build_filter_matrices(ops, filter));

        RunConfig config;
        config.final_time = final_time;
        config.dt = dt;
        config.record_every = 1 << 30;
        const FilterSchedule schedule{FilterEveryStep{}, matrices};
        const RhsFunction f = [&](double t, const Vector& u) { return rhs(problem, ops, State{u, t}); };

        State init{sample([](double xx) { return gaussian_pulse(xx, 0.0); }, x), 0.0};
        const Trajectory traj = integrate(std::move(init), config, schedule, f);
        const double err = traj.crashed ? std::numeric_limits<double>::infinity()
                                        : error_linf(traj.final_state.values,
                                                     [&](double xx) { return gaussian_pulse(xx, final_time); }, x);
        sweep.points.push_back({degree, err});
    }
    return sweep;
}

// ---------------------------------------------------------------------------

double varspeed_wave_speed(double x) { return std::sin(pi * x - 1.0) / pi; }

double varspeed_exact(double x, double t) {
    return std::sin(2.0 * std::atan(std::exp(-t) * std::tan(0.5 * (pi * x - 1.0))) + 1.0);
}

VarspeedRun run_varspeed(int degree, double dt, bool filtered, double final_time, const FilterSpec& filter) {
    ProblemSpec problem;
    problem.x_left = -1.0;
    problem.x_right = 1.0;
    problem.pde = AdvectionVariable{varspeed_wave_speed};
    problem.bc = InflowDirichlet{[](double t) { return varspeed_exact(-1.0, t); }};
    problem.validate();

    const OperatorSet ops(degree);
    VarspeedRun run;
    run.degree = degree;
    run.dt = dt;
    run.final_time = final_time;
    run.filtered = filtered;
    run.x = problem.physical_nodes(ops);

    RunConfig config;
    config.final_time = final_time;
    config.dt = dt;
    config.record_every = 1 << 30;
    FilterSchedule schedule;
    if (filtered) {
        schedule = {FilterEveryStep{},
                    std::make_shared<const FilterMatrices>(build_filter_matrices(ops, filter))};
    }
    const RhsFunction f = [&](double t, const Vector& u) { return rhs(problem, ops, State{u, t}); };

    State init{sample([](double xx) { return std::sin(pi * xx); }, run.x), 0.0};
    Trajectory traj = integrate(std::move(init), config, schedule, f);
    run.crashed = traj.crashed;
    run.u = std::move(traj.final_state.values);
    run.exact = sample([&](double xx) { return varspeed_exact(xx, final_time); }, run.x);
    run.error = run.crashed ? std::numeric_limits<double>::infinity() : (run.u - run.exact).cwiseAbs().maxCoeff();
    run.total_variation = run.crashed ? std::numeric_limits<double>::infinity() : total_variation(run.u);
    return run;
}

// ---------------------------------------------------------------------------

std::string_view to_string(BurgersVariant v) {
    switch (v) {
        case BurgersVariant::ConsUnfiltered: return "cons_unfiltered";
        case BurgersVariant::ConsFiltered: return "cons_filtered";
        case BurgersVariant::SkewUnfiltered: return "skew_unfiltered";
        case BurgersVariant::SkewFiltered: return "skew_filtered";
    }
    return "unknown";
}

std::optional<BurgersVariant> parse_burgers_variant(std::string_view name) {
    for (auto v : {BurgersVariant::ConsUnfiltered, BurgersVariant::ConsFiltered,
                   BurgersVariant::SkewUnfiltered, BurgersVariant::SkewFiltered}) {
        if (to_string(v) == name) return v;
    }
    return std::nullopt;
}

bool is_filtered(BurgersVariant v) {
    return v == BurgersVariant::ConsFiltered || v == BurgersVariant::SkewFiltered;
}

bool is_skew(BurgersVariant v) {
    return v == BurgersVariant::SkewUnfiltered || v == BurgersVariant::SkewFiltered;
}

double burgers_initial(double x) { return 0.2 * (1.0 + std::cos(pi * x)); }

ProblemSpec burgers_problem(BurgersVariant v) {
    ProblemSpec problem;
    problem.x_left = 0.0;
    problem.x_right = 2.0;
    if (is_skew(v)) {
        problem.pde = BurgersSkew{};
    } else {
        problem.pde = BurgersConservative{};
    }
    problem.bc = Periodic{};
    return problem;
}

BurgersRun run_burgers(BurgersVariant variant, int degree, int filter_count, double cfl, double final_time,
                       const FilterSpec& filter) {
    const ProblemSpec problem = burgers_problem(variant);
    problem.validate();
    const OperatorSet ops(degree);

    BurgersRun run;
    run.variant = variant;
    run.degree = degree;
    run.cfl = cfl;
    run.final_time = final_time;
    run.filter_count = is_filtered(variant) ? filter_count : 0;
    run.x = problem.physical_nodes(ops);

    State init{sample(burgers_initial, run.x), 0.0};
    run.initial_energy = energy(problem, ops, init.values);
    const double e0 = run.initial_energy;

    RunConfig config;
    config.final_time = final_time;
    config.cfl = cfl;
    config.record_every = 1;

    FilterSchedule schedule;
    if (run.filter_count > 0) {
        schedule = FilterSchedule::equally_spaced(
            run.filter_count, final_time,
            std::make_shared<const FilterMatrices>(build_filter_matrices(ops, filter)));
    }

    IntegrateOptions options;
    options.observers.push_back(
        {"normalized_energy", [&](const State& s) { return energy(problem, ops, s.values) / e0; }});
    options.guard = CrashGuard{[&](const Vector& u) { return energy(problem, ops, u); }, 1e6};
    options.step_size = [&](const Vector& u, double c) { return cfl_time_step(problem, ops, u, c); };

    const RhsFunction f = [&](double t, const Vector& u) { return rhs(problem, ops, State{u, t}); };
    Trajectory traj = integrate(std::move(init), config, schedule, f, options);

    run.times = std::move(traj.times);
    run.normalized_energy = std::move(traj.series[0]);
    for (const auto& ev : traj.filter_events) run.filter_jumps.push_back({ev.time, ev.before[0], ev.after[0]});
    run.crashed = traj.crashed;
    run.crash_time = traj.crash_time;
    run.steps = traj.steps;
    run.u = std::move(traj.final_state.values);
    return run;
}

// ---------------------------------------------------------------------------

void FvConfig::validate() const {
    if (cells < 10) throw std::invalid_argument("finite-volume reference needs at least 10 cells");
    if (!(cfl > 0.0 && cfl <= 0.9)) throw std::invalid_argument("finite-volume cfl must lie in (0, 0.9]");
    if (!(final_time > 0.0)) throw std::invalid_argument("final time must be positive");
}

FvSolution run_fv_reference(const FvConfig& config, const std::function<double(double)>& initial) {
    config.validate();
    constexpr double x_left = 0.0;
    constexpr double x_right = 2.0;
    const int n = config.cells;
    const double h = (x_right - x_left) / n;

    FvSolution sol;
    sol.x_left = x_left;
    sol.cell_width = h;
    sol.centers.resize(n);
    sol.averages.resize(n);

    // Cell averages by three-point Gauss-Legendre quadrature.
    const double g = std::sqrt(0.6);
    for (int i = 0; i < n; ++i) {
        const double c = x_left + (i + 0.5) * h;
        sol.centers[i] = c;
        sol.averages[i] = (5.0 * initial(c - 0.5 * h * g) + 8.0 * initial(c) + 5.0 * initial(c + 0.5 * h * g)) / 18.0;
    }

    Vector& u = sol.averages;
    Vector flux(n);  // flux[i] at the right face of cell i
    double t = 0.0;
    const double slack = 1e-12 * config.final_time;
    while (t < config.final_time - slack) {
        const double speed = u.cwiseAbs().maxCoeff();
        double dt = speed > 0.0 ? config.cfl * h / speed : config.final_time - t;
        if (t + dt >= config.final_time - slack) dt = config.final_time - t;
        for (int i = 0; i < n; ++i) flux[i] = llf_flux(u[i], u[(i + 1) % n], BurgersFlux{});
        for (int i = 0; i < n; ++i) u[i] -= dt / h * (flux[i] - flux[(i + n - 1) % n]);
        t += dt;
        ++sol.steps;
    }
    return sol;
}

double locate_shock(const Vector& x, const Vector& u) {
    if (x.size() != u.size() || x.size() < 2) throw std::invalid_argument("locate_shock: bad input");
    Eigen::Index best = 0;
    double drop = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i + 1 < u.size(); ++i) {
        const double d = u[i] - u[i + 1];
        if (d > drop) {
            drop = d;
            best = i;
        }
    }
    return 0.5 * (x[best] + x[best + 1]);
}

ReferenceComparison compare_with_reference(const OperatorSet& ops, const ProblemSpec& problem,
                                           const Vector& dg_values, const FvSolution& reference,
                                           double exclusion_halfwidth) {
    const Vector bary = barycentric_weights(ops.nodes());
    const Eigen::Index n = reference.centers.size();
    Vector dg(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        dg[i] = interpolate(ops.nodes(), bary, dg_values, problem.to_reference(reference.centers[i]));
    }

    ReferenceComparison cmp;
    cmp.exclusion_halfwidth = exclusion_halfwidth;
    cmp.dg_shock = locate_shock(reference.centers, dg);
    cmp.fv_shock = locate_shock(reference.centers, reference.averages);
    cmp.shock_offset_cells = std::abs(cmp.dg_shock - cmp.fv_shock) / reference.cell_width;

    const double period = problem.dx();
    for (Eigen::Index i = 0; i < n; ++i) {
        double dist = std::abs(reference.centers[i] - cmp.fv_shock);
        dist = std::min(dist, period - dist);
        if (dist > exclusion_halfwidth) cmp.smooth_l1 += std::abs(dg[i] - reference.averages[i]) * reference.cell_width;
    }
    return cmp;
}

}  // namespace dgfilter::experiments
