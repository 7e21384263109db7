#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dgfilter/dg_solver.hpp"
#include "dgfilter/filtering.hpp"
#include "dgfilter/time_integration.hpp"

namespace dgfilter::experiments {

// ---------------------------------------------------------------------------
// Diagnostics

/// max_i |u_i - exact(x_i)|
[[nodiscard]] double error_linf(const Vector& u, const std::function<double(double)>& exact,
                                const Vector& x);

/// sum_i |u_{i+1} - u_i|
[[nodiscard]] double total_variation(const Vector& u);

/// Parses "start:stop:step" (inclusive) or a comma-separated list of degrees.
/// Throws std::invalid_argument on malformed input.
[[nodiscard]] std::vector<int> parse_degree_list(std::string_view text);

// ---------------------------------------------------------------------------
// Smooth pulse advection: u_t + u_x = 0 on [0, 1]

/// exp(-zeta (x - 0.25 - t)^2), zeta = ln 2 / 0.2^2
[[nodiscard]] double gaussian_pulse(double x, double t);

struct ConvergencePoint {
    int degree = 0;
    double error = 0.0;  // L-infinity nodal error at the final time
};

struct ConvergenceSweep {
    double dt = 0.0;
    double final_time = 0.5;
    FilterSpec filter;
    std::vector<ConvergencePoint> points;
};

/// Filters after every step; inflow data from the exact pulse.
[[nodiscard]] ConvergenceSweep run_convergence(const std::vector<int>& degrees, double dt,
                                               const FilterSpec& filter, double final_time = 0.5);

// ---------------------------------------------------------------------------
// Variable wave speed: u_t + a(x) u_x = 0 on [-1, 1], a(x) = sin(pi x - 1) / pi

[[nodiscard]] double varspeed_wave_speed(double x);
[[nodiscard]] double varspeed_exact(double x, double t);

struct VarspeedRun {
    int degree = 0;
    double dt = 0.0;
    double final_time = 4.0;
    bool filtered = false;
    Vector x;
    Vector u;
    Vector exact;
    double error = 0.0;
    double total_variation = 0.0;
    bool crashed = false;
};

[[nodiscard]] VarspeedRun run_varspeed(int degree = 256, double dt = 1.0 / 2000.0, bool filtered = true,
                                       double final_time = 4.0, const FilterSpec& filter = {});

// ---------------------------------------------------------------------------
// Burgers on [0, 2], periodic, u0 = (1 + cos(pi x)) / 5

enum class BurgersVariant { ConsUnfiltered, ConsFiltered, SkewUnfiltered, SkewFiltered };

[[nodiscard]] std::string_view to_string(BurgersVariant v);
[[nodiscard]] std::optional<BurgersVariant> parse_burgers_variant(std::string_view name);
[[nodiscard]] bool is_filtered(BurgersVariant v);
[[nodiscard]] bool is_skew(BurgersVariant v);

[[nodiscard]] double burgers_initial(double x);
[[nodiscard]] ProblemSpec burgers_problem(BurgersVariant v);

struct FilterEnergyJump {
    double time = 0.0;
    double before = 0.0;  // normalized energy
    double after = 0.0;
};

struct BurgersRun {
    BurgersVariant variant = BurgersVariant::SkewFiltered;
    int degree = 0;
    double cfl = 0.0;
    double final_time = 2.25;
    int filter_count = 0;
    std::vector<double> times;
    std::vector<double> normalized_energy;
    std::vector<FilterEnergyJump> filter_jumps;
    bool crashed = false;
    std::optional<double> crash_time;
    long steps = 0;
    double initial_energy = 0.0;
    Vector x;  // physical nodes
    Vector u;  // final (or last valid) state
};

[[nodiscard]] BurgersRun run_burgers(BurgersVariant variant, int degree = 128, int filter_count = 16,
                                     double cfl = 0.4, double final_time = 2.25,
                                     const FilterSpec& filter = {});

// ---------------------------------------------------------------------------
// First-order finite-volume reference for the Burgers case

struct FvConfig {
    int cells = 10000;
    double cfl = 0.9;
    double final_time = 2.25;

    void validate() const;
};

struct FvSolution {
    double x_left = 0.0;
    double cell_width = 0.0;
    Vector centers;
    Vector averages;
    long steps = 0;
};

/// Godunov-type update with the LLF interface flux and forward Euler.
[[nodiscard]] FvSolution run_fv_reference(const FvConfig& config,
                                          const std::function<double(double)>& initial = burgers_initial);

struct ReferenceComparison {
    double dg_shock = 0.0;
    double fv_shock = 0.0;
    double shock_offset_cells = 0.0;  // |dg - fv| / cell width
    double smooth_l1 = 0.0;           // integral of |dg - fv| away from the shock
    double exclusion_halfwidth = 0.0;
};

/// Samples a DG solution at the reference cell centers. The shock is taken as
/// the midpoint of the steepest downward jump between adjacent samples.
[[nodiscard]] ReferenceComparison compare_with_reference(const OperatorSet& ops,
                                                         const ProblemSpec& problem,
                                                         const Vector& dg_values,
                                                         const FvSolution& reference,
                                                         double exclusion_halfwidth = 0.1);

/// Location of the steepest downward jump of sampled data.
[[nodiscard]] double locate_shock(const Vector& x, const Vector& u);

}  // namespace dgfilter::experiments
