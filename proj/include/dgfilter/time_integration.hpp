#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dgfilter/dg_solver.hpp"
#include "dgfilter/filtering.hpp"

namespace dgfilter {

/// Williamson's three-stage, third-order low-storage Runge-Kutta coefficients.
struct Williamson3 {
    static constexpr double A[3] = {0.0, -5.0 / 9.0, -153.0 / 128.0};
    static constexpr double B[3] = {1.0 / 3.0, 15.0 / 16.0, 8.0 / 15.0};
    static constexpr double c[3] = {0.0, 1.0 / 3.0, 3.0 / 4.0};
};

/// du/dt = rhs(t, u). May throw NonFiniteState.
using RhsFunction = std::function<Vector(double t, const Vector& u)>;

/// Advances state by one low-storage RK3 step. If a stage filter is given it
/// is applied to the solution register after every stage.
[[nodiscard]] State rk3_step(const State& state, double dt, const RhsFunction& rhs,
                             const Matrix* stage_filter = nullptr);

struct NoFilter {};
struct FilterEveryStep {};
struct FilterEveryStage {};
struct FilterAtTimes {
    std::vector<double> times;  // strictly increasing, in (0, T]
};
using FilterMode = std::variant<NoFilter, FilterEveryStep, FilterEveryStage, FilterAtTimes>;

struct FilterSchedule {
    FilterMode mode = NoFilter{};
    std::shared_ptr<const FilterMatrices> matrices;

    [[nodiscard]] static FilterSchedule none() { return {}; }
    /// `count` equally spaced instants T/count, 2T/count, ..., T.
    [[nodiscard]] static FilterSchedule equally_spaced(int count, double final_time,
                                                       std::shared_ptr<const FilterMatrices> m);
};

/// Exactly one of dt (fixed step) and cfl (adaptive step) must be set.
struct RunConfig {
    double final_time = 1.0;
    std::optional<double> dt;
    std::optional<double> cfl;
    int record_every = 1;

    void validate() const;
};

/// Returns the step size for the given CFL number and state.
using StepSizeFunction = std::function<double(const Vector& u, double cfl)>;

struct Observer {
    std::string name;
    std::function<double(const State&)> measure;
};

struct FilterEvent {
    double time = 0.0;
    std::vector<double> before;  // one entry per observer
    std::vector<double> after;
};

struct CrashGuard {
    /// Monitored quantity (typically energy); a run whose value exceeds
    /// blowup_factor times its initial value counts as crashed.
    std::function<double(const Vector&)> measure;
    double blowup_factor = 1e6;
};

struct Trajectory {
    State final_state;
    bool crashed = false;
    std::optional<double> crash_time;
    long steps = 0;
    std::vector<double> times;
    std::vector<std::vector<double>> series;  // series[k][r] = observer k at times[r]
    std::vector<FilterEvent> filter_events;
};

struct IntegrateOptions {
    std::vector<Observer> observers;
    std::optional<CrashGuard> guard;
    StepSizeFunction step_size;  // required when RunConfig::cfl is set
};

/// Integrates to exactly final_time, truncating the last step. The filter is
/// applied explicitly (U <- F U) per schedule; at_times instants are served at
/// the first step boundary at or after each requested time. Observers are
/// sampled at t = 0, every record_every steps, and at the final time. A crash
/// stops the run and returns the partial series.
[[nodiscard]] Trajectory integrate(State initial, const RunConfig& config,
                                   const FilterSchedule& schedule, const RhsFunction& rhs,
                                   const IntegrateOptions& options = {});

}  // namespace dgfilter
