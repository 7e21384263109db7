#include "dgfilter/time_integration.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dgfilter {

State rk3_step(const State& state, double dt, const RhsFunction& rhs, const Matrix* stage_filter) {
    if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
    Vector u = state.values;
    Vector q = Vector::Zero(u.size());
    for (int k = 0; k < 3; ++k) {
        q = Williamson3::A[k] * q + dt * rhs(state.time + Williamson3::c[k] * dt, u);
        u += Williamson3::B[k] * q;
        if (stage_filter != nullptr) u = (*stage_filter) * u;
    }
    return {std::move(u), state.time + dt};
}

FilterSchedule FilterSchedule::equally_spaced(int count, double final_time,
                                              std::shared_ptr<const FilterMatrices> m) {
    if (count <= 0) return none();
    FilterAtTimes at;
    at.times.reserve(count);
    for (int k = 1; k <= count; ++k) at.times.push_back(final_time * k / count);
    return {std::move(at), std::move(m)};
}

void RunConfig::validate() const {
    if (!(final_time > 0.0)) throw std::invalid_argument("final time must be positive");
    if (dt.has_value() == cfl.has_value()) {
        throw std::invalid_argument("set exactly one of dt and cfl");
    }
    if (dt && !(*dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (cfl && !(*cfl > 0.0)) throw std::invalid_argument("cfl must be positive");
    if (record_every < 1) throw std::invalid_argument("record_every must be >= 1");
}

namespace {

void validate_schedule(const FilterSchedule& schedule, double final_time) {
    if (std::holds_alternative<NoFilter>(schedule.mode)) return;
    if (!schedule.matrices) throw std::invalid_argument("filter schedule without filter matrices");
    if (const auto* at = std::get_if<FilterAtTimes>(&schedule.mode)) {
        double prev = 0.0;
        for (double t : at->times) {
            if (!(t > prev) || t > final_time) {
                throw std::invalid_argument("filter times must be strictly increasing within (0, T]");
            }
            prev = t;
        }
    }
}

std::vector<double> observe(const std::vector<Observer>& observers, const State& s) {
    std::vector<double> out;
    out.reserve(observers.size());
    for (const auto& o : observers) out.push_back(o.measure(s));
    return out;
}

}  // namespace

Trajectory integrate(State initial, const RunConfig& config, const FilterSchedule& schedule,
                     const RhsFunction& rhs, const IntegrateOptions& options) {
    config.validate();
    validate_schedule(schedule, config.final_time);
    if (config.cfl && !options.step_size) {
        throw std::invalid_argument("CFL stepping needs a step-size function");
    }

    const double final_time = config.final_time;
    const double time_slack = 1e-12 * final_time;
    const Matrix* filter = schedule.matrices ? &schedule.matrices->F : nullptr;
    const bool every_step = std::holds_alternative<FilterEveryStep>(schedule.mode);
    const Matrix* stage_filter =
        std::holds_alternative<FilterEveryStage>(schedule.mode) ? filter : nullptr;
    const auto* at_times = std::get_if<FilterAtTimes>(&schedule.mode);
    std::size_t next_filter = 0;

    Trajectory traj;
    traj.series.resize(options.observers.size());
    auto record = [&](const State& s) {
        traj.times.push_back(s.time);
        for (std::size_t k = 0; k < options.observers.size(); ++k) {
            traj.series[k].push_back(options.observers[k].measure(s));
        }
    };

    double guard_limit = std::numeric_limits<double>::infinity();
    if (options.guard) guard_limit = options.guard->blowup_factor * options.guard->measure(initial.values);

    State s = std::move(initial);
    record(s);

    auto mark_crash = [&](double t) {
        traj.crashed = true;
        traj.crash_time = t;
    };

    while (s.time < final_time - time_slack) {
        double dt = 0.0;
        try {
            dt = config.dt ? *config.dt : options.step_size(s.values, *config.cfl);
        } catch (const std::domain_error&) {
            mark_crash(s.time);
            break;
        }
        bool last = false;
        if (s.time + dt >= final_time - time_slack) {
            dt = final_time - s.time;
            last = true;
        }

        State next;
        try {
            next = rk3_step(s, dt, rhs, stage_filter);
        } catch (const NonFiniteState& e) {
            mark_crash(e.time());
            break;
        }
        if (last) next.time = final_time;
        ++traj.steps;

        if (!next.values.allFinite() ||
            (options.guard && !(options.guard->measure(next.values) <= guard_limit))) {
            mark_crash(next.time);
            break;
        }
        s = std::move(next);

        if (every_step) {
            s.values = (*filter) * s.values;
        } else if (at_times != nullptr) {
            while (next_filter < at_times->times.size() &&
                   s.time >= at_times->times[next_filter] - time_slack) {
                FilterEvent ev;
                ev.time = s.time;
                ev.before = observe(options.observers, s);
                s.values = (*filter) * s.values;
                ev.after = observe(options.observers, s);
                traj.filter_events.push_back(std::move(ev));
                ++next_filter;
            }
        }

        if (last || traj.steps % config.record_every == 0) record(s);
    }

    traj.final_state = std::move(s);
    return traj;
}

}  // namespace dgfilter
