#pragma once

#include <functional>
#include <stdexcept>
#include <variant>

#include "dgfilter/spectral_core.hpp"

namespace dgfilter {

// PDE menu. All are scalar, one-dimensional, on a single element.
struct AdvectionConstant {
    double speed = 1.0;
};
struct AdvectionVariable {
    std::function<double(double x)> speed;  // a(x), advective form u_t + a(x) u_x = 0
};
struct BurgersConservative {};
struct BurgersSkew {};
using Pde = std::variant<AdvectionConstant, AdvectionVariable, BurgersConservative, BurgersSkew>;

/// Dirichlet data g(t) imposed weakly at the left (inflow) boundary. The right
/// boundary is outflow.
struct InflowDirichlet {
    std::function<double(double t)> value;
};
/// The two element faces are identified with each other.
struct Periodic {};
using BoundaryCondition = std::variant<InflowDirichlet, Periodic>;

struct ProblemSpec {
    double x_left = -1.0;
    double x_right = 1.0;
    Pde pde = BurgersSkew{};
    BoundaryCondition bc = Periodic{};

    [[nodiscard]] double dx() const { return x_right - x_left; }
    [[nodiscard]] double to_physical(double xi) const { return x_left + 0.5 * (xi + 1.0) * dx(); }
    [[nodiscard]] double to_reference(double x) const { return 2.0 * (x - x_left) / dx() - 1.0; }
    [[nodiscard]] Vector physical_nodes(const OperatorSet& ops) const;

    /// Throws std::invalid_argument on an empty domain, periodic advection,
    /// inflow data at a boundary that is not inflow, or a missing callable.
    void validate() const;
};

struct State {
    Vector values;
    double time = 0.0;
};

/// Raised by the right-hand-side evaluators when the state holds NaN or Inf.
class NonFiniteState : public std::runtime_error {
public:
    explicit NonFiniteState(double time)
        : std::runtime_error("non-finite solution state"), time_(time) {}
    [[nodiscard]] double time() const { return time_; }

private:
    double time_;
};

struct LinearFlux {
    double speed;
};
struct BurgersFlux {};

/// Local Lax-Friedrichs flux 1/2 (f(uL) + f(uR)) - lambda/2 (uR - uL).
[[nodiscard]] double llf_flux(double u_left, double u_right, LinearFlux flux);
[[nodiscard]] double llf_flux(double u_left, double u_right, BurgersFlux flux);

/// Strong-form DG right-hand side for a flux in conservation form
/// (constant-speed advection or conservative Burgers).
[[nodiscard]] Vector rhs_conservative(const ProblemSpec& problem, const OperatorSet& ops,
                                      const State& state);

/// Advective-form collocation for u_t + a(x) u_x = 0 with a weak inflow
/// penalty at x_L and no penalty at the outflow boundary.
[[nodiscard]] Vector rhs_variable_advection(const ProblemSpec& problem, const OperatorSet& ops,
                                            const State& state);

/// Split form 2/3 (u^2/2)_x + 1/3 u u_x with the conservative scheme's surface terms.
[[nodiscard]] Vector rhs_burgers_skew(const ProblemSpec& problem, const OperatorSet& ops,
                                      const State& state);

/// Dispatches on problem.pde.
[[nodiscard]] Vector rhs(const ProblemSpec& problem, const OperatorSet& ops, const State& state);

/// Discrete integral of u^2/2 over the physical element.
[[nodiscard]] double energy(const ProblemSpec& problem, const OperatorSet& ops, const Vector& u);

/// Largest characteristic speed of the problem at the given state.
[[nodiscard]] double max_wave_speed(const ProblemSpec& problem, const OperatorSet& ops,
                                    const Vector& u);

/// cfl * (smallest physical node spacing) / max wave speed.
[[nodiscard]] double cfl_time_step(const ProblemSpec& problem, const OperatorSet& ops,
                                   const Vector& u, double cfl);

}  // namespace dgfilter
