#include "dgfilter/dg_solver.hpp"

#include <algorithm>
#include <cmath>

namespace dgfilter {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_finite(const State& state) {
    if (!state.values.allFinite()) throw NonFiniteState(state.time);
}

struct FaceFluxes {
    double left;
    double right;
};

// Numerical fluxes at x_L and x_R. Periodic faces pair (U_N, U_0); an inflow
// boundary uses g(t) as the exterior state on the left and the interior trace
// on the right.
template <class Flux>
FaceFluxes face_fluxes(const ProblemSpec& problem, const State& state, Flux flux) {
    const Vector& u = state.values;
    const Eigen::Index last = u.size() - 1;
    return std::visit(
        Overloaded{
            [&](const Periodic&) {
                const double f = llf_flux(u[last], u[0], flux);
                return FaceFluxes{f, f};
            },
            [&](const InflowDirichlet& inflow) {
                return FaceFluxes{llf_flux(inflow.value(state.time), u[0], flux),
                                  llf_flux(u[last], u[last], flux)};
            },
        },
        problem.bc);
}

// Adds -(2/dx) M^{-1} B (F* - F) to du.
void add_surface_terms(const OperatorSet& ops, double jacobian_inv, const FaceFluxes& fstar,
                       double flux_first, double flux_last, Vector& du) {
    const Eigen::Index last = du.size() - 1;
    du[0] += jacobian_inv * (fstar.left - flux_first) / ops.weights()[0];
    du[last] -= jacobian_inv * (fstar.right - flux_last) / ops.weights()[last];
}

}  // namespace

Vector ProblemSpec::physical_nodes(const OperatorSet& ops) const {
    Vector x(ops.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = to_physical(ops.nodes()[i]);
    return x;
}

void ProblemSpec::validate() const {
    if (!(x_right > x_left)) throw std::invalid_argument("domain must satisfy x_left < x_right");
    const bool periodic = std::holds_alternative<Periodic>(bc);
    if (const auto* inflow = std::get_if<InflowDirichlet>(&bc); inflow && !inflow->value) {
        throw std::invalid_argument("inflow boundary condition needs a data function");
    }
    std::visit(Overloaded{
                   [&](const AdvectionConstant& adv) {
                       if (periodic) throw std::invalid_argument("periodic boundaries are for Burgers only");
                       if (adv.speed < 0.0) {
                           throw std::invalid_argument("inflow boundary requires nonnegative speed at x_left");
                       }
                   },
                   [&](const AdvectionVariable& adv) {
                       if (periodic) throw std::invalid_argument("periodic boundaries are for Burgers only");
                       if (!adv.speed) throw std::invalid_argument("variable wave speed function missing");
                       if (adv.speed(x_left) < 0.0) {
                           throw std::invalid_argument("inflow boundary requires a(x_left) >= 0");
                       }
                   },
                   [](const BurgersConservative&) {},
                   [](const BurgersSkew&) {},
               },
               pde);
}

double llf_flux(double u_left, double u_right, LinearFlux flux) {
    const double lambda = std::abs(flux.speed);
    return 0.5 * flux.speed * (u_left + u_right) - 0.5 * lambda * (u_right - u_left);
}

double llf_flux(double u_left, double u_right, BurgersFlux) {
    const double lambda = std::max(std::abs(u_left), std::abs(u_right));
    return 0.25 * (u_left * u_left + u_right * u_right) - 0.5 * lambda * (u_right - u_left);
}

Vector rhs_conservative(const ProblemSpec& problem, const OperatorSet& ops, const State& state) {
    require_finite(state);
    const Vector& u = state.values;
    const double jac_inv = 2.0 / problem.dx();
    const Eigen::Index last = u.size() - 1;

    return std::visit(
        Overloaded{
            [&](const AdvectionConstant& adv) -> Vector {
                const Vector f = adv.speed * u;
                Vector du = -jac_inv * (ops.derivative() * f);
                const auto fstar = face_fluxes(problem, state, LinearFlux{adv.speed});
                add_surface_terms(ops, jac_inv, fstar, f[0], f[last], du);
                return du;
            },
            [&](const BurgersConservative&) -> Vector {
                const Vector f = 0.5 * u.cwiseProduct(u);
                Vector du = -jac_inv * (ops.derivative() * f);
                const auto fstar = face_fluxes(problem, state, BurgersFlux{});
                add_surface_terms(ops, jac_inv, fstar, f[0], f[last], du);
                return du;
            },
            [](const auto&) -> Vector {
                throw std::invalid_argument("rhs_conservative: PDE is not in conservation form");
            },
        },
        problem.pde);
}

Vector rhs_variable_advection(const ProblemSpec& problem, const OperatorSet& ops,
                              const State& state) {
    const auto* adv = std::get_if<AdvectionVariable>(&problem.pde);
    if (adv == nullptr) throw std::invalid_argument("rhs_variable_advection: wrong PDE");
    const auto* inflow = std::get_if<InflowDirichlet>(&problem.bc);
    if (inflow == nullptr) throw std::invalid_argument("variable advection needs inflow data");
    const double a_left = adv->speed(problem.x_left);
    if (a_left < 0.0) throw std::invalid_argument("a(x_left) < 0: left boundary is not inflow");
    require_finite(state);

    const Vector& u = state.values;
    const double jac_inv = 2.0 / problem.dx();
    const Vector du_dxi = ops.derivative() * u;
    Vector du(u.size());
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        du[i] = -adv->speed(problem.to_physical(ops.nodes()[i])) * jac_inv * du_dxi[i];
    }
    du[0] -= jac_inv * a_left * (u[0] - inflow->value(state.time)) / ops.weights()[0];
    return du;
}

Vector rhs_burgers_skew(const ProblemSpec& problem, const OperatorSet& ops, const State& state) {
    if (!std::holds_alternative<BurgersSkew>(problem.pde)) {
        throw std::invalid_argument("rhs_burgers_skew: wrong PDE");
    }
    require_finite(state);
    const Vector& u = state.values;
    const double jac_inv = 2.0 / problem.dx();
    const Eigen::Index last = u.size() - 1;

    const Vector f = 0.5 * u.cwiseProduct(u);
    const Vector volume = (2.0 / 3.0) * (ops.derivative() * f) +
                          (1.0 / 3.0) * u.cwiseProduct(ops.derivative() * u);
    Vector du = -jac_inv * volume;
    const auto fstar = face_fluxes(problem, state, BurgersFlux{});
    add_surface_terms(ops, jac_inv, fstar, f[0], f[last], du);
    return du;
}

Vector rhs(const ProblemSpec& problem, const OperatorSet& ops, const State& state) {
    return std::visit(Overloaded{
                          [&](const AdvectionVariable&) { return rhs_variable_advection(problem, ops, state); },
                          [&](const BurgersSkew&) { return rhs_burgers_skew(problem, ops, state); },
                          [&](const auto&) { return rhs_conservative(problem, ops, state); },
                      },
                      problem.pde);
}

double energy(const ProblemSpec& problem, const OperatorSet& ops, const Vector& u) {
    return 0.5 * problem.dx() * 0.5 * discrete_inner(u, u, ops.weights());
}

double max_wave_speed(const ProblemSpec& problem, const OperatorSet& ops, const Vector& u) {
    return std::visit(Overloaded{
                          [](const AdvectionConstant& adv) { return std::abs(adv.speed); },
                          [&](const AdvectionVariable& adv) {
                              double s = 0.0;
                              for (Eigen::Index i = 0; i < ops.size(); ++i) {
                                  s = std::max(s, std::abs(adv.speed(problem.to_physical(ops.nodes()[i]))));
                              }
                              return s;
                          },
                          [&](const auto&) { return u.cwiseAbs().maxCoeff(); },
                      },
                      problem.pde);
}

double cfl_time_step(const ProblemSpec& problem, const OperatorSet& ops, const Vector& u, double cfl) {
    const Vector& xi = ops.nodes();
    double min_spacing = xi[1] - xi[0];
    for (Eigen::Index i = 1; i + 1 < xi.size(); ++i) min_spacing = std::min(min_spacing, xi[i + 1] - xi[i]);
    min_spacing *= 0.5 * problem.dx();
    const double speed = max_wave_speed(problem, ops, u);
    if (!(speed > 0.0) || !std::isfinite(speed)) {
        throw std::domain_error("cannot derive a CFL step from a zero or non-finite wave speed");
    }
    return cfl * min_spacing / speed;
}

}  // namespace dgfilter
