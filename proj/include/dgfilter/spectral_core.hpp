#pragma once

#include <Eigen/Dense>

namespace dgfilter {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Largest polynomial degree accepted by the operator constructors.
inline constexpr int kMaxDegree = 512;

struct NodesWeights {
    Vector nodes;    // ascending, nodes[0] = -1, nodes[N] = +1
    Vector weights;  // positive, sum to 2
};

/// Legendre-Gauss-Lobatto nodes and weights for polynomial degree N >= 1.
///
/// Interior nodes are the roots of P_N', found by Newton iteration seeded with
/// Chebyshev-Gauss-Lobatto points. The rule integrates polynomials of degree
/// up to 2N-1 exactly.
[[nodiscard]] NodesWeights lgl_nodes_weights(int degree);

/// Classical Legendre polynomial P_j(xi).
[[nodiscard]] double legendre(int mode, double xi);

/// Legendre polynomial scaled to unit L2 norm on [-1, 1].
[[nodiscard]] double legendre_normalized(int mode, double xi);

/// Nodal samples of the normalized Legendre polynomial of the given mode.
[[nodiscard]] Vector legendre_normalized_samples(int mode, const Vector& nodes);

/// Collocation derivative matrix D_ij = l_j'(xi_i) built from barycentric
/// weights. Diagonal entries use the negative row sum.
[[nodiscard]] Matrix derivative_matrix(const Vector& nodes);

struct Vandermonde {
    Matrix V;     // V_ij = normalized L_j(xi_i), modal -> nodal
    Matrix Vinv;  // nodal -> modal
};

/// Vandermonde matrix of the normalized Legendre basis and its inverse, the
/// latter from an LU factorization solved against identity columns.
/// Throws std::runtime_error when V is numerically singular.
[[nodiscard]] Vandermonde vandermonde(const Vector& nodes);

/// Discrete LGL inner product U^T M W for a diagonal mass matrix given by
/// its diagonal.
[[nodiscard]] double discrete_inner(const Vector& u, const Vector& w, const Vector& mass);
[[nodiscard]] double discrete_norm(const Vector& u, const Vector& mass);

/// All collocation operators for one polynomial degree. Immutable once built.
class OperatorSet {
public:
    explicit OperatorSet(int degree);

    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] Eigen::Index size() const { return nodes_.size(); }
    [[nodiscard]] const Vector& nodes() const { return nodes_; }
    [[nodiscard]] const Vector& weights() const { return weights_; }
    [[nodiscard]] Matrix mass() const { return weights_.asDiagonal(); }
    [[nodiscard]] Matrix boundary() const;
    [[nodiscard]] const Matrix& derivative() const { return derivative_; }
    [[nodiscard]] const Matrix& vandermonde() const { return vandermonde_; }
    [[nodiscard]] const Matrix& vandermonde_inverse() const { return vandermonde_inv_; }

private:
    int degree_;
    Vector nodes_;
    Vector weights_;
    Matrix derivative_;
    Matrix vandermonde_;
    Matrix vandermonde_inv_;
};

/// max |M D + (M D)^T - B| for a diagonal mass matrix.
[[nodiscard]] double sbp_residual(const Matrix& derivative, const Vector& mass);
[[nodiscard]] double sbp_residual(const OperatorSet& ops);

/// Barycentric weights 1/prod_{k!=j} 2(x_j - x_k), scaled by the interval
/// capacity so that they stay representable up to kMaxDegree.
/// Throws std::invalid_argument on repeated nodes.
[[nodiscard]] Vector barycentric_weights(const Vector& nodes);

/// Evaluates the interpolant of nodal values at xi (second barycentric form).
[[nodiscard]] double interpolate(const Vector& nodes, const Vector& bary_weights,
                                 const Vector& values, double xi);

}  // namespace dgfilter
