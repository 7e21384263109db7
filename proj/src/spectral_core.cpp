#include "dgfilter/spectral_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dgfilter {

namespace {

constexpr double kNewtonTolerance = 1e-15;
constexpr int kNewtonMaxIterations = 100;

struct LegendreEval {
    double p;   // P_n(x)
    double dp;  // P_n'(x)
};

// P_n and P_n' by the three-term recurrence; valid for |x| < 1 in the
// derivative formula, which is all the interior Newton iteration needs.
LegendreEval legendre_with_derivative(int n, double x) {
    double p_prev = 1.0;
    double p = x;
    double dp_prev = 0.0;
    double dp = 1.0;
    for (int k = 1; k < n; ++k) {
        const double p_next = ((2.0 * k + 1.0) * x * p - k * p_prev) / (k + 1.0);
        const double dp_next = dp_prev + (2.0 * k + 1.0) * p;
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
    }
    return {p, dp};
}

void check_degree(int degree) {
    if (degree < 1) {
        throw std::invalid_argument("polynomial degree must be >= 1, got " + std::to_string(degree));
    }
    if (degree > kMaxDegree) {
        throw std::invalid_argument("polynomial degree exceeds " + std::to_string(kMaxDegree));
    }
}

}  // namespace

double legendre(int mode, double xi) {
    if (mode < 0) throw std::invalid_argument("Legendre mode must be >= 0");
    if (mode == 0) return 1.0;
    double p_prev = 1.0;
    double p = xi;
    for (int k = 1; k < mode; ++k) {
        const double p_next = ((2.0 * k + 1.0) * xi * p - k * p_prev) / (k + 1.0);
        p_prev = p;
        p = p_next;
    }
    return p;
}

double legendre_normalized(int mode, double xi) {
    return std::sqrt((2.0 * mode + 1.0) / 2.0) * legendre(mode, xi);
}

Vector legendre_normalized_samples(int mode, const Vector& nodes) {
    Vector out(nodes.size());
    for (Eigen::Index i = 0; i < nodes.size(); ++i) out[i] = legendre_normalized(mode, nodes[i]);
    return out;
}

NodesWeights lgl_nodes_weights(int degree) {
    check_degree(degree);
    const int n = degree;
    Vector x(n + 1);
    Vector w(n + 1);
    x[0] = -1.0;
    x[n] = 1.0;

    // Interior roots of P_N', symmetric about zero; solve the left half and mirror.
    for (int j = 1; j <= n / 2; ++j) {
        double xj = -std::cos(std::numbers::pi * j / n);
        bool converged = false;
        for (int it = 0; it < kNewtonMaxIterations; ++it) {
            const auto [p, dp] = legendre_with_derivative(n, xj);
            // (1 - x^2) P'' = 2x P' - n(n+1) P
            const double d2p = (2.0 * xj * dp - n * (n + 1.0) * p) / (1.0 - xj * xj);
            const double delta = dp / d2p;
            xj -= delta;
            if (std::abs(delta) <= kNewtonTolerance * std::max(1.0, std::abs(xj))) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            throw std::runtime_error("LGL Newton iteration did not converge for N=" + std::to_string(n));
        }
        x[j] = xj;
        x[n - j] = -xj;
    }
    if (n % 2 == 0) x[n / 2] = 0.0;

    for (int j = 0; j <= n; ++j) {
        const double p = legendre(n, x[j]);
        w[j] = 2.0 / (n * (n + 1.0) * p * p);
    }
    return {std::move(x), std::move(w)};
}

Vector barycentric_weights(const Vector& nodes) {
    const Eigen::Index m = nodes.size();
    if (m < 2) throw std::invalid_argument("need at least two nodes");
    const double scale = 4.0 / (nodes.maxCoeff() - nodes.minCoeff());
    Vector bw(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        double prod = 1.0;
        for (Eigen::Index k = 0; k < m; ++k) {
            if (k == j) continue;
            const double diff = nodes[j] - nodes[k];
            if (diff == 0.0) throw std::invalid_argument("repeated interpolation node");
            prod *= scale * diff;
        }
        bw[j] = 1.0 / prod;
    }
    return bw;
}

Matrix derivative_matrix(const Vector& nodes) {
    const Eigen::Index m = nodes.size();
    for (Eigen::Index i = 1; i < m; ++i) {
        if (!(nodes[i] > nodes[i - 1])) {
            throw std::invalid_argument("nodes must be distinct and ascending");
        }
    }
    const Vector bw = barycentric_weights(nodes);
    Matrix d = Matrix::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        double row_sum = 0.0;
        for (Eigen::Index j = 0; j < m; ++j) {
            if (i == j) continue;
            d(i, j) = (bw[j] / bw[i]) / (nodes[i] - nodes[j]);
            row_sum += d(i, j);
        }
        d(i, i) = -row_sum;
    }
    return d;
}

Vandermonde vandermonde(const Vector& nodes) {
    const Eigen::Index m = nodes.size();
    Matrix v(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            v(i, j) = legendre_normalized(static_cast<int>(j), nodes[i]);
        }
    }
    Eigen::PartialPivLU<Matrix> lu(v);
    // The rcond estimate is unreliable for an exactly zero pivot, so check the pivots too.
    const Vector pivots = lu.matrixLU().diagonal().cwiseAbs();
    const double rcond = std::min(lu.rcond(), pivots.minCoeff() / pivots.maxCoeff());
    if (!(rcond > 1e3 * std::numeric_limits<double>::epsilon())) {
        throw std::runtime_error("Vandermonde matrix is numerically singular (rcond estimate " +
                                 std::to_string(rcond) + ")");
    }
    Matrix vinv = lu.solve(Matrix::Identity(m, m));
    return {std::move(v), std::move(vinv)};
}

double discrete_inner(const Vector& u, const Vector& w, const Vector& mass) {
    if (u.size() != w.size() || u.size() != mass.size()) {
        throw std::invalid_argument("discrete_inner: length mismatch");
    }
    return (u.array() * mass.array() * w.array()).sum();
}

double discrete_norm(const Vector& u, const Vector& mass) {
    return std::sqrt(discrete_inner(u, u, mass));
}

OperatorSet::OperatorSet(int degree) : degree_(degree) {
    auto [x, w] = lgl_nodes_weights(degree);
    nodes_ = std::move(x);
    weights_ = std::move(w);
    derivative_ = derivative_matrix(nodes_);
    auto [v, vinv] = dgfilter::vandermonde(nodes_);
    vandermonde_ = std::move(v);
    vandermonde_inv_ = std::move(vinv);
}

Matrix OperatorSet::boundary() const {
    Matrix b = Matrix::Zero(size(), size());
    b(0, 0) = -1.0;
    b(degree_, degree_) = 1.0;
    return b;
}

double sbp_residual(const Matrix& derivative, const Vector& mass) {
    const Eigen::Index m = mass.size();
    const Matrix q = mass.asDiagonal() * derivative;
    Matrix r = q + q.transpose();
    r(0, 0) += 1.0;
    r(m - 1, m - 1) -= 1.0;
    return r.cwiseAbs().maxCoeff();
}

double sbp_residual(const OperatorSet& ops) {
    return sbp_residual(ops.derivative(), ops.weights());
}

double interpolate(const Vector& nodes, const Vector& bary_weights, const Vector& values,
                   double xi) {
    double numer = 0.0;
    double denom = 0.0;
    for (Eigen::Index j = 0; j < nodes.size(); ++j) {
        const double diff = xi - nodes[j];
        if (diff == 0.0) return values[j];
        const double term = bary_weights[j] / diff;
        numer += term * values[j];
        denom += term;
    }
    return numer / denom;
}

}  // namespace dgfilter
