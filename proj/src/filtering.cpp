#include "dgfilter/filtering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dgfilter {

void FilterSpec::validate(int degree) const {
    if (!(alpha > 0.0)) throw std::invalid_argument("filter alpha must be positive");
    if (order <= 0 || order % 2 != 0) {
        throw std::invalid_argument("filter order s must be a positive even integer, got " +
                                    std::to_string(order));
    }
    if (unaffected_modes < 0) throw std::invalid_argument("Nc must be non-negative");
    if (unaffected_modes > degree) {
        throw std::invalid_argument("Nc = " + std::to_string(unaffected_modes) +
                                    " exceeds the polynomial degree " + std::to_string(degree));
    }
}

double sigma_exponential(int mode, int degree, const FilterSpec& spec) {
    spec.validate(degree);
    if (mode < 0 || mode > degree) throw std::invalid_argument("filter mode index out of range");
    if (spec.clip_highest && mode == degree) return 0.0;
    if (mode < spec.unaffected_modes) return 1.0;
    const double ratio = static_cast<double>(mode + 1 - spec.unaffected_modes) /
                         static_cast<double>(degree + 1 - spec.unaffected_modes);
    return std::exp(-spec.alpha * std::pow(ratio, spec.order));
}

Matrix cutoff_matrix(int degree, const FilterSpec& spec) {
    if (spec.unaffected_modes > degree) {
        // Every mode lies below the cutoff; only alpha and s are checked.
        FilterSpec base = spec;
        base.unaffected_modes = 0;
        base.validate(degree);
        return Matrix::Identity(degree + 1, degree + 1);
    }
    spec.validate(degree);
    return cutoff_matrix(degree, [&spec](int i, int n) { return sigma_exponential(i, n, spec); });
}

Matrix cutoff_matrix(int degree, const SigmaFunction& sigma) {
    Vector diag(degree + 1);
    for (int i = 0; i <= degree; ++i) {
        const double s = sigma(i, degree);
        if (!(s >= 0.0 && s <= 1.0)) {
            throw std::invalid_argument("filter coefficient sigma_" + std::to_string(i) +
                                        " outside [0, 1]");
        }
        diag[i] = s;
    }
    return diag.asDiagonal();
}

Matrix filter_matrix(const Matrix& vandermonde, const Matrix& vandermonde_inv, const Matrix& cutoff) {
    return vandermonde * cutoff * vandermonde_inv;
}

Matrix auxiliary_filter(const Vector& mass, const Matrix& filter) {
    return mass.cwiseInverse().asDiagonal() * filter.transpose() * mass.asDiagonal();
}

Matrix quadrature_gram(const Matrix& vandermonde, const Vector& mass) {
    return vandermonde.transpose() * mass.asDiagonal() * vandermonde;
}

GramReport inspect_gram(const Matrix& gram) {
    const Eigen::Index m = gram.rows();
    const double degree = static_cast<double>(m - 1);
    GramReport report;
    report.last_diagonal = gram(m - 1, m - 1);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            double expected = 0.0;
            if (i == j) expected = (i == m - 1) ? 2.0 + 1.0 / degree : 1.0;
            const double dev = std::abs(gram(i, j) - expected);
            report.max_pattern_deviation = std::max(report.max_pattern_deviation, dev);
            if (i != j) report.max_off_diagonal = std::max(report.max_off_diagonal, std::abs(gram(i, j)));
        }
    }
    return report;
}

Vector contractivity_spectrum(const Matrix& filter, const Vector& mass) {
    const Matrix product = filter.transpose() * mass.asDiagonal() * filter;
    Matrix sym = 0.5 * (product + product.transpose());
    sym.diagonal() -= mass;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("symmetric eigensolver failed to converge");
    }
    return solver.eigenvalues();
}

NormPair contraction_check(const Matrix& filter, const Vector& mass, const Vector& u) {
    return {discrete_norm(filter * u, mass), discrete_norm(u, mass)};
}

namespace {

FilterMatrices assemble(const OperatorSet& ops, Matrix cutoff) {
    FilterMatrices fm;
    fm.C = std::move(cutoff);
    fm.F = filter_matrix(ops.vandermonde(), ops.vandermonde_inverse(), fm.C);
    fm.G = auxiliary_filter(ops.weights(), fm.F);
    fm.K = quadrature_gram(ops.vandermonde(), ops.weights());
    return fm;
}

}  // namespace

FilterMatrices build_filter_matrices(const OperatorSet& ops, const FilterSpec& spec) {
    return assemble(ops, cutoff_matrix(ops.degree(), spec));
}

FilterMatrices build_filter_matrices(const OperatorSet& ops, const SigmaFunction& sigma) {
    return assemble(ops, cutoff_matrix(ops.degree(), sigma));
}

bool FilterVerification::gram_ok() const { return gram_pattern_deviation <= kGramTolerance; }

bool FilterVerification::auxiliary_ok() const {
    return auxiliary_mismatch <= kAuxiliaryRelTolerance * filter_scale;
}

bool FilterVerification::contractive_ok() const {
    return max_contractivity_eigenvalue <= kContractivityRelTolerance * mass_scale;
}

FilterVerification verify_filter(const OperatorSet& ops, const FilterSpec& spec) {
    const FilterMatrices fm = build_filter_matrices(ops, spec);
    const GramReport gram = inspect_gram(fm.K);
    FilterVerification out;
    out.gram_max_off_diagonal = gram.max_off_diagonal;
    out.gram_last_diagonal = gram.last_diagonal;
    out.gram_pattern_deviation = gram.max_pattern_deviation;
    out.auxiliary_mismatch = (fm.G - fm.F).cwiseAbs().maxCoeff();
    out.filter_scale = fm.F.cwiseAbs().maxCoeff();
    out.max_contractivity_eigenvalue = contractivity_spectrum(fm.F, ops.weights()).maxCoeff();
    out.mass_scale = ops.weights().maxCoeff();
    return out;
}

}  // namespace dgfilter
