#pragma once

#include <functional>

#include "dgfilter/spectral_core.hpp"

namespace dgfilter {

/// Parameters of the modal exponential filter
///   sigma_i = 1                                          for i < Nc
///   sigma_i = exp(-alpha ((i + 1 - Nc) / (N + 1 - Nc))^s) for i >= Nc
/// With clip_highest the last mode is removed outright (sigma_N = 0).
struct FilterSpec {
    double alpha = 36.0;
    int order = 16;  // s; 16 "strong", 32 "weak"
    int unaffected_modes = 4;  // Nc
    bool clip_highest = true;

    /// Throws std::invalid_argument for alpha <= 0, odd or non-positive s,
    /// negative Nc, or Nc > N.
    void validate(int degree) const;
};

/// Pluggable per-mode damping factor sigma(i, N); must return values in [0, 1].
using SigmaFunction = std::function<double(int mode, int degree)>;

[[nodiscard]] double sigma_exponential(int mode, int degree, const FilterSpec& spec);

/// Diagonal modal cutoff matrix C = diag(sigma_0, ..., sigma_N).
[[nodiscard]] Matrix cutoff_matrix(int degree, const FilterSpec& spec);

/// Cutoff matrix from an arbitrary filter function. Throws std::invalid_argument
/// if any coefficient leaves [0, 1].
[[nodiscard]] Matrix cutoff_matrix(int degree, const SigmaFunction& sigma);

/// F = V C V^{-1}.
[[nodiscard]] Matrix filter_matrix(const Matrix& vandermonde, const Matrix& vandermonde_inv,
                                   const Matrix& cutoff);

/// G = M^{-1} F^T M for a diagonal mass matrix given by its diagonal.
[[nodiscard]] Matrix auxiliary_filter(const Vector& mass, const Matrix& filter);

/// K = V^T M V, the quadrature Gram matrix of the normalized Legendre basis.
[[nodiscard]] Matrix quadrature_gram(const Matrix& vandermonde, const Vector& mass);

struct GramReport {
    double max_off_diagonal = 0.0;
    double last_diagonal = 0.0;
    double max_pattern_deviation = 0.0;  // vs diag(1, ..., 1, 2 + 1/N)
};

[[nodiscard]] GramReport inspect_gram(const Matrix& gram);

/// Eigenvalues (ascending) of sym(F^T M F - M). The filter is contractive in
/// the mass-matrix norm iff all are <= 0. Throws std::runtime_error if the
/// eigensolver fails.
[[nodiscard]] Vector contractivity_spectrum(const Matrix& filter, const Vector& mass);

struct NormPair {
    double filtered;  // ||F U||_M
    double original;  // ||U||_M
};

[[nodiscard]] NormPair contraction_check(const Matrix& filter, const Vector& mass, const Vector& u);

struct FilterMatrices {
    Matrix C;  // modal cutoff
    Matrix F;  // nodal filter
    Matrix G;  // auxiliary filter M^{-1} F^T M
    Matrix K;  // V^T M V
};

[[nodiscard]] FilterMatrices build_filter_matrices(const OperatorSet& ops, const FilterSpec& spec);
[[nodiscard]] FilterMatrices build_filter_matrices(const OperatorSet& ops, const SigmaFunction& sigma);

struct FilterVerification {
    double gram_max_off_diagonal = 0.0;
    double gram_last_diagonal = 0.0;
    double gram_pattern_deviation = 0.0;
    double auxiliary_mismatch = 0.0;  // ||G - F||_max
    double filter_scale = 0.0;        // ||F||_max
    double max_contractivity_eigenvalue = 0.0;
    double mass_scale = 0.0;          // max(M)

    [[nodiscard]] bool gram_ok() const;
    [[nodiscard]] bool auxiliary_ok() const;
    [[nodiscard]] bool contractive_ok() const;
    [[nodiscard]] bool passed() const { return gram_ok() && auxiliary_ok() && contractive_ok(); }
};

/// Tolerances used by verify_filter.
inline constexpr double kGramTolerance = 1e-10;
inline constexpr double kAuxiliaryRelTolerance = 1e-10;
inline constexpr double kContractivityRelTolerance = 1e-12;

[[nodiscard]] FilterVerification verify_filter(const OperatorSet& ops, const FilterSpec& spec);

}  // namespace dgfilter
