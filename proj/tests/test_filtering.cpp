#include <doctest.h>

#include <cmath>
#include <random>

#include "dgfilter/filtering.hpp"

using namespace dgfilter;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// Composite trapezoid weights on the LGL nodes: a diagonal positive mass matrix
// that is not the LGL quadrature.
Vector trapezoid_weights(const Vector& x) {
    const Eigen::Index n = x.size() - 1;
    Vector w(n + 1);
    for (Eigen::Index i = 0; i <= n; ++i) {
        const double left = i > 0 ? x[i] - x[i - 1] : 0.0;
        const double right = i < n ? x[i + 1] - x[i] : 0.0;
        w[i] = 0.5 * (left + right);
    }
    return w;
}

FilterSpec spec_with(int s, bool clip = true) {
    FilterSpec spec;
    spec.order = s;
    spec.clip_highest = clip;
    return spec;
}

}  // namespace

TEST_CASE("FilterSpec validation") {
    FilterSpec spec;
    CHECK_NOTHROW(spec.validate(8));
    spec.order = 15;
    CHECK_THROWS_AS(spec.validate(8), std::invalid_argument);
    spec.order = 16;
    spec.alpha = 0.0;
    CHECK_THROWS_AS(spec.validate(8), std::invalid_argument);
    spec.alpha = 36.0;
    spec.unaffected_modes = 9;
    CHECK_THROWS_AS(spec.validate(8), std::invalid_argument);
    CHECK_THROWS_AS((void)sigma_exponential(0, 8, spec), std::invalid_argument);
}

TEST_CASE("exponential filter coefficients") {
    const FilterSpec clip;
    const FilterSpec no_clip = spec_with(16, false);
    CHECK(sigma_exponential(2, 10, clip) == 1.0);
    CHECK(sigma_exponential(3, 10, clip) == 1.0);
    CHECK(sigma_exponential(10, 10, clip) == 0.0);
    // Ratio (N + 1 - Nc)/(N + 1 - Nc) = 1 at i = N.
    CHECK(sigma_exponential(10, 10, no_clip) == doctest::Approx(2.3195228302435691e-16).epsilon(1e-12));
    CHECK(sigma_exponential(10, 10, no_clip) == std::exp(-36.0));
}

TEST_CASE("cutoff matrix") {
    SUBCASE("all modes unaffected") {
        FilterSpec spec = spec_with(16, false);
        spec.unaffected_modes = 8;
        CHECK(max_abs(cutoff_matrix(7, spec) - Matrix::Identity(8, 8)) == 0.0);
    }
    SUBCASE("N = 7, Nc = 4, s = 16, clipped") {
        const Matrix c = cutoff_matrix(7, FilterSpec{});
        Vector expected(8);
        expected << 1, 1, 1, 1, std::exp(-36.0 * std::pow(1.0 / 4.0, 16)), std::exp(-36.0 * std::pow(2.0 / 4.0, 16)),
            std::exp(-36.0 * std::pow(3.0 / 4.0, 16)), 0.0;
        CHECK(max_abs(c - Matrix(expected.asDiagonal())) < 1e-15);
        CHECK(c(7, 7) == 0.0);
    }
    SUBCASE("coefficients stay inside [0, 1]") {
        for (int n : {4, 9, 30, 64}) {
            for (int s : {2, 16, 32}) {
                for (int nc : {0, 1, 4}) {
                    for (bool clipped : {true, false}) {
                        FilterSpec spec = spec_with(s, clipped);
                        spec.unaffected_modes = nc;
                        const Matrix c = cutoff_matrix(n, spec);
                        CHECK(c.diagonal().minCoeff() >= 0.0);
                        CHECK(c.diagonal().maxCoeff() <= 1.0);
                        CHECK(max_abs(c - Matrix(c.diagonal().asDiagonal())) == 0.0);
                    }
                }
            }
        }
    }
    SUBCASE("Nc = 0 damps every mode including the mean") {
        FilterSpec spec = spec_with(2, false);
        spec.unaffected_modes = 0;
        const Matrix c = cutoff_matrix(4, spec);
        CHECK(c(0, 0) == doctest::Approx(std::exp(-36.0 / 25.0)).epsilon(1e-15));
        CHECK(c(4, 4) == doctest::Approx(std::exp(-36.0)).epsilon(1e-15));
    }
    SUBCASE("pluggable filter function is checked") {
        CHECK_THROWS_AS((void)cutoff_matrix(5, [](int i, int) { return i == 0 ? 1.0 : 1.5; }), std::invalid_argument);
        CHECK_THROWS_AS((void)cutoff_matrix(5, [](int i, int) { return i == 2 ? -0.1 : 1.0; }), std::invalid_argument);
        // Sharp spectral cutoff that keeps the lower half.
        const Matrix c = cutoff_matrix(5, [](int i, int n) { return 2 * i <= n ? 1.0 : 0.0; });
        CHECK(c.diagonal().sum() == 3.0);
    }
}

TEST_CASE("filter matrix eigenstructure") {
    const OperatorSet ops(12);
    const Matrix eye = Matrix::Identity(13, 13);
    CHECK(max_abs(filter_matrix(ops.vandermonde(), ops.vandermonde_inverse(), eye) - eye) < 1e-12);

    const FilterMatrices fm = build_filter_matrices(ops, FilterSpec{});
    for (int j = 0; j <= 12; ++j) {
        const Vector phi = legendre_normalized_samples(j, ops.nodes());
        CHECK((fm.F * phi - fm.C(j, j) * phi).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK(max_abs(ops.vandermonde_inverse() * fm.F * ops.vandermonde() - fm.C) < 1e-10);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Vector u(13);
    for (auto& v : u) v = dist(rng);
    const Matrix c2 = fm.C * fm.C;
    const Vector twice = ops.vandermonde() * c2 * ops.vandermonde_inverse() * u;
    CHECK((fm.F * (fm.F * u) - twice).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("low modes untouched") {
    for (int n : {8, 24, 64}) {
        const OperatorSet ops(n);
        const FilterMatrices fm = build_filter_matrices(ops, FilterSpec{});
        for (int j = 0; j < 4; ++j) {
            const Vector phi = legendre_normalized_samples(j, ops.nodes());
            CHECK((fm.F * phi - phi).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("auxiliary filter coincides with the filter on LGL quadrature") {
    const OperatorSet small(5);
    const Matrix eye = Matrix::Identity(6, 6);
    CHECK(max_abs(auxiliary_filter(small.weights(), eye) - eye) == 0.0);

    for (int n = 4; n <= 64; n += 6) {
        for (int s : {16, 32}) {
            const OperatorSet ops(n);
            const FilterMatrices fm = build_filter_matrices(ops, spec_with(s));
            CHECK(max_abs(fm.G - fm.F) <= 1e-10 * max_abs(fm.F));
        }
    }

    // Negative control: trapezoid weights break the identity.
    const OperatorSet ops(16);
    const FilterMatrices fm = build_filter_matrices(ops, FilterSpec{});
    const Vector trap = trapezoid_weights(ops.nodes());
    CHECK(max_abs(auxiliary_filter(trap, fm.F) - fm.F) > 1e-2);
}

TEST_CASE("quadrature Gram matrix") {
    const OperatorSet ops4(4);
    const Matrix k4 = quadrature_gram(ops4.vandermonde(), ops4.weights());
    Vector d(5);
    d << 1, 1, 1, 1, 2.25;
    CHECK(max_abs(k4 - Matrix(d.asDiagonal())) < 1e-13);

    const OperatorSet ops16(16);
    const GramReport r16 = inspect_gram(quadrature_gram(ops16.vandermonde(), ops16.weights()));
    CHECK(std::abs(r16.last_diagonal - 2.0625) <= 1e-12);

    for (int n = 1; n <= 64; ++n) {
        const OperatorSet ops(n);
        const GramReport r = inspect_gram(quadrature_gram(ops.vandermonde(), ops.weights()));
        CHECK(r.max_off_diagonal <= 1e-12);
        CHECK(r.max_pattern_deviation <= 1e-10);
    }
}

TEST_CASE("contractivity spectrum") {
    SUBCASE("identity filter gives a zero spectrum for any diagonal mass") {
        const OperatorSet ops(10);
        const Matrix eye = Matrix::Identity(11, 11);
        CHECK(contractivity_spectrum(eye, ops.weights()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(contractivity_spectrum(eye, trapezoid_weights(ops.nodes())).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("clipped filter is contractive") {
        for (int n = 4; n <= 64; ++n) {
            for (int s : {16, 32}) {
                const OperatorSet ops(n);
                const FilterMatrices fm = build_filter_matrices(ops, spec_with(s));
                const Vector ev = contractivity_spectrum(fm.F, ops.weights());
                CHECK(ev.size() == n + 1);
                CHECK(ev.maxCoeff() <= 1e-12 * ops.weights().maxCoeff());
                for (Eigen::Index i = 1; i < ev.size(); ++i) CHECK(ev[i] >= ev[i - 1]);
            }
        }
    }
    SUBCASE("unclipped exponential filter is contractive to roundoff") {
        for (int n : {4, 16, 33, 64}) {
            const OperatorSet ops(n);
            const FilterMatrices fm = build_filter_matrices(ops, spec_with(16, false));
            CHECK(contractivity_spectrum(fm.F, ops.weights()).maxCoeff() <= 1e-12 * ops.weights().maxCoeff());
        }
    }
    SUBCASE("mismatched mass matrix makes the condition indefinite") {
        const OperatorSet ops(16);
        const FilterMatrices fm = build_filter_matrices(ops, FilterSpec{});
        Vector halved = ops.weights();
        halved[16] *= 0.5;
        const Vector ev = contractivity_spectrum(fm.F, halved);
        CHECK(ev.maxCoeff() > 1e-6);
        CHECK(ev.minCoeff() < 0.0);
        CHECK(contractivity_spectrum(fm.F, trapezoid_weights(ops.nodes())).maxCoeff() > 1e-6);
    }
}

TEST_CASE("contraction of discrete norms") {
    const int n = 24;
    const OperatorSet ops(n);
    const FilterMatrices fm = build_filter_matrices(ops, FilterSpec{});

    const NormPair p0 = contraction_check(fm.F, ops.weights(), legendre_normalized_samples(0, ops.nodes()));
    CHECK(p0.filtered == doctest::Approx(p0.original).epsilon(1e-13));

    const NormPair pn = contraction_check(fm.F, ops.weights(), legendre_normalized_samples(n, ops.nodes()));
    CHECK(pn.filtered < 1e-13);
    CHECK(pn.original == doctest::Approx(std::sqrt(2.0 + 1.0 / n)).epsilon(1e-12));

    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        Vector u(n + 1);
        for (auto& v : u) v = dist(rng);
        const NormPair p = contraction_check(fm.F, ops.weights(), u);
        CHECK(p.filtered <= p.original * (1.0 + 1e-12));
    }
}

TEST_CASE("verify_filter summary") {
    const OperatorSet ops(24);
    const FilterVerification v = verify_filter(ops, FilterSpec{});
    CHECK(v.passed());
    CHECK(v.gram_last_diagonal == doctest::Approx(2.0 + 1.0 / 24).epsilon(1e-12));
    CHECK(verify_filter(ops, spec_with(32, false)).passed());
}
