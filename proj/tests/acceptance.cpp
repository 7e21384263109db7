// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "dgfilter/experiments.hpp"
#include "dgfilter/filtering.hpp"
#include "dgfilter/spectral_core.hpp"

using namespace dgfilter;
namespace ex = dgfilter::experiments;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail, double seconds) {
    fmt::print("[{}] {}. {}: {} ({:.2f} s)\n", ok ? "PASS" : "FAIL", id, title, detail, seconds);
    std::fflush(stdout);
    if (!ok) ++failures;
}

template <class Fn>
void criterion(int id, const std::string& title, Fn&& body) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = fmt::format("exception: {}", e.what());
    }
    report(id, title, ok, detail, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
}

FilterSpec with_order(int s) {
    FilterSpec spec;
    spec.order = s;
    return spec;
}

Vector trapezoid_weights(const Vector& x) {
    const Eigen::Index n = x.size() - 1;
    Vector w(n + 1);
    for (Eigen::Index i = 0; i <= n; ++i) {
        w[i] = 0.5 * ((i > 0 ? x[i] - x[i - 1] : 0.0) + (i < n ? x[i + 1] - x[i] : 0.0));
    }
    return w;
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

}  // namespace

int main() {
    criterion(1, "operator identities, N = 1..64", [](std::string& detail) {
        double worst_sbp = 0.0, worst_gram = 0.0;
        for (int n = 1; n <= 64; ++n) {
            const OperatorSet ops(n);
            worst_sbp = std::max(worst_sbp, sbp_residual(ops));
            worst_gram = std::max(
                worst_gram, inspect_gram(quadrature_gram(ops.vandermonde(), ops.weights())).max_pattern_deviation);
        }
        detail = fmt::format("max SBP residual {:.2e} (<= 1e-12), max Gram deviation {:.2e} (<= 1e-10)", worst_sbp,
                             worst_gram);
        return worst_sbp <= 1e-12 && worst_gram <= 1e-10;
    });

    criterion(2, "auxiliary filter equals F, N = 4..64, s in {16, 32}", [](std::string& detail) {
        double worst = 0.0;
        for (int n = 4; n <= 64; ++n) {
            const OperatorSet ops(n);
            for (int s : {16, 32}) {
                const FilterMatrices fm = build_filter_matrices(ops, with_order(s));
                worst = std::max(worst, (fm.G - fm.F).cwiseAbs().maxCoeff() / fm.F.cwiseAbs().maxCoeff());
            }
        }
        detail = fmt::format("max |G - F| / |F| {:.2e} (<= 1e-10)", worst);
        return worst <= 1e-10;
    });

    criterion(3, "filter contractivity", [](std::string& detail) {
        double worst = -1.0;
        for (int n = 4; n <= 64; ++n) {
            const OperatorSet ops(n);
            for (int s : {16, 32}) {
                const FilterMatrices fm = build_filter_matrices(ops, with_order(s));
                worst = std::max(worst, contractivity_spectrum(fm.F, ops.weights()).maxCoeff() / ops.weights().maxCoeff());
            }
        }
        std::mt19937 rng(20240607);
        std::normal_distribution<double> dist(0.0, 1.0);
        double worst_ratio = 0.0;
        int states = 0;
        for (int n : {8, 24, 64}) {
            const OperatorSet ops(n);
            const FilterMatrices fm = build_filter_matrices(ops, FilterSpec{});
            for (int trial = 0; trial < 1000; ++trial, ++states) {
                Vector u(n + 1);
                for (auto& v : u) v = dist(rng);
                const NormPair p = contraction_check(fm.F, ops.weights(), u);
                worst_ratio = std::max(worst_ratio, p.filtered / p.original);
            }
        }
        detail = fmt::format("max lambda / max(M) {:.2e} (<= 1e-12); max norm ratio over {} states {:.15f} (<= 1 + 1e-12)",
                             worst, states, worst_ratio);
        return worst <= 1e-12 && worst_ratio <= 1.0 + 1e-12;
    });

    criterion(4, "spectral convergence of the filtered pulse", [](std::string& detail) {
        const std::vector<int> degrees{7, 15, 23, 31};
        const std::vector<int> plateau_degrees{55, 63};
        const auto coarse = ex::run_convergence(degrees, 1e-3, FilterSpec{});
        const auto plateau_coarse = ex::run_convergence(plateau_degrees, 1e-3, FilterSpec{});
        const auto plateau_fine = ex::run_convergence(plateau_degrees, 5e-4, FilterSpec{});
        auto plateau = [](const ex::ConvergenceSweep& s) {
            return std::max(s.points[0].error, s.points[1].error);
        };
        const double p1 = plateau(plateau_coarse);
        const double p2 = plateau(plateau_fine);

        bool decay_ok = true;
        std::string errs;
        for (std::size_t k = 0; k < coarse.points.size(); ++k) {
            errs += fmt::format("{}{:.2e}", k ? ", " : "", coarse.points[k].error);
            if (k == 0) continue;
            const double prev = coarse.points[k - 1].error;
            const double cur = coarse.points[k].error;
            if (prev > 10.0 * p1) {
                decay_ok = decay_ok && cur < prev && (cur <= prev / 10.0 || cur <= 10.0 * p1);
            }
        }
        const double ratio = p1 / p2;
        detail = fmt::format("errors N=7,15,23,31 at dt=1e-3: {}; plateau {:.2e} -> {:.2e} on halving dt, ratio {:.2f} "
                             "(in [6, 10])",
                             errs, p1, p2, ratio);
        return decay_ok && ratio >= 6.0 && ratio <= 10.0;
    });

    criterion(5, "variable wave speed, N = 256, dt = 1/2000, T = 4", [](std::string& detail) {
        const auto filtered = ex::run_varspeed(256, 1.0 / 2000.0, true, 4.0);
        const auto unfiltered = ex::run_varspeed(256, 1.0 / 2000.0, false, 4.0);
        detail = fmt::format("TV {:.3f} vs {:.3f}, Linf error {:.3e} vs {:.3e} (filtered vs unfiltered)",
                             filtered.total_variation, unfiltered.total_variation, filtered.error, unfiltered.error);
        return !filtered.crashed && filtered.total_variation < unfiltered.total_variation &&
               filtered.error < unfiltered.error;
    });

    ex::BurgersRun skew_fil;
    criterion(6, "Burgers energy study, N = 128, T = 2.25, 16 filter applications", [&](std::string& detail) {
        const auto cons_unf = ex::run_burgers(ex::BurgersVariant::ConsUnfiltered);
        const auto cons_fil = ex::run_burgers(ex::BurgersVariant::ConsFiltered);
        const auto skew_unf = ex::run_burgers(ex::BurgersVariant::SkewUnfiltered);
        skew_fil = ex::run_burgers(ex::BurgersVariant::SkewFiltered);
        const double a = max_of(skew_unf.normalized_energy);
        const bool ok_a = !skew_unf.crashed && a <= 1.0 + 1e-8;
        const bool ok_b = cons_unf.crashed && *cons_unf.crash_time > 1.5 && *cons_unf.crash_time < 2.25;
        const double c = max_of(cons_fil.normalized_energy);
        const bool ok_c = !cons_fil.crashed && std::isfinite(c);
        const double d_fil = skew_fil.normalized_energy.back();
        const double d_unf = skew_unf.normalized_energy.back();
        const bool ok_d = !skew_fil.crashed && d_fil <= d_unf;
        double worst_jump = -1.0;
        std::size_t jumps = 0;
        for (const ex::BurgersRun* run : std::initializer_list<const ex::BurgersRun*>{&cons_fil, &skew_fil}) {
            for (const auto& j : run->filter_jumps) {
                worst_jump = std::max(worst_jump, j.after / j.before - 1.0);
                ++jumps;
            }
        }
        const bool ok_e = jumps == 32 && worst_jump <= 1e-14;
        detail = fmt::format(
            "(a) {} max E {:.12f}; (b) {} crash at t = {}; (c) {} max E {:.6f}; (d) {} final E {:.6f} <= {:.6f}; "
            "(e) {} {} filter instants, max relative change {:.2e}",
            ok_a ? "ok" : "FAIL", a, ok_b ? "ok" : "FAIL",
            cons_unf.crash_time ? fmt::format("{:.4f}", *cons_unf.crash_time) : std::string("none"),
            ok_c ? "ok" : "FAIL", c, ok_d ? "ok" : "FAIL", d_fil, d_unf, ok_e ? "ok" : "FAIL", jumps, worst_jump);
        return ok_a && ok_b && ok_c && ok_d && ok_e;
    });

    criterion(7, "filtered skew DG vs 10000-cell finite-volume reference", [&](std::string& detail) {
        if (skew_fil.u.size() == 0) skew_fil = ex::run_burgers(ex::BurgersVariant::SkewFiltered);
        const ex::FvSolution fv = ex::run_fv_reference(ex::FvConfig{});
        const OperatorSet ops(skew_fil.degree);
        const auto cmp =
            ex::compare_with_reference(ops, ex::burgers_problem(skew_fil.variant), skew_fil.u, fv, 0.1);
        detail = fmt::format("shock at {:.4f} vs {:.4f}, offset {:.1f} cells (<= 5); smooth-region L1 {:.2e} (<= 2e-2)",
                             cmp.dg_shock, cmp.fv_shock, cmp.shock_offset_cells, cmp.smooth_l1);
        return !skew_fil.crashed && cmp.shock_offset_cells <= 5.0 && cmp.smooth_l1 <= 2e-2;
    });

    criterion(8, "negative control: trapezoid mass matrix breaks contractivity", [](std::string& detail) {
        double best = -1.0;
        int indefinite = 0, total = 0;
        for (int n : {8, 16, 32, 64}) {
            const OperatorSet ops(n);
            const Vector trap = trapezoid_weights(ops.nodes());
            for (int s : {16, 32}) {
                const FilterMatrices fm = build_filter_matrices(ops, with_order(s));
                const double lmax = contractivity_spectrum(fm.F, trap).maxCoeff() / trap.maxCoeff();
                best = std::max(best, lmax);
                indefinite += lmax > 1e-12 ? 1 : 0;
                ++total;
            }
        }
        detail = fmt::format("{} of {} specs with a positive eigenvalue, largest lambda / max(M) {:.2e}", indefinite,
                             total, best);
        return indefinite > 0;
    });

    fmt::print("{} criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
