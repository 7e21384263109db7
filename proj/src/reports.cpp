#include "dgfilter/reports.hpp"

#include <string>

#include <fmt/format.h>

namespace dgfilter::reports {

using experiments::BurgersRun;
using experiments::ConvergenceSweep;
using experiments::FvConfig;
using experiments::FvSolution;
using experiments::VarspeedRun;

std::string describe(const FilterSpec& spec) {
    return fmt::format("alpha={};s={};nc={};clip={}", format_double(spec.alpha), spec.order,
                       spec.unaffected_modes, spec.clip_highest ? 1 : 0);
}

void write_convergence(std::ostream& out, const ConvergenceSweep& sweep) {
    CsvWriter csv(out);
    csv.write_header();
    const std::string extra = fmt::format("T={};{}", format_double(sweep.final_time), describe(sweep.filter));
    for (const auto& p : sweep.points) {
        csv.write({"convergence", "filtered_every_step", p.degree, sweep.dt, static_cast<double>(p.degree),
                   p.error, extra});
    }
}

void write_varspeed(std::ostream& out, const VarspeedRun& run, const FilterSpec& spec) {
    CsvWriter csv(out);
    csv.write_header();
    const std::string variant = run.filtered ? "filtered" : "unfiltered";
    const std::string params = fmt::format("T={};{}", format_double(run.final_time),
                                           run.filtered ? describe(spec) : std::string("filter=none"));
    csv.write({"varspeed", variant, run.degree, run.dt, run.final_time, run.error,
               "metric=linf_error;" + params});
    csv.write({"varspeed", variant, run.degree, run.dt, run.final_time, run.total_variation,
               "metric=total_variation;" + params});
    for (Eigen::Index i = 0; i < run.u.size(); ++i) {
        csv.write({"varspeed_profile", variant, run.degree, run.dt, run.final_time, run.u[i],
                   fmt::format("x={};exact={};{}", format_double(run.x[i]), format_double(run.exact[i]), params)});
    }
}

void write_burgers(std::ostream& out, const BurgersRun& run, const FilterSpec& spec) {
    CsvWriter csv(out);
    csv.write_header();
    const std::string variant{experiments::to_string(run.variant)};
    const std::string params =
        fmt::format("cfl={};T={};filter_count={};{}", format_double(run.cfl), format_double(run.final_time),
                    run.filter_count, run.filter_count > 0 ? describe(spec) : std::string("filter=none"));

    for (std::size_t k = 0; k < run.times.size(); ++k) {
        const double dt = k == 0 ? 0.0 : run.times[k] - run.times[k - 1];
        csv.write({"burgers_energy", variant, run.degree, dt, run.times[k], run.normalized_energy[k],
                   "event=step;" + params});
    }
    for (const auto& jump : run.filter_jumps) {
        csv.write({"burgers_energy", variant, run.degree, 0.0, jump.time, jump.before,
                   "event=filter_before;" + params});
        csv.write({"burgers_energy", variant, run.degree, 0.0, jump.time, jump.after,
                   "event=filter_after;" + params});
    }
    if (run.crashed) {
        csv.write({"burgers_crash", variant, run.degree, 0.0, *run.crash_time, *run.crash_time,
                   "event=crash;" + params});
    }
    const double t_end = run.crashed ? run.times.back() : run.final_time;
    for (Eigen::Index i = 0; i < run.u.size(); ++i) {
        csv.write({"burgers_profile", variant, run.degree, 0.0, t_end, run.u[i],
                   fmt::format("x={};{}", format_double(run.x[i]), params)});
    }
}

void write_fv_reference(std::ostream& out, const FvSolution& sol, const FvConfig& config) {
    CsvWriter csv(out);
    csv.write_header();
    const double mean_dt = sol.steps > 0 ? config.final_time / static_cast<double>(sol.steps) : 0.0;
    const std::string params = fmt::format("cells={};cfl={};T={}", config.cells, format_double(config.cfl),
                                           format_double(config.final_time));
    for (Eigen::Index i = 0; i < sol.averages.size(); ++i) {
        csv.write({"fv_reference", "llf_first_order", config.cells, mean_dt, config.final_time, sol.averages[i],
                   fmt::format("x={};{}", format_double(sol.centers[i]), params)});
    }
}

}  // namespace dgfilter::reports
