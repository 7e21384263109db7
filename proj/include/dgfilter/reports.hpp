#pragma once

#include <ostream>

#include "dgfilter/csv.hpp"
#include "dgfilter/experiments.hpp"

// CSV emission for the experiment drivers. Every row carries the full
// parameter tuple in its columns or in `extra`.
namespace dgfilter::reports {

[[nodiscard]] std::string describe(const FilterSpec& spec);

void write_convergence(std::ostream& out, const experiments::ConvergenceSweep& sweep);
void write_varspeed(std::ostream& out, const experiments::VarspeedRun& run, const FilterSpec& spec);
void write_burgers(std::ostream& out, const experiments::BurgersRun& run, const FilterSpec& spec);
void write_fv_reference(std::ostream& out, const experiments::FvSolution& sol,
                        const experiments::FvConfig& config);

}  // namespace dgfilter::reports
