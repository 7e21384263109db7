#include "dgfilter/csv.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace dgfilter {

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

CsvWriter::CsvWriter(std::ostream& out) : out_(out) {}

void CsvWriter::write_header() { out_ << "experiment,variant,N,dt,t_or_N,value,extra\n"; }

void CsvWriter::write(const CsvRow& row) {
    for (const std::string* field : {&row.experiment, &row.variant, &row.extra}) {
        if (field->find_first_of(",\n") != std::string::npos) {
            throw std::invalid_argument("CSV field contains a separator: " + *field);
        }
    }
    out_ << row.experiment << ',' << row.variant << ',' << row.degree << ',' << format_double(row.dt) << ','
         << format_double(row.abscissa) << ',' << format_double(row.value) << ',' << row.extra << '\n';
}

}  // namespace dgfilter
