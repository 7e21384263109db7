#pragma once

#include <ostream>
#include <string>

namespace dgfilter {

/// Columns: experiment,variant,N,dt,t_or_N,value,extra
struct CsvRow {
    std::string experiment;
    std::string variant;
    int degree = 0;
    double dt = 0.0;
    double abscissa = 0.0;  // time or polynomial degree, depending on the experiment
    double value = 0.0;
    std::string extra;      // semicolon-separated key=value pairs, no commas
};

/// printf-style %.17g.
[[nodiscard]] std::string format_double(double v);

/// Writes LF-terminated UTF-8 CSV. Not thread-safe; one writer per stream.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out);

    void write_header();
    void write(const CsvRow& row);

private:
    std::ostream& out_;
};

}  // namespace dgfilter
