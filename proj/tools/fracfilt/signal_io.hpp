#pragma once
#include "fracdiff/fracops.hpp"
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracfilt {

// Two-column CSV "x,value" with a header line. Extra columns are ignored.
struct table {
  std::vector<double> x;
  std::vector<double> value;
};

table read_table(std::istream &in, const std::string &name);
table read_table_file(const std::string &path);

// Builds a signal from the table; spacing must be uniform to 1e-9 relative.
fracdiff::sampled_signal to_signal(const table &t, bool causal);

// "x,value,valid" with %.17g; invalid samples are written as nan.
void write_filtered(std::ostream &out, const std::vector<double> &x, const std::vector<double> &value,
                    const std::vector<bool> &valid);

// Raised for unreadable or unwritable files (exit status 2).
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace fracfilt
