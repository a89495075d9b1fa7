#include "fracfilt/signal_io.hpp"

#include "fracdiff/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

namespace fracfilt {

namespace {

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string &s, double &v) {
  const std::string t = trim(s);
  if (t.empty())
    return false;
  char *end = nullptr;
  v = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

} // namespace

table read_table(std::istream &in, const std::string &name) {
  table t;
  std::string line;
  bool header = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#')
      continue;
    if (!header) {
      header = true;
      continue;
    }
    const auto c1 = s.find(',');
    if (c1 == std::string::npos)
      throw fracdiff::parameter_error(name + ":" + std::to_string(lineno) + ": expected 'x,value'");
    const auto c2 = s.find(',', c1 + 1);
    double x = 0.0, v = 0.0;
    if (!parse_double(s.substr(0, c1), x) ||
        !parse_double(s.substr(c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1), v))
      throw fracdiff::parameter_error(name + ":" + std::to_string(lineno) + ": not a number");
    t.x.push_back(x);
    t.value.push_back(v);
  }
  if (in.bad())
    throw io_error(name + ": read failed");
  if (!header)
    throw fracdiff::parameter_error(name + ": missing header line");
  return t;
}

table read_table_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw io_error("cannot open '" + path + "'");
  return read_table(in, path);
}

fracdiff::sampled_signal to_signal(const table &t, bool causal) {
  if (t.x.size() < 2)
    throw fracdiff::parameter_error("input needs at least two samples");
  for (std::size_t k = 0; k < t.x.size(); ++k)
    if (!std::isfinite(t.x[k]) || !std::isfinite(t.value[k]))
      throw fracdiff::parameter_error("input sample " + std::to_string(k) + " is not finite");
  const std::size_t n = t.x.size();
  const double step = (t.x.back() - t.x.front()) / static_cast<double>(n - 1);
  if (!(step > 0.0))
    throw fracdiff::parameter_error("input x must be increasing");
  for (std::size_t k = 1; k < n; ++k) {
    const double d = t.x[k] - t.x[k - 1];
    if (std::abs(d - step) > 1e-9 * step)
      throw fracdiff::parameter_error("input spacing is not uniform at sample " + std::to_string(k));
  }
  fracdiff::sampled_signal s;
  s.x0 = t.x.front();
  s.delta = step;
  s.samples = t.value;
  s.causal = causal;
  return s;
}

void write_filtered(std::ostream &out, const std::vector<double> &x, const std::vector<double> &value,
                    const std::vector<bool> &valid) {
  char buf[96];
  out << "x,value,valid\n";
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (valid[k])
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,1\n", x[k], value[k]);
    else
      std::snprintf(buf, sizeof buf, "%.17g,nan,0\n", x[k]);
    out << buf;
  }
}

} // namespace fracfilt
