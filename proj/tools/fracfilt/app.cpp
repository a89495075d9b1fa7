#include "fracfilt/app.hpp"

#include "fracfilt/presets.hpp"
#include "fracfilt/signal_io.hpp"

#include "fracdiff/errors.hpp"
#include "fracdiff/fracops.hpp"
#include "fracdiff/hahn.hpp"
#include "fracdiff/kernels.hpp"
#include "fracdiff/transfer.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

namespace fracfilt {

namespace tf = fracdiff::transfer;
namespace hn = fracdiff::hahn;
namespace kn = fracdiff::kernels;
using fracdiff::parameter_error;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kGlDefaultHistory = 64;
constexpr double kTailTolerance = 1e-3; // kernel filters: accepted tail bound relative to the value

const std::set<std::string> kFamilies{"gl",    "hahn",     "gram",  "jacobi",
                                      "legendre", "laguerre", "ideal", "butterworth"};

struct options {
  std::string mode;
  std::string family;
  std::optional<double> nu;
  std::optional<double> delta;
  int n = 1;
  int N = 1;
  int M = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double omega0 = 1.0;
  std::string grid;
  std::string preset;
  bool causal = false;
  std::string input;
  std::string output;
  std::string format = "text";
  std::string run_id = "fracfilt";
  std::string taps;
  std::string convention = "weyl";
};

const char *kConfigHelp = R"(Config file (--config PATH): flat key=value lines, '#' starts a comment.
Keys are the long option names, e.g.
  family=gram
  nu=0.5
  N=7
  M=64
  grid=1e-4:3.14159:200:log
Command-line flags override values from the file.

Exit status: 0 ok, 1 validation error, 2 I/O error, 3 numeric failure.)";

double require_nu(const options &o) {
  if (!o.nu)
    throw parameter_error("--nu is required for family '" + o.family + "'");
  return *o.nu;
}

void require_family(const options &o) {
  if (o.family.empty())
    throw parameter_error("--family is required");
}

hn::hahn_params hahn_from(const options &o, double delta) {
  hn::hahn_params p;
  p.alpha = o.alpha;
  p.beta = o.beta;
  p.N = o.N;
  p.n = o.n;
  p.nu = require_nu(o);
  p.delta = delta;
  p.M = o.M;
  if (o.family == "gram") {
    if (o.n != 1 || o.alpha != 0.0 || o.beta != 0.0)
      throw parameter_error("family gram fixes n=1, alpha=beta=0; use family hahn otherwise");
  }
  p.validate();
  return p;
}

kn::jacobi_params jacobi_from(const options &o, double delta) {
  kn::jacobi_params p;
  p.alpha = o.family == "legendre" ? 0.0 : o.alpha;
  p.beta = o.family == "legendre" ? 0.0 : o.beta;
  p.n = o.n;
  p.nu = require_nu(o);
  p.delta = delta;
  p.validate();
  return p;
}

tf::convention parse_convention(const std::string &s) {
  if (s == "weyl")
    return tf::convention::weyl;
  if (s == "riemann_liouville" || s == "rl")
    return tf::convention::riemann_liouville;
  throw parameter_error("--convention must be weyl or riemann_liouville");
}

void write_output(const options &o, std::ostream &fallback, const std::string &text) {
  if (o.output.empty() || o.output == "-") {
    fallback << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f)
    throw io_error("cannot open '" + o.output + "' for writing");
  f << text;
  if (!f)
    throw io_error("write to '" + o.output + "' failed");
}

void export_taps(const options &o, const hn::filter_weights &w) {
  if (o.taps.empty())
    return;
  std::ofstream f(o.taps);
  if (!f)
    throw io_error("cannot open '" + o.taps + "' for writing");
  hn::write_taps(f, w);
  if (!f)
    throw io_error("write to '" + o.taps + "' failed");
}

hn::filter_weights gl_weights(double nu, double delta, int history) {
  const auto c = fracdiff::fracops::gl_coefficients(nu, static_cast<std::size_t>(history) + 1);
  hn::filter_weights w;
  w.forward = {c[0]};
  w.backward.assign(c.begin() + 1, c.end());
  w.prefactor = std::pow(delta, -nu);
  return w;
}

// ---- filter --------------------------------------------------------------

struct filtered {
  std::vector<double> value;
  std::vector<bool> valid;
};

filtered filter_discrete(const options &o, const fracdiff::sampled_signal &s, const hn::filter_weights &w) {
  filtered r;
  const std::size_t n = s.size();
  r.value.assign(n, kNaN);
  r.valid.assign(n, false);
  const std::size_t ahead = static_cast<std::size_t>(w.lookahead());
  const std::size_t hist = static_cast<std::size_t>(w.history());
  for (std::size_t i = 0; i < n; ++i) {
    if (i + ahead >= n || (!o.causal && i < hist))
      continue;
    try {
      r.value[i] = hn::apply_discrete_filter(s, w, i);
      r.valid[i] = std::isfinite(r.value[i]);
    } catch (const fracdiff::numeric_error &) {
    }
  }
  return r;
}

filtered filter_gl(const options &o, const fracdiff::sampled_signal &s, double nu) {
  if (o.causal && o.M == 0) {
    filtered r;
    r.value = fracdiff::fracops::gl_transform(s, nu).samples;
    for (double v : r.value)
      r.valid.push_back(std::isfinite(v));
    return r;
  }
  const int hist = o.M > 0 ? o.M : kGlDefaultHistory;
  return filter_discrete(o, s, gl_weights(nu, s.delta, hist));
}

// Continuous kernels act on the piecewise-linear interpolant of the samples
// (zero-padded before the first sample when causal); the tail is cut at the
// last sample and the sample is flagged when the neglected part may matter.
filtered filter_kernel(const options &o, const fracdiff::sampled_signal &s, double delta) {
  const double nu = require_nu(o);
  if (!(delta > 0.0))
    throw parameter_error("--delta must be positive");
  const bool laguerre = o.family == "laguerre";
  const int n = static_cast<int>(s.size());
  kn::edge_function shape;
  double start = -1.0;
  std::vector<double> breaks;
  if (laguerre) {
    if (!(o.alpha > -1.0) || o.n < 1 || nu > o.n)
      throw parameter_error("laguerre filter: need alpha > -1, n >= 1 and nu <= n");
    start = 0.0;
    shape = [a = o.alpha, m = o.n, nu](double anchor, double offset) {
      return kn::laguerre_kernel(a, m, nu, std::max(anchor + offset, 0.0));
    };
  } else {
    const auto p = jacobi_from(o, delta);
    breaks = {1.0};
    shape = [p](double anchor, double offset) { return kn::jacobi_kernel(p, anchor, offset); };
  }
  const auto w = kn::kernel_interpolant_weights(shape, start, nu, delta, s.delta, n - 1, breaks);
  // offsets needed before the tail starts
  const int reach = laguerre ? 1 : static_cast<int>(std::ceil(delta / s.delta - 1e-9));
  const bool no_tail = !laguerre && nu == std::round(nu);

  filtered r;
  r.value.assign(n, kNaN);
  r.valid.assign(n, false);
  for (int i = 0; i < n; ++i) {
    if (!o.causal && i + w.first < 0)
      continue;
    const int cut = n - 1 - i;
    if (cut < reach || cut < w.first)
      continue;
    long double acc = 0.0L;
    for (int k = std::max(w.first, -i); k < cut; ++k)
      acc += static_cast<long double>(w.full[k - w.first]) * s.samples[i + k];
    acc += static_cast<long double>(w.left[cut - w.first]) * s.samples[i + cut];
    const double value = static_cast<double>(acc);
    double bound = 0.0;
    if (!no_tail && cut > 0) {
      const double Y = cut * s.delta / delta;
      double fmax = 0.0;
      for (int k = i + cut / 2; k < n; ++k)
        fmax = std::max(fmax, std::abs(s.samples[k]));
      const double decay = laguerre && nu == std::round(nu) ? 1.0 : std::abs(nu);
      bound = std::pow(delta, -nu) * std::abs(shape(Y, 0.0)) * fmax * (1.0 + Y) / decay;
    }
    r.value[i] = value;
    r.valid[i] = std::isfinite(value) && bound <= kTailTolerance * std::abs(value);
  }
  return r;
}

void run_filter(const options &o, std::ostream &out) {
  require_family(o);
  if (o.input.empty())
    throw parameter_error("filter needs an input file (-i)");
  const table t = read_table_file(o.input);
  const fracdiff::sampled_signal s = to_signal(t, o.causal);
  const bool discrete = o.family == "gl" || o.family == "hahn" || o.family == "gram";
  if (o.family == "ideal" || o.family == "butterworth")
    throw parameter_error("family '" + o.family + "' is a frequency-domain model; use sweep");
  if (discrete && o.delta && std::abs(*o.delta - s.delta) > 1e-9 * s.delta)
    throw parameter_error("--delta disagrees with the input sample spacing");

  filtered r;
  const double nu = require_nu(o);
  if (o.family == "gl") {
    r = filter_gl(o, s, nu);
    if (!o.taps.empty())
      export_taps(o, gl_weights(nu, s.delta, o.M > 0 ? o.M : (o.causal ? static_cast<int>(s.size()) - 1
                                                                      : kGlDefaultHistory)));
  } else if (discrete) {
    const auto p = hahn_from(o, s.delta);
    const auto w = o.family == "gram" ? hn::gram_n1_weights(p.N, p.nu, p.delta, p.history()) : hn::hahn_weights(p);
    export_taps(o, w);
    r = filter_discrete(o, s, w);
  } else {
    r = filter_kernel(o, s, o.delta ? *o.delta : s.delta);
  }
  std::ostringstream buf;
  write_filtered(buf, t.x, r.value, r.valid);
  write_output(o, out, buf.str());
}

// ---- sweep ---------------------------------------------------------------

curve curve_from(const options &o) {
  require_family(o);
  const double nu = require_nu(o);
  const double delta = o.delta ? *o.delta : 1.0;
  if (!(delta > 0.0))
    throw parameter_error("--delta must be positive");
  curve c;
  c.family = o.family;
  c.label = o.family;
  c.conv = tf::convention::weyl;
  const std::string &f = o.family;
  if (f == "ideal") {
    c.conv = parse_convention(o.convention);
    c.params = {{"nu", nu}};
    c.response = [nu, conv = c.conv](double w) { return tf::ideal_transfer(nu, w, conv); };
  } else if (f == "gl") {
    c.conv = tf::convention::riemann_liouville;
    c.params = {{"nu", nu}, {"delta", delta}};
    c.response = [nu, delta](double w) { return tf::gl_transfer(nu, delta, w); };
  } else if (f == "hahn" || f == "gram") {
    const auto p = hahn_from(o, delta);
    c.conv = tf::convention::riemann_liouville;
    c.params = {{"alpha", p.alpha}, {"beta", p.beta}, {"N", p.N}, {"n", p.n}, {"nu", nu}, {"delta", delta}};
    if (f == "gram") {
      c.params.emplace_back("M", p.history());
      c.response = [p](double w) { return tf::hahn_truncated_transfer(p, w); };
      export_taps(o, hn::gram_n1_weights(p.N, p.nu, p.delta, p.history()));
    } else if (p.M > 0) {
      c.params.emplace_back("M", p.M);
      auto w = std::make_shared<hn::filter_weights>(hn::hahn_weights(p));
      export_taps(o, *w);
      c.response = [w, delta](double om) { return tf::taps_transfer(*w, delta, om); };
    } else {
      c.response = [p](double w) { return tf::hahn_transfer(p, w); };
    }
  } else if (f == "jacobi" || f == "legendre") {
    const auto p = jacobi_from(o, delta);
    c.params = {{"alpha", p.alpha}, {"beta", p.beta}, {"n", p.n}, {"nu", nu}, {"delta", delta}};
    if (f == "legendre")
      c.response = [p](double w) { return tf::legendre_transfer(p.n, p.nu, p.delta, w); };
    else
      c.response = [p](double w) { return tf::jacobi_transfer(p, w); };
  } else if (f == "laguerre") {
    c.params = {{"alpha", o.alpha}, {"n", o.n}, {"nu", nu}, {"delta", delta}};
    c.response = [a = o.alpha, n = o.n, nu, delta](double w) { return tf::laguerre_transfer(a, n, nu, delta, w); };
  } else if (f == "butterworth") {
    c.conv = tf::convention::riemann_liouville;
    c.params = {{"n", o.n}, {"nu", nu}, {"omega0", o.omega0}};
    c.response = [nu, n = o.n, w0 = o.omega0](double w) { return tf::butterworth_fractional_transfer(nu, n, w0, w); };
  }
  if (o.grid.empty())
    throw parameter_error("sweep needs --grid lo:hi:points:log|lin");
  c.grid = tf::parse_grid(o.grid);
  return c;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char *spacing_name(tf::spacing s) { return s == tf::spacing::logarithmic ? "log" : "lin"; }

void run_sweep(const options &o, std::ostream &out) {
  std::vector<curve> curves;
  if (!o.preset.empty()) {
    curves = preset(o.preset);
    if (!o.grid.empty()) {
      const auto g = tf::parse_grid(o.grid);
      for (auto &c : curves)
        c.grid = g;
    }
  } else {
    curves.push_back(curve_from(o));
  }

  std::vector<std::vector<tf::transfer_sample>> results;
  for (const auto &c : curves)
    results.push_back(tf::sweep(c.response, c.grid));

  std::ostringstream buf;
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["run_id"] = o.run_id;
    j["mode"] = "sweep";
    j["preset"] = o.preset.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(o.preset);
    j["columns"] = {"omega", "re", "im", "abs", "arg"};
    j["curves"] = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < curves.size(); ++k) {
      const auto &c = curves[k];
      nlohmann::ordered_json jc;
      jc["label"] = c.label;
      jc["family"] = c.family;
      jc["convention"] = tf::to_string(c.conv);
      nlohmann::ordered_json params = nlohmann::ordered_json::object();
      for (const auto &[key, v] : c.params)
        params[key] = v;
      jc["params"] = params;
      jc["grid"] = {{"lo", c.grid.points.front()},
                    {"hi", c.grid.points.back()},
                    {"points", c.grid.points.size()},
                    {"spacing", spacing_name(c.grid.kind)}};
      auto data = nlohmann::ordered_json::array();
      auto valid = nlohmann::ordered_json::array();
      for (const auto &s : results[k]) {
        if (s.valid)
          data.push_back({s.omega, s.value.real(), s.value.imag(), std::abs(s.value), std::arg(s.value)});
        else
          data.push_back({s.omega, nullptr, nullptr, nullptr, nullptr});
        valid.push_back(s.valid);
      }
      jc["data"] = std::move(data);
      jc["valid"] = std::move(valid);
      j["curves"].push_back(std::move(jc));
    }
    buf << j.dump(1) << '\n';
  } else {
    buf << "# run_id: " << o.run_id << '\n';
    for (std::size_t k = 0; k < curves.size(); ++k) {
      const auto &c = curves[k];
      if (k > 0)
        buf << "\n\n";
      buf << "# curve: " << c.label << '\n';
      buf << "# family: " << c.family << '\n';
      buf << "# convention: " << tf::to_string(c.conv) << '\n';
      buf << "# params:";
      for (const auto &[key, v] : c.params)
        buf << ' ' << key << '=' << fmt(v);
      buf << '\n';
      buf << "# omega re im abs arg log10_omega log10_abs valid\n";
      for (const auto &s : results[k]) {
        const double m = std::abs(s.value);
        buf << fmt(s.omega) << ' ' << fmt(s.value.real()) << ' ' << fmt(s.value.imag()) << ' ' << fmt(m) << ' '
            << fmt(std::arg(s.value)) << ' ' << fmt(std::log10(s.omega)) << ' ' << fmt(std::log10(m)) << ' '
            << (s.valid ? 1 : 0) << '\n';
      }
    }
  }
  write_output(o, out, buf.str());
}

// ---- metrics -------------------------------------------------------------

void run_metrics(const options &o, std::ostream &out) {
  require_family(o);
  if (o.family != "gram" && o.family != "hahn")
    throw parameter_error("metrics supports families gram and hahn only");
  const double delta = o.delta ? *o.delta : 1.0;
  const auto p = hahn_from(o, delta);
  const auto m = tf::compute_metrics(p);
  const std::string note =
      m.integer_order_edge ? "order >= 1: the omega_max estimate degenerates (integer-order edge case)" : "";
  std::ostringstream buf;
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["run_id"] = o.run_id;
    j["mode"] = "metrics";
    j["family"] = o.family;
    j["params"] = {{"N", p.N}, {"nu", p.nu}, {"delta", p.delta}, {"M", p.history()}};
    j["h_zero"] = m.h_zero;
    j["omega_lower"] = m.omega_lower;
    j["omega_lower_practical"] = m.omega_lower_practical;
    j["omega_max"] = m.omega_max;
    j["bandwidth"] = m.bandwidth;
    j["omega_peak"] = m.omega_peak;
    j["peak_modulus"] = m.peak_modulus;
    j["integer_order_edge"] = m.integer_order_edge;
    if (!note.empty())
      j["note"] = note;
    buf << j.dump(1) << '\n';
  } else {
    buf << "run_id = " << o.run_id << '\n';
    buf << "family = " << o.family << '\n';
    buf << "N = " << p.N << '\n';
    buf << "nu = " << fmt(p.nu) << '\n';
    buf << "delta = " << fmt(p.delta) << '\n';
    buf << "M = " << p.history() << '\n';
    buf << "h_zero = " << fmt(m.h_zero) << '\n';
    buf << "omega_lower = " << fmt(m.omega_lower) << '\n';
    buf << "omega_lower_practical = " << fmt(m.omega_lower_practical) << '\n';
    buf << "omega_max = " << fmt(m.omega_max) << '\n';
    buf << "bandwidth = " << fmt(m.bandwidth) << '\n';
    buf << "omega_peak = " << fmt(m.omega_peak) << '\n';
    buf << "peak_modulus = " << fmt(m.peak_modulus) << '\n';
    buf << "integer_order_edge = " << (m.integer_order_edge ? "true" : "false") << '\n';
    if (!note.empty())
      buf << "note = " << note << '\n';
  }
  write_output(o, out, buf.str());
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  options o;
  CLI::App app{"Fractional derivative filters: apply, sweep transfer functions, report metrics.", "fracfilt"};
  app.footer(kConfigHelp);
  app.set_config("--config", "", "Flat key=value configuration file");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  app.add_option("--family", o.family, "gl, hahn, gram, jacobi, legendre, laguerre, ideal, butterworth")
      ->check(CLI::IsMember(kFamilies));
  app.add_option("--nu", o.nu, "Order of the derivative");
  app.add_option("--delta", o.delta, "Step (discrete) or window half-width (continuous)");
  app.add_option("--n", o.n, "Polynomial degree / Butterworth order");
  app.add_option("--N", o.N, "Hahn window length");
  app.add_option("--M", o.M, "History length (0: default)");
  app.add_option("--alpha", o.alpha, "Weight parameter alpha");
  app.add_option("--beta", o.beta, "Weight parameter beta");
  app.add_option("--omega0", o.omega0, "Butterworth cut-off");
  app.add_option("--grid", o.grid, "lo:hi:points:log|lin");
  app.add_option("--preset", o.preset, "fig1 .. fig7")->check(CLI::IsMember(preset_names()));
  app.add_flag("--causal", o.causal, "Treat the signal as zero before its first sample");
  app.add_option("-i,--input", o.input, "Input CSV (x,value) with header");
  app.add_option("-o,--output", o.output, "Output file (default: stdout)");
  app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--run-id", o.run_id, "Identifier stored in the output metadata");
  app.add_option("--taps", o.taps, "Write the filter taps (offset coefficient) to this file");
  app.add_option("--convention", o.convention, "Phase convention of the ideal family");

  for (const char *name : {"filter", "sweep", "metrics"}) {
    auto *sub = app.add_subcommand(name);
    sub->fallthrough();
    sub->callback([&o, name] { o.mode = name; });
  }
  app.get_subcommand("filter")->description("Filter a sampled signal");
  app.get_subcommand("sweep")->description("Frequency response over a grid or a figure preset");
  app.get_subcommand("metrics")->description("Low-frequency floor, peak and bandwidth of a Gram filter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::FileError &e) {
    err << "fracfilt: " << e.what() << '\n';
    return exit_io;
  } catch (const CLI::ParseError &e) {
    err << "fracfilt: " << e.what() << '\n';
    return exit_validation;
  }

  try {
    if (o.mode == "filter")
      run_filter(o, out);
    else if (o.mode == "sweep")
      run_sweep(o, out);
    else
      run_metrics(o, out);
  } catch (const io_error &e) {
    err << "fracfilt: " << e.what() << '\n';
    return exit_io;
  } catch (const parameter_error &e) {
    err << "fracfilt: " << e.what() << '\n';
    return exit_validation;
  } catch (const fracdiff::range_error &e) {
    err << "fracfilt: " << e.what() << '\n';
    return exit_validation;
  } catch (const fracdiff::numeric_error &e) {
    err << "fracfilt: numeric failure: " << e.what() << '\n';
    return exit_numeric;
  } catch (const std::exception &e) {
    err << "fracfilt: " << e.what() << '\n';
    return exit_numeric;
  }
  return exit_ok;
}

} // namespace fracfilt
