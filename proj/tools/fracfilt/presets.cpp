#include "fracfilt/presets.hpp"

#include "fracdiff/errors.hpp"

#include <cstdio>
#include <numbers>

namespace fracfilt {

namespace tf = fracdiff::transfer;

namespace {

constexpr int kPoints = 400;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

tf::frequency_grid log_grid(double lo, double hi) { return tf::make_grid(lo, hi, kPoints, tf::spacing::logarithmic); }

curve ideal(double nu, const tf::frequency_grid &g) {
  return {"ideal nu=" + num(nu), "ideal", tf::convention::weyl, {{"nu", nu}},
          [nu](double w) { return tf::ideal_transfer(nu, w, tf::convention::weyl); }, g};
}

curve legendre(int n, double nu, const tf::frequency_grid &g) {
  return {"legendre n=" + std::to_string(n) + " nu=" + num(nu),
          "legendre",
          tf::convention::weyl,
          {{"n", n}, {"nu", nu}, {"delta", 1.0}},
          [n, nu](double w) { return tf::legendre_transfer(n, nu, 1.0, w); },
          g};
}

} // namespace

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7"}; }

std::vector<curve> preset(const std::string &name) {
  std::vector<curve> out;
  if (name == "fig1") {
    for (double nu : {1.0, 2.0, 5.0})
      out.push_back(ideal(nu, log_grid(1e-2, 1e2)));
  } else if (name == "fig2") {
    out.push_back(legendre(1, 1.0, log_grid(1e-3, 1e2)));
  } else if (name == "fig3") {
    for (double nu : {1.0, 1.5, 2.0})
      out.push_back(ideal(nu, log_grid(1e-2, 1e2)));
  } else if (name == "fig4") {
    for (double nu : {0.25, 0.5, 0.75, 1.0})
      out.push_back(legendre(1, nu, log_grid(1e-3, 1e2)));
  } else if (name == "fig5") {
    for (int N : {1, 2, 4, 8, 16}) {
      fracdiff::hahn::hahn_params p;
      p.N = N;
      p.n = 1;
      p.nu = 0.5;
      out.push_back({"hahn N=" + std::to_string(N), "hahn", tf::convention::riemann_liouville,
                     {{"N", N}, {"n", 1}, {"nu", 0.5}, {"alpha", 0.0}, {"beta", 0.0}, {"delta", 1.0}},
                     [p](double w) { return tf::hahn_transfer(p, w); }, log_grid(1e-3, std::numbers::pi)});
    }
  } else if (name == "fig6") {
    for (int M : {8, 32, 128, 512}) {
      fracdiff::hahn::hahn_params p;
      p.N = 7;
      p.n = 1;
      p.nu = 0.5;
      p.M = M;
      out.push_back({"gram N=7 M=" + std::to_string(M), "gram", tf::convention::riemann_liouville,
                     {{"N", 7}, {"n", 1}, {"nu", 0.5}, {"M", M}, {"delta", 1.0}},
                     [p](double w) { return tf::hahn_truncated_transfer(p, w); },
                     log_grid(1e-4, std::numbers::pi)});
    }
  } else if (name == "fig7") {
    out.push_back({"butterworth n=7 nu=0.5", "butterworth", tf::convention::riemann_liouville,
                   {{"n", 7}, {"nu", 0.5}, {"omega0", 1.0}},
                   [](double w) { return tf::butterworth_fractional_transfer(0.5, 7, 1.0, w); },
                   log_grid(1e-2, 1e3)});
  } else {
    throw fracdiff::parameter_error("unknown preset '" + name + "' (expected fig1 .. fig7)");
  }
  return out;
}

} // namespace fracfilt
