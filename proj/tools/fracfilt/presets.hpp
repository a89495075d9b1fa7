#pragma once
#include "fracdiff/transfer.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fracfilt {

// One labelled frequency-response curve ready to sweep.
struct curve {
  std::string label;
  std::string family;
  fracdiff::transfer::convention conv = fracdiff::transfer::convention::weyl;
  std::vector<std::pair<std::string, double>> params;
  fracdiff::transfer::transfer_function response;
  fracdiff::transfer::frequency_grid grid;
};

// fig1 .. fig7. Unknown names are a parameter_error.
std::vector<curve> preset(const std::string &name);

std::vector<std::string> preset_names();

} // namespace fracfilt
