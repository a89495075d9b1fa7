#pragma once

#include <stdexcept>
#include <string>

namespace fracdiff {

// Bad parameters or inputs outside an operation's domain.
class parameter_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Index outside the available samples.
class range_error : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

class numeric_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class pole_error : public numeric_error {
public:
  using numeric_error::numeric_error;
};

class convergence_error : public numeric_error {
public:
  using numeric_error::numeric_error;
};

} // namespace fracdiff
