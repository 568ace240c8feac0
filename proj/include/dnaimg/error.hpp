#pragma once

#include <stdexcept>
#include <string>

namespace dnaimg {

/// Malformed or inconsistent input data (bad files, out-of-range values,
/// capacity overflows). The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters supplied by a caller. The CLI maps this to exit code 1.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace dnaimg
