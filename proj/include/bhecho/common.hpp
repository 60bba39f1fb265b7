#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bhecho {

using cplx = std::complex<double>;

inline constexpr const char* kVersion = "0.3.0";
inline constexpr int kReportSchemaVersion = 1;

// Invalid user input: bad config keys/values, inconsistent parameters.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A method-specific precondition failed (dimension cap, validity gate, ...).
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iterative numerical method failed to reach its accuracy target.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bhecho
