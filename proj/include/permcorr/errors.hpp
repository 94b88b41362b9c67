#pragma once

#include <stdexcept>
#include <string>

namespace permcorr {

// Bad or inconsistent run configuration (unknown statistic, missing inputs, ...).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unreadable or malformed input files.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A statistic whose null distribution carries no information: zero variance
// or a zero normalizer.
struct DegenerateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace permcorr
