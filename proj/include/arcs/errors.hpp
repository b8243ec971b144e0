#pragma once

#include <stdexcept>

namespace arcs {

struct PreconditionViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnsupportedRegion : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnsupportedNorm : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RootNotIsolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CapacityExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ReproductionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace arcs
