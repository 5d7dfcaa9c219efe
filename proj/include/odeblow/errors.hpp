#pragma once

#include <stdexcept>
#include <string>

namespace odeblow {

// Physical-space tail at r_max is too large for a faithful sine transform.
struct TruncationError : std::runtime_error {
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

// Free-wave data does not decay inside the causality margin r_max - t.
struct CausalityError : std::runtime_error {
    explicit CausalityError(const std::string& what) : std::runtime_error(what) {}
};

// Explicit time step exceeds the CFL limit of the scheme.
struct CflError : std::runtime_error {
    explicit CflError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative procedure (deflation, Picard) failed to stabilize.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// The last decade of the tau horizon carries too much of a space-time norm.
struct HorizonTruncation : std::runtime_error {
    explicit HorizonTruncation(const std::string& what) : std::runtime_error(what) {}
};

// Not enough exceedances above the requested threshold for a tail fit.
struct InsufficientExceedances : std::runtime_error {
    explicit InsufficientExceedances(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace odeblow
