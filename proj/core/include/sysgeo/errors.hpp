#pragma once

#include <stdexcept>
#include <string>

namespace sysgeo {

// Raised when a theorem hypothesis fails on the input (e.g. a class is too
// short for the requested radius, or a cup product vanishes).
struct HypothesisError : std::runtime_error {
    explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a computed object fails its own consistency or certification
// checks (e.g. a certificate does not validate, a discretization is too
// coarse to carry the construction through).
struct VerificationError : std::runtime_error {
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sysgeo
