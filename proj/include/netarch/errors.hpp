#pragma once

#include <stdexcept>
#include <string>

namespace netarch {

// Thrown when a Laplace-transform partial sum shows no sign of converging:
// the probe rate is at or below the divergence point of the series.
class divergence_detected : public std::runtime_error {
public:
    explicit divergence_detected(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when the Malthusian bisection bracket does not straddle the root,
// which indicates an inconsistent declared slope bound for the attachment function.
class bracket_failure : public std::runtime_error {
public:
    explicit bracket_failure(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a simulation would exceed its population / event budget.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace netarch
