#pragma once

#include <stdexcept>
#include <string>

namespace gdop {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Exact-mode request outside the supported (n, p) envelope.
struct ExactCapError : Error {
    using Error::Error;
};

// Series tail bound cannot be met within max_terms.
struct TruncationError : Error {
    using Error::Error;
};

// Adaptive quadrature refinement did not converge to the requested tolerance.
struct QuadratureError : Error {
    using Error::Error;
};

// Contour rule disagreement under node doubling.
struct ContourError : Error {
    using Error::Error;
};

// A hard theorem-derived inequality failed at a sampled point.
struct BoundViolation : Error {
    using Error::Error;
};

// Coefficients grow faster than the series' declared decay.
struct DivergenceError : Error {
    using Error::Error;
};

// Input violates a theorem hypothesis (e.g. degree-<=1 function where a
// nontrivial one is required).
struct HypothesisError : Error {
    using Error::Error;
};

}  // namespace gdop
