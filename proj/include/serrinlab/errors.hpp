#pragma once

#include <stdexcept>

namespace serrinlab {

/// A solver could not produce a solution (singular shooting matrix,
/// resonant FEM system, failed factorization).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The requested configuration cannot carry a positive solution.
struct PositivityError : SolverError {
    using SolverError::SolverError;
};

}  // namespace serrinlab
