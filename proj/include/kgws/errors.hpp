#pragma once

#include <stdexcept>
#include <string>

namespace kgws {

// Base class for everything the solver can throw on purpose.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gamma function evaluated at (or within tolerance of) a non-positive integer.
struct PoleError : SolverError {
    using SolverError::SolverError;
};

// Series hit its term cap without reaching the relative-term target.
struct ConvergenceError : SolverError {
    using SolverError::SolverError;
};

// b-a (or another critical parameter difference) is an integer and the
// required limit formula is not implemented; no alternate route applies.
struct DegenerateParamsError : SolverError {
    using SolverError::SolverError;
};

struct DomainError : SolverError {
    using SolverError::SolverError;
};

struct DivisionByZero : SolverError {
    using SolverError::SolverError;
};

// |t0| <= 1: the 1/z continuation of the matching functions does not apply.
struct MatchingPointError : SolverError {
    using SolverError::SolverError;
};

// Vanishing denominator in the amplitude-ratio brackets.
struct ResonanceDenominatorError : SolverError {
    using SolverError::SolverError;
};

// A quantization residual came out with a non-negligible imaginary part,
// which signals a branch misconfiguration upstream.
struct ComplexResidualError : SolverError {
    using SolverError::SolverError;
};

struct NoBracketError : SolverError {
    using SolverError::SolverError;
};

struct NonConvergedRootError : SolverError {
    using SolverError::SolverError;
};

struct StepSizeError : SolverError {
    using SolverError::SolverError;
};

struct ConfigError : SolverError {
    ConfigError(const std::string& msg, int line_number = 0)
        : SolverError(msg), line(line_number) {}
    int line;
};

}  // namespace kgws
