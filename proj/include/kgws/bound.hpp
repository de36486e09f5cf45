#pragma once

#include <span>

#include "kgws/potential.hpp"
#include "kgws/results.hpp"
#include "kgws/scattering.hpp"

namespace kgws {

// Coefficients on the bound interval -Mc^2 < E < Mc^2. K > 0 is the decay
// constant; the matching machinery runs with mu = -K, which makes the
// z^{-mu} = |z|^{K} ansatz fall off exponentially on both sides of the well.
struct BoundCoefficients {
    double K = 0.0;
    std::complex<double> mu;    // = -K
    std::complex<double> nu;
    std::complex<double> lambda;
    double t0 = 0.0;
    WaveCoefficients as_wave;   // view for the shared matching functions
};

struct BoundProblem {
    PotentialParams params;
    double mass = 0.0;
    UnitSystem units;
    SolverSettings settings;
};

BoundCoefficients bound_coefficients(double E, double M,
                                     const PotentialParams& params,
                                     const UnitSystem& units);

// Quantization residuals. Both are real up to roundoff; a non-negligible
// imaginary part throws ComplexResidualError. Even states (B1 = D1) zero the
// derivative bracket; odd states (B1 = -D1) zero M2 itself.
double even_condition(double E, const BoundProblem& problem);
double odd_condition(double E, const BoundProblem& problem);

// Scans the bound interval, brackets sign changes of either condition,
// refines by bisection followed by damped Newton, rejects pole crossings,
// and returns the ordered spectrum with node counts.
Spectrum scan_spectrum(const PotentialParams& params, double M,
                       const UnitSystem& units,
                       const SolverSettings& settings = {});

// Unnormalized eigenfunction, real-valued, B1 = 1 and D1 = +-1 by parity.
double bound_wavefunction(const BoundState& state, double x,
                          const BoundProblem& problem);

// Strict sign changes over ordered samples, ignoring values inside the
// 1e-9 * max|phi| noise band.
int count_nodes(std::span<const double> phi_samples);

}  // namespace kgws
