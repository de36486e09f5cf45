#pragma once

#include <array>
#include <complex>
#include <utility>

#include "kgws/potential.hpp"
#include "kgws/results.hpp"

namespace kgws {

// Dimensionless coefficients of the transformed wave equation at energy E.
//
// Continuum: mu = i k with k real > 0. Bound states reuse the same machinery
// with mu = -K (K real > 0), which is the decaying-solution convention: the
// z^{-mu} ansatz then falls off on both sides of the well.
//
// lambda is i*sqrt(omega2_sq) with omega2_sq taken from the quadratic
// coefficient of the transformed equation (the locality offset V0 included).
struct WaveCoefficients {
    std::complex<double> mu;
    double k = 0.0;            // |wave number|, dimensionless
    std::complex<double> nu;
    std::complex<double> lambda;
    double t0 = 0.0;           // matching coordinate, < -1
    double ln_minus_t0 = 0.0;  // log(-t0), kept separately for large alpha*L
    double omega0_sq = 0.0;
    double omega1_sq = 0.0;
    double omega2_sq = 0.0;
};

// Continuum coefficients; requires E > Mc^2 and a symmetric parameter set.
WaveCoefficients wave_coefficients(double E, double M,
                                   const PotentialParams& params,
                                   const UnitSystem& units);

// The eight hypergeometric values at argument 1/t0 entering the matching
// functions. Requires |t0| > 1.
std::array<std::complex<double>, 8> n_functions(const WaveCoefficients& c);

// The eight gamma-function quotients, assembled in log space. A pole in a
// denominator gamma gives an exact zero; a pole in a numerator gamma throws
// PoleError naming the argument.
std::array<std::complex<double>, 8> s_functions(const WaveCoefficients& c);

// The four matching functions built from the 1/t0 continuation, with every
// printed (-1)^w t0^w pair evaluated as a single power of -t0 > 0 (plus the
// optional e^{i pi w sigma} debug phase).
std::array<std::complex<double>, 4> m_functions(const WaveCoefficients& c,
                                                int branch_sigma = 0);

// Single matching function (index 0..3), evaluating only its own gamma pair
// so that poles in the unused functions cannot interfere.
std::complex<double> m_function(int index, const WaveCoefficients& c,
                                int branch_sigma = 0);

// (D1/A1, B1/A1) from the continuity conditions at x = 0.
std::pair<std::complex<double>, std::complex<double>> amplitude_ratios(
    const WaveCoefficients& c, int branch_sigma = 0);

// T = |D1/A1|^2, R = |B1/A1|^2 for the symmetric barrier.
ScatteringResult transmission_reflection(double E, double M,
                                         const PotentialParams& params,
                                         const UnitSystem& units,
                                         const SolverSettings& settings = {});

// Continuum wave function with A1 = 1, C1 = 0 and the given ratios.
std::complex<double> scattering_wavefunction(
    double x, const WaveCoefficients& c,
    const std::pair<std::complex<double>, std::complex<double>>& ratios,
    const PotentialParams& params);

}  // namespace kgws
