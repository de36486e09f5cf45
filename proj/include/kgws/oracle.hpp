#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "kgws/potential.hpp"
#include "kgws/results.hpp"

namespace kgws {

// Direct numerical treatment of the wave equation
//   phi'' + [(E^2 - M^2 c^4) - 2 (E + M c^2) V(x)] / (hbar c)^2 phi = 0.
// Shares no special-function code with the analytic path; it only sees the
// potential and plain arithmetic.

struct OdeSolution {
    std::vector<double> x;
    std::vector<std::complex<double>> phi;
    std::vector<std::complex<double>> dphi;
    double energy = 0.0;
};

// Fixed-step classical 4th-order integration from x_start to x_end (either
// direction) with initial data (phi0, dphi0) at x_start. Throws StepSizeError
// if the step cannot resolve the local wavelength (0.05 / k_local_max).
OdeSolution integrate_kg(double E, double M,
                         const std::function<double(double)>& potential,
                         const UnitSystem& units, double x_start, double x_end,
                         double step, std::complex<double> phi0,
                         std::complex<double> dphi0);

// Same, with the potential-edge resolution requirement step <= 0.01/alpha.
OdeSolution integrate_kg(double E, double M, const PotentialParams& params,
                         const UnitSystem& units, double x_start, double x_end,
                         double step, std::complex<double> phi0,
                         std::complex<double> dphi0);

// Transmission by backward integration from a pure outgoing wave, decomposed
// into incident/reflected plane waves at the far left.
ScatteringResult oracle_transmission(double E, double M,
                                     const PotentialParams& params,
                                     const UnitSystem& units,
                                     const SolverSettings& settings = {});

// Bound spectrum by two-sided shooting: decaying initial data on both
// asymptotes, eigenvalues where the Wronskian of the two solutions vanishes
// at x = 0. Node counts come from the assembled solution.
Spectrum oracle_spectrum(const PotentialParams& params, double M,
                         const UnitSystem& units,
                         const SolverSettings& settings = {});

}  // namespace kgws
