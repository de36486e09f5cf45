#pragma once

#include <complex>
#include <vector>

#include "kgws/potential.hpp"

namespace kgws {

struct ScatteringResult {
    double T = 0.0;
    double R = 0.0;
    std::complex<double> d1_over_a1;
    std::complex<double> b1_over_a1;
    double energy = 0.0;
};

enum class Parity { even, odd };

struct BoundState {
    double energy = 0.0;
    Parity parity = Parity::even;
    int nodes = 0;
    // Estimated distance of the stored energy from the exact zero of the
    // quantization condition, in GeV (final Newton step).
    double condition_residual = 0.0;
};

struct Spectrum {
    std::vector<BoundState> states;
    PotentialParams params;
    double mass = 0.0;
};

struct SolverSettings {
    double scan_step = 0.005;          // GeV, bound-state energy scan
    double root_tol = 1e-10;           // GeV
    double series_tol = 1e-16;
    double conservation_tol = 1e-8;
    double band_edge_margin = 1e-6;    // fraction of Mc^2 excluded at edges
    // ODE oracle step: h <= min(alpha_factor/alpha, wave_factor/k_local_max).
    double ode_alpha_factor = 0.005;
    double ode_wave_factor = 0.01;
    double asymptotic_cut = 20.0;      // in units of 1/alpha beyond L
    // Debug knob: multiplies every combined (-1)^w t0^w factor by e^{i pi w s}.
    // Zero is the production convention; nonzero breaks unitarity on purpose
    // (negative control for the verification suite).
    int branch_sigma = 0;
};

}  // namespace kgws
