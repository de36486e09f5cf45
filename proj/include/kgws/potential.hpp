#pragma once

#include <iosfwd>
#include <string>
#include <utility>

namespace kgws {

struct UnitSystem {
    double hbar = 1.0;
    double c = 1.0;
    double hbarc() const { return hbar * c; }
};

// The 12 free parameters describing one side of the potential.
// Energies (V1, V2, A, B) in GeV, C and D in sqrt(GeV), alpha in GeV (inverse
// length in natural units), L in 1/GeV, and q, p, xi, eta dimensionless.
struct SideParams {
    double alpha = 1.0;
    double L = 0.0;
    double V1 = 0.0;
    double V2 = 0.0;
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
    double D = 0.0;
    double q = 1.0;
    double p = 1.0;
    double xi = 0.0;
    double eta = 0.0;
};

// Full 26-parameter set: `left` governs x < 0, `right` governs x > 0.
// The constant offsets v0_left / v0_right are derived, never free; they are
// caches filled by derive_v0 so that V(x) -> 0 at both infinities.
struct PotentialParams {
    SideParams left;
    SideParams right;
    double v0_left = 0.0;
    double v0_right = 0.0;

    bool symmetric(double tol = 0.0) const;
};

// Throws DomainError on invariant violations (q, p zero; alpha <= 0; L < 0).
void validate(const SideParams& side);

// Computes the two constant offsets from the locality constraint and stores
// them into the caches. Returns (v0_left, v0_right).
std::pair<double, double> derive_v0(PotentialParams& params);

// Builds the symmetric potential from one set of 12 free parameters.
PotentialParams make_symmetric(const SideParams& half);

// Exact potential value at x, in GeV. The step-function split is averaged at
// x = 0. Exponential arguments beyond 700 are replaced by their algebraic
// limit instead of overflowing.
double evaluate(const PotentialParams& params, double x);

// Flat key = value configuration file: keys alpha, L, V1, V2, A, B, C, D, q,
// p, xi, eta, mass, plus optional tilde_* overrides for the left side.
struct ConfigData {
    PotentialParams params;
    double mass = 0.0;
    bool has_mass = false;
    bool asymmetric = false;
};

// Throws ConfigError carrying the offending line number.
ConfigData parse_config(std::istream& in);
ConfigData load_config(const std::string& path);

}  // namespace kgws
