#pragma once

#include <complex>

namespace kgws {

using Complex = std::complex<double>;

// True if z lies within tol of a non-positive integer on the real axis.
bool near_nonpositive_integer(const Complex& z, double tol = 1e-12);

// True if x is within tol of any integer.
bool near_integer(const Complex& z, double tol = 1e-10);

// Principal branch of log Gamma(z), continuous off the cut (-inf, 0].
// Throws PoleError if z is numerically a non-positive integer.
Complex ln_gamma(const Complex& z);

// exp(e * Log(b)) with the principal Log, Im(Log) in (-pi, pi].
// Throws DomainError for 0^e with Re(e) <= 0.
Complex principal_pow(const Complex& base, const Complex& exponent);

// Gauss series sum_n (a)_n (b)_n / (c)_n z^n / n!, valid for |z| < 1 - margin.
// Terminates when the relative term drops below 1e-16 (two consecutive terms)
// or throws ConvergenceError at 10000 terms.
Complex hyp2f1_series(const Complex& a, const Complex& b, const Complex& c,
                      const Complex& z, double margin = 0.05);

// 2F1 on the cut plane C \ [1, inf): direct series for small |z|, the Pfaff
// map z/(z-1) on the left half ring, the two-term 1/z connection formula for
// large |z| (requires non-integer b-a; falls back to Pfaff where possible),
// and the Euler transformation as a last resort near the unit circle.
Complex hyp2f1(const Complex& a, const Complex& b, const Complex& c,
               const Complex& z);

// d/dz 2F1(a,b;c;z) = (ab/c) 2F1(a+1,b+1;c+1;z).
Complex hyp2f1_derivative(const Complex& a, const Complex& b, const Complex& c,
                          const Complex& z);

}  // namespace kgws
