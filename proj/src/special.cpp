#include "kgws/special.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "kgws/errors.hpp"

namespace kgws {

namespace {

constexpr double kLnGammaPoleTol = 1e-12;
constexpr double kDegenerateTol = 1e-10;
constexpr double kSeriesTol = 1e-16;
constexpr int kSeriesMaxTerms = 10000;

// Lanczos approximation, g = 607/128, 15 terms. Relative accuracy is a few
// ulp across the right half plane.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczosC = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

Complex lanczos_right_half(const Complex& z) {
    Complex acc = kLanczosC[0];
    for (std::size_t i = 1; i < kLanczosC.size(); ++i) {
        acc += kLanczosC[i] / (z - 1.0 + static_cast<double>(i));
    }
    const Complex t = z + (kLanczosG - 0.5);
    return 0.5 * std::log(2.0 * M_PI) + (z - 0.5) * std::log(t) - t +
           std::log(acc);
}

}  // namespace

bool near_nonpositive_integer(const Complex& z, double tol) {
    if (std::abs(z.imag()) > tol) return false;
    const double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) < tol;
}

bool near_integer(const Complex& z, double tol) {
    return std::abs(z.imag()) < tol &&
           std::abs(z.real() - std::round(z.real())) < tol;
}

Complex ln_gamma(const Complex& z) {
    if (near_nonpositive_integer(z, kLnGammaPoleTol)) {
        throw PoleError("ln_gamma pole at z = (" + std::to_string(z.real()) +
                        ", " + std::to_string(z.imag()) + ")");
    }
    if (z.real() >= 0.5) return lanczos_right_half(z);
    // Shift into the right half plane. For Im(z) != 0 every principal log on
    // the way stays in one half plane, so the result is the continuous branch.
    const int n = static_cast<int>(std::ceil(0.5 - z.real()));
    Complex acc = 0.0;
    for (int k = 0; k < n; ++k) {
        acc += std::log(z + static_cast<double>(k));
    }
    return lanczos_right_half(z + static_cast<double>(n)) - acc;
}

Complex principal_pow(const Complex& base, const Complex& exponent) {
    if (base == Complex(0.0, 0.0)) {
        if (exponent.real() > 0.0) return {0.0, 0.0};
        throw DomainError("principal_pow: 0 raised to exponent with Re <= 0");
    }
    return std::exp(exponent * std::log(base));
}

Complex hyp2f1_series(const Complex& a, const Complex& b, const Complex& c,
                      const Complex& z, double margin) {
    if (near_nonpositive_integer(c, kLnGammaPoleTol)) {
        throw PoleError("hyp2f1_series: c is a non-positive integer");
    }
    if (std::abs(z) >= 1.0 - margin) {
        throw DomainError("hyp2f1_series: |z| outside the convergence margin");
    }
    // compensated summation; the mid-ring identities need the extra digit
    Complex sum = 1.0;
    Complex comp = 0.0;
    Complex term = 1.0;
    bool prev_small = false;
    for (int n = 0; n < kSeriesMaxTerms; ++n) {
        const double dn = static_cast<double>(n);
        term *= (a + dn) * (b + dn) * z / ((c + dn) * (dn + 1.0));
        const Complex y = term - comp;
        const Complex t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        const bool small =
            std::abs(term) <= kSeriesTol * std::max(1.0, std::abs(sum));
        if (small && prev_small) return sum;
        prev_small = small;
    }
    throw ConvergenceError("hyp2f1_series: term cap reached");
}

namespace {

// One term of the 1/z connection formula. Gamma poles in the denominator
// kill the term exactly; poles in Gamma(b-a)/Gamma(a-b) are excluded by the
// degeneracy check in the dispatcher.
Complex connection_term(const Complex& num1, const Complex& num2,
                        const Complex& den1, const Complex& den2,
                        const Complex& power_base, const Complex& power_expo,
                        const Complex& sa, const Complex& sb,
                        const Complex& sc, const Complex& sz) {
    if (near_nonpositive_integer(den1, kLnGammaPoleTol) ||
        near_nonpositive_integer(den2, kLnGammaPoleTol)) {
        return {0.0, 0.0};
    }
    const Complex lg =
        ln_gamma(num1) + ln_gamma(num2) - ln_gamma(den1) - ln_gamma(den2);
    return std::exp(lg + power_expo * std::log(power_base)) *
           hyp2f1_series(sa, sb, sc, sz, 0.04);
}

Complex pfaff(const Complex& a, const Complex& b, const Complex& c,
              const Complex& z, const Complex& w) {
    return principal_pow(1.0 - z, -a) * hyp2f1_series(a, c - b, c, w, 0.04);
}

}  // namespace

Complex hyp2f1(const Complex& a, const Complex& b, const Complex& c,
               const Complex& z) {
    if (near_nonpositive_integer(c, kLnGammaPoleTol)) {
        throw PoleError("hyp2f1: c is a non-positive integer");
    }
    if (z == Complex(0.0, 0.0)) return {1.0, 0.0};
    if (a == Complex(0.0, 0.0) || b == Complex(0.0, 0.0)) return {1.0, 0.0};
    if (std::abs(z.imag()) < 1e-13 && z.real() >= 1.0 - 1e-13) {
        throw DomainError("hyp2f1: z on the branch cut [1, inf)");
    }

    const double az = std::abs(z);
    const Complex w = z / (z - 1.0);
    const double aw = std::abs(w);
    const bool degenerate = near_integer(b - a, kDegenerateTol);

    if (az < 0.3) return hyp2f1_series(a, b, c, z);
    // The Pfaff map is much better conditioned than the alternating direct
    // series on the left half plane, so prefer it whenever it shrinks the
    // argument decisively.
    if (az <= 2.0 && aw < std::min(az, 0.72)) return pfaff(a, b, c, z, w);
    if (az < 0.95) return hyp2f1_series(a, b, c, z);

    if (az > 1.05 && !degenerate) {
        const Complex inv = 1.0 / z;
        const Complex t1 =
            connection_term(c, b - a, b, c - a, -z, -a,
                            a, 1.0 + a - c, 1.0 + a - b, inv);
        const Complex t2 =
            connection_term(c, a - b, a, c - b, -z, -b,
                            b, 1.0 + b - c, 1.0 + b - a, inv);
        return t1 + t2;
    }
    if (aw < 0.95) return pfaff(a, b, c, z, w);
    if (az > 1.05) {
        throw DegenerateParamsError(
            "hyp2f1: b-a within tolerance of an integer and no alternate "
            "route applies");
    }
    // Remaining sliver of the 0.95..1.05 band: Euler transformation, series
    // convergence permitting.
    return principal_pow(1.0 - z, c - a - b) *
           hyp2f1_series(c - a, c - b, c, z, 0.04);
}

Complex hyp2f1_derivative(const Complex& a, const Complex& b, const Complex& c,
                          const Complex& z) {
    if (c == Complex(0.0, 0.0)) {
        throw PoleError("hyp2f1_derivative: c = 0");
    }
    if (a == Complex(0.0, 0.0) || b == Complex(0.0, 0.0)) return {0.0, 0.0};
    return (a * b / c) * hyp2f1(a + 1.0, b + 1.0, c + 1.0, z);
}

}  // namespace kgws
