#include "kgws/bound.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "kgws/errors.hpp"
#include "kgws/special.hpp"

namespace kgws {

namespace {

constexpr double kResidualImagSlack = 1e-6;

double real_residual(const Complex& value, const char* which) {
    if (std::abs(value.imag()) > kResidualImagSlack * std::abs(value.real()) +
                                     1e-12) {
        throw ComplexResidualError(
            std::string(which) +
            ": residual has a non-negligible imaginary part (branch "
            "misconfiguration?)");
    }
    return value.real();
}

Complex condition_bracket(const WaveCoefficients& c, int sigma) {
    const Complex m2 = m_function(1, c, sigma);
    const Complex m4 = m_function(3, c, sigma);
    const Complex mu = c.mu, nu = c.nu, lam = c.lambda;
    return (-mu / c.t0 - nu / (1.0 - c.t0)) * m2 +
           ((-mu + nu) * (-mu + nu) - lam * lam) / (1.0 - 2.0 * mu) * m4;
}

}  // namespace

BoundCoefficients bound_coefficients(double E, double M,
                                     const PotentialParams& params,
                                     const UnitSystem& units) {
    const double mc2 = M * units.c * units.c;
    if (!(E > -mc2 && E < mc2)) {
        throw DomainError("bound_coefficients: E outside (-Mc^2, Mc^2)");
    }
    if (!params.symmetric(1e-14)) {
        throw DomainError("bound states require the symmetric potential");
    }
    const SideParams& s = params.right;
    const double ahc = s.alpha * units.hbarc();
    const double e2 = E * E - mc2 * mc2;  // < 0 here
    const double pref = 2.0 * (E + mc2) / (ahc * ahc);

    BoundCoefficients b;
    b.K = std::sqrt(-e2) / ahc;
    b.mu = Complex(-b.K, 0.0);
    b.nu = 0.5 + std::sqrt(Complex(
                     0.25 + pref * ((s.V2 + s.eta * s.C * s.C) / (s.q * s.q) -
                                    (s.eta * s.D / s.p) *
                                        (2.0 * s.C / s.q - s.D / s.p))));
    const double omega2_sq =
        e2 / (ahc * ahc) -
        pref * ((s.V1 - s.V2 / s.q) / s.q - s.xi * (s.A / s.q - s.B / s.p) -
                s.eta * (s.C * s.C / (s.q * s.q) - s.D * s.D / (s.p * s.p)));
    b.lambda = Complex(0.0, 1.0) * std::sqrt(Complex(omega2_sq));

    b.as_wave.mu = b.mu;
    b.as_wave.k = b.K;
    b.as_wave.nu = b.nu;
    b.as_wave.lambda = b.lambda;
    b.as_wave.omega0_sq = -e2 / (ahc * ahc);
    b.as_wave.omega2_sq = omega2_sq;
    b.as_wave.ln_minus_t0 = std::log(s.p / s.q) + s.alpha * s.L;
    b.as_wave.t0 = -std::exp(std::min(b.as_wave.ln_minus_t0, 709.0));
    b.t0 = b.as_wave.t0;
    return b;
}

double even_condition(double E, const BoundProblem& problem) {
    const BoundCoefficients b =
        bound_coefficients(E, problem.mass, problem.params, problem.units);
    return real_residual(
        condition_bracket(b.as_wave, problem.settings.branch_sigma),
        "even_condition");
}

double odd_condition(double E, const BoundProblem& problem) {
    const BoundCoefficients b =
        bound_coefficients(E, problem.mass, problem.params, problem.units);
    return real_residual(
        m_function(1, b.as_wave, problem.settings.branch_sigma),
        "odd_condition");
}

namespace {

struct RefinedRoot {
    double energy;
    double residual;  // final Newton step, GeV
};

// Bisection to a narrow bracket, then Newton with a central-difference
// derivative. Pole crossings masquerade as sign changes; they are rejected
// because |f| grows instead of shrinking toward the crossing.
bool refine_root(const std::function<double(double)>& f, double a, double b,
                 double fa, double fb, double root_tol, RefinedRoot& out) {
    const double fa0 = std::abs(fa), fb0 = std::abs(fb);
    for (int i = 0; i < 80 && (b - a) > 1e-6; ++i) {
        const double m = 0.5 * (a + b);
        double fm;
        try {
            fm = f(m);
        } catch (const SolverError&) {
            return false;
        }
        if (!std::isfinite(fm)) return false;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    double x = 0.5 * (a + b);
    double fx = f(x);
    if (std::abs(fx) > 10.0 * std::min(fa0, fb0)) {
        return false;  // pole, not a root
    }
    const double h = 1e-7;
    double step = b - a;
    for (int i = 0; i < 60; ++i) {
        const double d = (f(x + h) - f(x - h)) / (2.0 * h);
        if (d == 0.0 || !std::isfinite(d)) break;
        step = fx / d;
        double xn = x - step;
        if (xn <= a || xn >= b) {
            // Newton left the bracket: fall back to a bisection move.
            xn = 0.5 * (a + b);
            step = x - xn;
        }
        const double fn = f(xn);
        if ((fa < 0.0) == (fn < 0.0)) {
            a = xn;
        } else {
            b = xn;
        }
        x = xn;
        fx = fn;
        if (std::abs(step) < root_tol) {
            out.energy = x;
            out.residual = std::abs(step);
            return true;
        }
    }
    throw NonConvergedRootError(
        "scan_spectrum: root refinement stalled near E = " +
        std::to_string(x) + " (last step " + std::to_string(step) + " GeV)");
}

std::vector<double> wavefunction_samples(const BoundState& s,
                                         const BoundProblem& problem,
                                         int n_samples) {
    const SideParams& sp = problem.params.right;
    const double half = sp.L + 10.0 / sp.alpha;
    std::vector<double> phi(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double x = -half + 2.0 * half * i / (n_samples - 1);
        phi[i] = bound_wavefunction(s, x, problem);
    }
    return phi;
}

}  // namespace

Spectrum scan_spectrum(const PotentialParams& params, double M,
                       const UnitSystem& units,
                       const SolverSettings& settings) {
    const double mc2 = M * units.c * units.c;
    const double eps = settings.band_edge_margin * mc2;
    BoundProblem problem{params, M, units, settings};

    const auto fe = [&](double E) { return even_condition(E, problem); };
    const auto fo = [&](double E) { return odd_condition(E, problem); };

    std::vector<double> grid;
    for (double E = -mc2 + eps; E < mc2 - eps; E += settings.scan_step) {
        grid.push_back(E);
    }
    grid.push_back(mc2 - eps);

    std::vector<double> ve(grid.size()), vo(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        try {
            ve[i] = fe(grid[i]);
        } catch (const SolverError&) {
            ve[i] = std::numeric_limits<double>::quiet_NaN();
        }
        try {
            vo[i] = fo(grid[i]);
        } catch (const SolverError&) {
            vo[i] = std::numeric_limits<double>::quiet_NaN();
        }
    }

    Spectrum spec;
    spec.params = params;
    spec.mass = M;

    auto harvest = [&](const std::vector<double>& v,
                       const std::function<double(double)>& f, Parity parity) {
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            if (!std::isfinite(v[i]) || !std::isfinite(v[i + 1])) continue;
            if ((v[i] < 0.0) == (v[i + 1] < 0.0)) continue;
            RefinedRoot root{};
            if (!refine_root(f, grid[i], grid[i + 1], v[i], v[i + 1],
                             settings.root_tol, root)) {
                continue;
            }
            BoundState s;
            s.energy = root.energy;
            s.parity = parity;
            s.condition_residual = root.residual;
            spec.states.push_back(s);
        }
    };
    harvest(ve, fe, Parity::even);
    harvest(vo, fo, Parity::odd);

    if (spec.states.empty()) {
        throw NoBracketError("scan_spectrum: no quantization roots in the "
                             "bound interval");
    }
    std::sort(spec.states.begin(), spec.states.end(),
              [](const BoundState& a, const BoundState& b) {
                  return a.energy < b.energy;
              });

    for (auto& s : spec.states) {
        const auto phi = wavefunction_samples(s, problem, 2001);
        s.nodes = count_nodes(phi);
    }
    return spec;
}

double bound_wavefunction(const BoundState& state, double x,
                          const BoundProblem& problem) {
    const BoundCoefficients b =
        bound_coefficients(state.energy, problem.mass, problem.params,
                           problem.units);
    const Complex mu = b.mu, nu = b.nu, lam = b.lambda;
    const double d1 = state.parity == Parity::even ? 1.0 : -1.0;

    auto piece = [&](const SideParams& s, double u, double coeff) {
        const double abs_z = (s.p / s.q) * std::exp(u);
        const Complex z(-abs_z, 0.0);
        const Complex f = hyp2f1(-mu + nu + lam, -mu + nu - lam,
                                 1.0 - 2.0 * mu, z);
        const Complex value = coeff *
                              std::exp(-mu * std::log(abs_z)) *
                              std::pow(Complex(1.0 + abs_z, 0.0), nu) * f;
        if (std::abs(value.imag()) >
            1e-8 * (std::abs(value.real()) + 1e-300)) {
            throw ComplexResidualError(
                "bound_wavefunction: non-real value encountered");
        }
        return value.real();
    };

    if (x < 0.0) {
        return piece(problem.params.left,
                     problem.params.left.alpha * (x + problem.params.left.L),
                     1.0);
    }
    if (x > 0.0) {
        return piece(problem.params.right,
                     problem.params.right.alpha * (problem.params.right.L - x),
                     d1);
    }
    const double l = piece(problem.params.left,
                           problem.params.left.alpha * problem.params.left.L,
                           1.0);
    const double r = piece(problem.params.right,
                           problem.params.right.alpha * problem.params.right.L,
                           d1);
    return 0.5 * (l + r);
}

int count_nodes(std::span<const double> phi_samples) {
    double peak = 0.0;
    for (double v : phi_samples) peak = std::max(peak, std::abs(v));
    const double band = 1e-9 * peak;
    int nodes = 0;
    int last_sign = 0;
    for (double v : phi_samples) {
        if (std::abs(v) <= band) continue;
        const int s = v > 0.0 ? 1 : -1;
        if (last_sign != 0 && s != last_sign) ++nodes;
        last_sign = s;
    }
    return nodes;
}

}  // namespace kgws
