#include "kgws/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kgws/errors.hpp"

namespace kgws {

namespace {

using Cx = std::complex<double>;

double local_wavenumber_max(double E, double mc2, double hbarc,
                            const std::function<double(double)>& V,
                            double x0, double x1) {
    double kmax = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double x = x0 + (x1 - x0) * i / 200.0;
        const double Q =
            ((E * E - mc2 * mc2) - 2.0 * (E + mc2) * V(x)) / (hbarc * hbarc);
        kmax = std::max(kmax, std::sqrt(std::abs(Q)));
    }
    return kmax;
}

// RK4 on the first-order system (phi, phi') with phi'' = -Q(x) phi.
// Calls `record` after every accepted step (and once for the initial state).
template <typename Record>
void rk4_sweep(double E, double mc2, double hbarc,
               const std::function<double(double)>& V, double x0, double x1,
               double step, Cx phi, Cx dphi, Record&& record) {
    const long n = std::max(1L, std::lround(std::abs(x1 - x0) / step));
    const double h = (x1 - x0) / static_cast<double>(n);
    auto q = [&](double x) {
        return ((E * E - mc2 * mc2) - 2.0 * (E + mc2) * V(x)) /
               (hbarc * hbarc);
    };
    record(x0, phi, dphi);
    double x = x0;
    for (long i = 0; i < n; ++i) {
        const double q1 = q(x);
        const double q2 = q(x + 0.5 * h);
        const double q3 = q(x + h);
        const Cx k1p = dphi, k1d = -q1 * phi;
        const Cx k2p = dphi + 0.5 * h * k1d, k2d = -q2 * (phi + 0.5 * h * k1p);
        const Cx k3p = dphi + 0.5 * h * k2d, k3d = -q2 * (phi + 0.5 * h * k2p);
        const Cx k4p = dphi + h * k3d, k4d = -q3 * (phi + h * k3p);
        phi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        dphi += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
        x = x0 + (i + 1) * h;
        record(x, phi, dphi);
    }
}

struct Endpoint {
    Cx phi, dphi;
};

Endpoint integrate_endpoint(double E, double mc2, double hbarc,
                            const std::function<double(double)>& V, double x0,
                            double x1, double step, Cx phi, Cx dphi) {
    Endpoint e{phi, dphi};
    rk4_sweep(E, mc2, hbarc, V, x0, x1, step, phi, dphi,
              [&](double, const Cx& p, const Cx& d) {
                  e.phi = p;
                  e.dphi = d;
              });
    return e;
}

double default_step(double E, double mc2, const UnitSystem& units,
                    const PotentialParams& params,
                    const SolverSettings& settings, double x0, double x1) {
    auto V = [&](double x) { return evaluate(params, x); };
    const double kmax =
        local_wavenumber_max(E, mc2, units.hbarc(), V, x0, x1);
    const double alpha = std::min(params.left.alpha, params.right.alpha);
    double h = settings.ode_alpha_factor / alpha;
    if (kmax > 0.0) h = std::min(h, settings.ode_wave_factor / kmax);
    return h;
}

}  // namespace

OdeSolution integrate_kg(double E, double M,
                         const std::function<double(double)>& potential,
                         const UnitSystem& units, double x_start, double x_end,
                         double step, Cx phi0, Cx dphi0) {
    if (!(step > 0.0)) throw StepSizeError("integrate_kg: step must be > 0");
    const double mc2 = M * units.c * units.c;
    const double kmax = local_wavenumber_max(E, mc2, units.hbarc(), potential,
                                             x_start, x_end);
    if (kmax > 0.0 && step > 0.05 / kmax) {
        throw StepSizeError(
            "integrate_kg: step " + std::to_string(step) +
            " cannot resolve the local wavelength (need <= " +
            std::to_string(0.05 / kmax) + ")");
    }
    OdeSolution sol;
    sol.energy = E;
    rk4_sweep(E, mc2, units.hbarc(), potential, x_start, x_end, step, phi0,
              dphi0, [&](double x, const Cx& p, const Cx& d) {
                  sol.x.push_back(x);
                  sol.phi.push_back(p);
                  sol.dphi.push_back(d);
              });
    return sol;
}

OdeSolution integrate_kg(double E, double M, const PotentialParams& params,
                         const UnitSystem& units, double x_start, double x_end,
                         double step, Cx phi0, Cx dphi0) {
    const double alpha = std::min(params.left.alpha, params.right.alpha);
    if (step > 0.01 / alpha) {
        throw StepSizeError(
            "integrate_kg: step cannot resolve the potential edge (need <= "
            "0.01/alpha)");
    }
    return integrate_kg(E, M,
                        [&params](double x) { return evaluate(params, x); },
                        units, x_start, x_end, step, phi0, dphi0);
}

ScatteringResult oracle_transmission(double E, double M,
                                     const PotentialParams& params,
                                     const UnitSystem& units,
                                     const SolverSettings& settings) {
    const double mc2 = M * units.c * units.c;
    if (!(E > mc2)) {
        throw DomainError("oracle_transmission: need E > Mc^2");
    }
    const double cut_left =
        params.left.L + settings.asymptotic_cut / params.left.alpha;
    const double cut_right =
        params.right.L + settings.asymptotic_cut / params.right.alpha;
    const double x0 = -cut_left, x1 = cut_right;
    const double h = default_step(E, mc2, units, params, settings, x0, x1);
    const double kph = std::sqrt(E * E - mc2 * mc2) / units.hbarc();

    auto V = [&](double x) { return evaluate(params, x); };
    // Backward from a unit outgoing wave; forward integration under a barrier
    // would be contaminated by the growing solution.
    const Cx phi1 = std::exp(Cx(0.0, kph * x1));
    const Endpoint left = integrate_endpoint(E, mc2, units.hbarc(), V, x1, x0,
                                             h, phi1, Cx(0.0, kph) * phi1);

    const Cx ik(0.0, kph);
    const Cx a = std::exp(-ik * x0) * (ik * left.phi + left.dphi) / (2.0 * ik);
    const Cx b = std::exp(ik * x0) * (ik * left.phi - left.dphi) / (2.0 * ik);

    ScatteringResult r;
    r.energy = E;
    r.d1_over_a1 = 1.0 / a;
    r.b1_over_a1 = b / a;
    r.T = std::norm(r.d1_over_a1);
    r.R = std::norm(r.b1_over_a1);
    return r;
}

namespace {

struct ShootState {
    Cx phi0_left, dphi0_left;    // left solution at x = 0
    Cx phi0_right, dphi0_right;  // right solution at x = 0
};

ShootState shoot_both(double E, double mc2, const UnitSystem& units,
                      const PotentialParams& params, double h, double cut_l,
                      double cut_r) {
    auto V = [&](double x) { return evaluate(params, x); };
    const double kappa = std::sqrt(mc2 * mc2 - E * E) / units.hbarc();
    ShootState s;
    const Endpoint l = integrate_endpoint(E, mc2, units.hbarc(), V, -cut_l,
                                          0.0, h, Cx(1.0, 0.0),
                                          Cx(kappa, 0.0));
    const Endpoint r = integrate_endpoint(E, mc2, units.hbarc(), V, cut_r, 0.0,
                                          h, Cx(1.0, 0.0), Cx(-kappa, 0.0));
    s.phi0_left = l.phi;
    s.dphi0_left = l.dphi;
    s.phi0_right = r.phi;
    s.dphi0_right = r.dphi;
    return s;
}

double wronskian_at_origin(double E, double mc2, const UnitSystem& units,
                           const PotentialParams& params, double h,
                           double cut_l, double cut_r) {
    const ShootState s = shoot_both(E, mc2, units, params, h, cut_l, cut_r);
    // Normalize both sides so the scan stays in range across the interval.
    const double nl = std::hypot(std::abs(s.phi0_left), std::abs(s.dphi0_left));
    const double nr =
        std::hypot(std::abs(s.phi0_right), std::abs(s.dphi0_right));
    const Cx w = s.phi0_left / nl * (s.dphi0_right / nr) -
                 (s.dphi0_left / nl) * (s.phi0_right / nr);
    return w.real();
}

}  // namespace

Spectrum oracle_spectrum(const PotentialParams& params, double M,
                         const UnitSystem& units,
                         const SolverSettings& settings) {
    const double mc2 = M * units.c * units.c;
    const double eps = settings.band_edge_margin * mc2;
    const double cut_l =
        params.left.L + settings.asymptotic_cut / params.left.alpha;
    const double cut_r =
        params.right.L + settings.asymptotic_cut / params.right.alpha;

    // One conservative step for the whole scan: resolve the shortest
    // wavelength that occurs anywhere in the interval.
    auto V = [&](double x) { return evaluate(params, x); };
    double kmax = 0.0;
    for (double E : {-mc2 + eps, 0.0, mc2 - eps}) {
        kmax = std::max(kmax, local_wavenumber_max(E, mc2, units.hbarc(), V,
                                                   -cut_l, cut_r));
    }
    const double alpha = std::min(params.left.alpha, params.right.alpha);
    const double h = std::min(settings.ode_alpha_factor / alpha,
                              settings.ode_wave_factor / kmax);

    auto w = [&](double E) {
        return wronskian_at_origin(E, mc2, units, params, h, cut_l, cut_r);
    };

    std::vector<double> grid;
    for (double E = -mc2 + eps; E < mc2 - eps; E += settings.scan_step) {
        grid.push_back(E);
    }
    grid.push_back(mc2 - eps);
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = w(grid[i]);

    Spectrum spec;
    spec.params = params;
    spec.mass = M;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (!std::isfinite(vals[i]) || !std::isfinite(vals[i + 1])) continue;
        if ((vals[i] < 0.0) == (vals[i + 1] < 0.0)) continue;
        double a = grid[i], b = grid[i + 1], fa = vals[i];
        for (int it = 0; it < 80 && (b - a) > 1e-12; ++it) {
            const double m = 0.5 * (a + b);
            const double fm = w(m);
            if ((fa < 0.0) == (fm < 0.0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        BoundState s;
        s.energy = 0.5 * (a + b);
        s.condition_residual = 0.5 * (b - a);
        spec.states.push_back(s);
    }
    if (spec.states.empty()) {
        throw NoBracketError("oracle_spectrum: no Wronskian roots found");
    }
    std::sort(spec.states.begin(), spec.states.end(),
              [](const BoundState& a, const BoundState& b) {
                  return a.energy < b.energy;
              });

    // Assemble each eigenfunction for node counting: glue the right solution
    // to the left one at the origin, scaling by value or slope, whichever is
    // better conditioned.
    for (auto& s : spec.states) {
        std::vector<double> xs, phis;
        auto record_left = [&](double x, const Cx& p, const Cx&) {
            xs.push_back(x);
            phis.push_back(p.real());
        };
        const double kappa =
            std::sqrt(mc2 * mc2 - s.energy * s.energy) / units.hbarc();
        rk4_sweep(s.energy, mc2, units.hbarc(), V, -cut_l, 0.0, h,
                  Cx(1.0, 0.0), Cx(kappa, 0.0), record_left);
        const Cx l_phi = phis.empty() ? Cx(0.0) : Cx(phis.back(), 0.0);

        std::vector<double> xr, phir;
        Cx r_phi0, r_dphi0, l_dphi0;
        {
            const ShootState st = shoot_both(s.energy, mc2, units, params, h,
                                             cut_l, cut_r);
            r_phi0 = st.phi0_right;
            r_dphi0 = st.dphi0_right;
            l_dphi0 = st.dphi0_left;
        }
        rk4_sweep(s.energy, mc2, units.hbarc(), V, cut_r, 0.0, h, Cx(1.0, 0.0),
                  Cx(-kappa, 0.0), [&](double x, const Cx& p, const Cx&) {
                      xr.push_back(x);
                      phir.push_back(p.real());
                  });
        double scale;
        if (std::abs(r_phi0) * kappa > std::abs(r_dphi0)) {
            scale = l_phi.real() / r_phi0.real();
        } else {
            scale = l_dphi0.real() / r_dphi0.real();
        }
        std::vector<double> full = phis;
        for (auto it = phir.rbegin(); it != phir.rend(); ++it) {
            full.push_back(*it * scale);
        }
        // count sign changes, same noise-band rule as the analytic path
        double peak = 0.0;
        for (double v : full) peak = std::max(peak, std::abs(v));
        int nodes = 0, last = 0;
        for (double v : full) {
            if (std::abs(v) <= 1e-9 * peak) continue;
            const int sg = v > 0.0 ? 1 : -1;
            if (last != 0 && sg != last) ++nodes;
            last = sg;
        }
        s.nodes = nodes;
        s.parity = (nodes % 2 == 0) ? Parity::even : Parity::odd;
    }
    return spec;
}

}  // namespace kgws
