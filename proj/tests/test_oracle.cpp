#include "kgws/oracle.hpp"

#include <cmath>
#include <complex>

#include "doctest.h"
#include "kgws/errors.hpp"

using Cx = std::complex<double>;

namespace {

kgws::SideParams study_barrier() {
    kgws::SideParams s;
    s.alpha = 2.0;
    s.L = 4.0;
    s.V1 = 1.0;
    s.V2 = 0.2;
    s.A = 0.1;
    s.B = 1.0;
    s.C = 0.1;
    s.D = 10.0;
    s.q = 0.8;
    s.p = 8.0;
    s.xi = 5.0;
    s.eta = 10.0;
    return s;
}

const kgws::UnitSystem natural{};

}  // namespace

TEST_CASE("free particle is an exact plane wave") {
    kgws::SideParams zero;
    zero.alpha = 2.0;
    zero.L = 4.0;
    zero.q = 0.8;
    zero.p = 8.0;
    auto params = kgws::make_symmetric(zero);

    const double E = 10.0, M = 2.0;
    const double k = std::sqrt(E * E - M * M);
    const double x1 = 100.0 * 2.0 * M_PI / k;  // 100 wavelengths
    const auto sol = kgws::integrate_kg(E, M, params, natural, 0.0, x1,
                                        2.5e-4, Cx(1.0, 0.0), Cx(0.0, k));
    const Cx exact = std::exp(Cx(0.0, k * sol.x.back()));
    CHECK(std::abs(std::abs(sol.phi.back()) - 1.0) < 1e-7);
    CHECK(std::abs(sol.phi.back() - exact) < 1e-5);
}

TEST_CASE("constant potential gives the textbook growth rate") {
    const double E = 2.5, M = 2.0, v0 = 5.0;
    const double kappa = std::sqrt(2.0 * (E + M) * v0 - (E * E - M * M));
    const auto sol = kgws::integrate_kg(
        E, M, [v0](double) { return v0; }, natural, 0.0, 3.0, 1e-4,
        Cx(1.0, 0.0), Cx(kappa, 0.0));
    CHECK(std::abs(sol.phi.back().real() - std::exp(3.0 * kappa)) <
          1e-5 * std::exp(3.0 * kappa));
}

TEST_CASE("barrier solution stays finite") {
    auto params = kgws::make_symmetric(study_barrier());
    const double cut = params.right.L + 20.0 / params.right.alpha;
    const auto sol = kgws::integrate_kg(34.75, 2.0, params, natural, -cut,
                                        cut, 5e-4, Cx(1.0, 0.0),
                                        Cx(0.0, 1.0));
    for (const auto& p : sol.phi) {
        CHECK(std::isfinite(p.real()));
        CHECK(std::isfinite(p.imag()));
    }
}

TEST_CASE("step size preconditions") {
    auto params = kgws::make_symmetric(study_barrier());
    CHECK_THROWS_AS(kgws::integrate_kg(34.75, 2.0, params, natural, -10.0,
                                       10.0, 0.1, Cx(1.0, 0.0), Cx(0.0, 1.0)),
                    kgws::StepSizeError);
}

TEST_CASE("Wronskian of two independent solutions is constant") {
    // Above-barrier energy: both solutions stay O(1), so the conserved
    // Wronskian is not drowned by exponentially growing factors.
    auto params = kgws::make_symmetric(study_barrier());
    const double E = 40.0, M = 2.0;
    const auto s1 = kgws::integrate_kg(E, M, params, natural, -8.0, 8.0, 7e-5,
                                       Cx(1.0, 0.0), Cx(0.0, 0.0));
    const auto s2 = kgws::integrate_kg(E, M, params, natural, -8.0, 8.0, 7e-5,
                                       Cx(0.0, 0.0), Cx(1.0, 0.0));
    const Cx w0 = s1.phi.front() * s2.dphi.front() -
                  s1.dphi.front() * s2.phi.front();
    for (std::size_t i = 0; i < s1.x.size(); i += 5000) {
        const Cx w = s1.phi[i] * s2.dphi[i] - s1.dphi[i] * s2.phi[i];
        CHECK(std::abs(w - w0) < 1e-7 * std::abs(w0));
    }
}

TEST_CASE("transparent potential transmits everything") {
    kgws::SideParams zero;
    zero.alpha = 2.0;
    zero.L = 4.0;
    zero.q = 0.8;
    zero.p = 8.0;
    const auto r = kgws::oracle_transmission(10.0, 2.0,
                                             kgws::make_symmetric(zero),
                                             natural);
    CHECK(std::abs(r.T - 1.0) < 1e-7);
    CHECK(r.R < 1e-7);
}

TEST_CASE("reference transmission through the barrier") {
    auto params = kgws::make_symmetric(study_barrier());
    const auto r = kgws::oracle_transmission(34.75, 2.0, params, natural);
    // frozen from the independent continuation route
    CHECK(r.T == doctest::Approx(1.386441786e-4).epsilon(1e-4));
    CHECK(std::abs(r.T + r.R - 1.0) < 1e-6);
}

TEST_CASE("oracle conserves flux across energies") {
    auto params = kgws::make_symmetric(study_barrier());
    for (double E : {2.5, 20.0, 36.0, 50.0}) {
        const auto r = kgws::oracle_transmission(E, 2.0, params, natural);
        CHECK(std::abs(r.T + r.R - 1.0) < 1e-6);
    }
}

TEST_CASE("halving the step barely moves T") {
    auto params = kgws::make_symmetric(study_barrier());
    kgws::SolverSettings fine;
    fine.ode_alpha_factor /= 2.0;
    fine.ode_wave_factor /= 2.0;
    const auto a = kgws::oracle_transmission(36.0, 2.0, params, natural);
    const auto b = kgws::oracle_transmission(36.0, 2.0, params, natural,
                                             fine);
    CHECK(std::abs(a.T - b.T) < 1e-6);
}

TEST_CASE("nearly rectangular well matches the transcendental roots") {
    // A steep-edged attractive configuration approximates the rectangular
    // well, whose eigenvalues solve k tan(k a) = kappa (even) and
    // k cot(k a) = -kappa (odd) with k^2 = (E^2 - M^2) + 2(E + M) V0 and
    // kappa^2 = M^2 - E^2.
    kgws::SideParams s;
    s.alpha = 12.0;
    s.L = 2.0;
    s.V1 = -4.0;  // V0 = -5: depth-5 well
    s.q = 0.8;
    s.p = 8.0;
    auto params = kgws::make_symmetric(s);
    REQUIRE(params.v0_right == doctest::Approx(-5.0));

    const double M = 2.0, depth = 5.0;
    const double a = s.L + std::log(s.p / s.q) / s.alpha;  // half-height point

    auto even_f = [&](double E) {
        const double k = std::sqrt((E * E - M * M) + 2.0 * (E + M) * depth);
        const double kp = std::sqrt(M * M - E * E);
        return k * std::tan(k * a) - kp;
    };
    auto odd_f = [&](double E) {
        const double k = std::sqrt((E * E - M * M) + 2.0 * (E + M) * depth);
        const double kp = std::sqrt(M * M - E * E);
        return k / std::tan(k * a) + kp;
    };
    auto bisect = [](auto f, double lo, double hi) {
        double flo = f(lo);
        for (int i = 0; i < 200; ++i) {
            const double m = 0.5 * (lo + hi);
            const double fm = f(m);
            if ((flo < 0.0) == (fm < 0.0)) {
                lo = m;
                flo = fm;
            } else {
                hi = m;
            }
        }
        return 0.5 * (lo + hi);
    };

    // reference roots on a scan of the transcendental conditions
    std::vector<double> ref;
    const double eps = 1e-6;
    double prev_e = even_f(-M + eps), prev_o = odd_f(-M + eps);
    for (double E = -M + eps + 0.002; E < M - eps; E += 0.002) {
        const double fe = even_f(E), fo = odd_f(E);
        // reject tan-pole sign flips by requiring a small midpoint value
        if ((prev_e < 0.0) != (fe < 0.0)) {
            const double r = bisect(even_f, E - 0.002, E);
            if (std::abs(even_f(r)) < 1.0) ref.push_back(r);
        }
        if ((prev_o < 0.0) != (fo < 0.0)) {
            const double r = bisect(odd_f, E - 0.002, E);
            if (std::abs(odd_f(r)) < 1.0) ref.push_back(r);
        }
        prev_e = fe;
        prev_o = fo;
    }
    std::sort(ref.begin(), ref.end());

    const auto spec = kgws::oracle_spectrum(params, M, natural);
    REQUIRE(spec.states.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
        // per-state agreement within 1% of the band width
        CHECK(std::abs(spec.states[i].energy - ref[i]) < 0.04);
        CHECK(spec.states[i].nodes == static_cast<int>(i));
    }
}
