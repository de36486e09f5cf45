#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kgws/bound.hpp"
#include "kgws/errors.hpp"
#include "kgws/oracle.hpp"
#include "kgws/potential.hpp"
#include "kgws/scattering.hpp"
#include "kgws/special.hpp"

namespace py = pybind11;

namespace {

kgws::SideParams side_from_kwargs(const py::kwargs& kw) {
    kgws::SideParams s;
    for (const auto& item : kw) {
        const std::string key = py::cast<std::string>(item.first);
        const double v = py::cast<double>(item.second);
        if (key == "alpha") s.alpha = v;
        else if (key == "L") s.L = v;
        else if (key == "V1") s.V1 = v;
        else if (key == "V2") s.V2 = v;
        else if (key == "A") s.A = v;
        else if (key == "B") s.B = v;
        else if (key == "C") s.C = v;
        else if (key == "D") s.D = v;
        else if (key == "q") s.q = v;
        else if (key == "p") s.p = v;
        else if (key == "xi") s.xi = v;
        else if (key == "eta") s.eta = v;
        else throw kgws::DomainError("unknown parameter '" + key + "'");
    }
    return s;
}

}  // namespace

PYBIND11_MODULE(_kgws, m) {
    m.doc() = "Relativistic spin-0 scattering and bound states for the "
              "deformed Woods-Saxon potential family";

    py::register_exception<kgws::SolverError>(m, "SolverError");

    py::class_<kgws::UnitSystem>(m, "UnitSystem")
        .def(py::init<>())
        .def_readwrite("hbar", &kgws::UnitSystem::hbar)
        .def_readwrite("c", &kgws::UnitSystem::c);

    py::class_<kgws::SideParams>(m, "SideParams")
        .def(py::init<>())
        .def_readwrite("alpha", &kgws::SideParams::alpha)
        .def_readwrite("L", &kgws::SideParams::L)
        .def_readwrite("V1", &kgws::SideParams::V1)
        .def_readwrite("V2", &kgws::SideParams::V2)
        .def_readwrite("A", &kgws::SideParams::A)
        .def_readwrite("B", &kgws::SideParams::B)
        .def_readwrite("C", &kgws::SideParams::C)
        .def_readwrite("D", &kgws::SideParams::D)
        .def_readwrite("q", &kgws::SideParams::q)
        .def_readwrite("p", &kgws::SideParams::p)
        .def_readwrite("xi", &kgws::SideParams::xi)
        .def_readwrite("eta", &kgws::SideParams::eta);

    py::class_<kgws::PotentialParams>(m, "PotentialParams")
        .def(py::init<>())
        .def_readwrite("left", &kgws::PotentialParams::left)
        .def_readwrite("right", &kgws::PotentialParams::right)
        .def_readonly("v0_left", &kgws::PotentialParams::v0_left)
        .def_readonly("v0_right", &kgws::PotentialParams::v0_right)
        .def("symmetric", &kgws::PotentialParams::symmetric,
             py::arg("tol") = 0.0);

    py::enum_<kgws::Parity>(m, "Parity")
        .value("even", kgws::Parity::even)
        .value("odd", kgws::Parity::odd);

    py::class_<kgws::BoundState>(m, "BoundState")
        .def_readonly("energy", &kgws::BoundState::energy)
        .def_readonly("parity", &kgws::BoundState::parity)
        .def_readonly("nodes", &kgws::BoundState::nodes)
        .def_readonly("condition_residual",
                      &kgws::BoundState::condition_residual)
        .def("__repr__", [](const kgws::BoundState& s) {
            return "<BoundState E=" + std::to_string(s.energy) + " nodes=" +
                   std::to_string(s.nodes) + ">";
        });

    py::class_<kgws::Spectrum>(m, "Spectrum")
        .def_readonly("states", &kgws::Spectrum::states)
        .def_readonly("mass", &kgws::Spectrum::mass);

    py::class_<kgws::ScatteringResult>(m, "ScatteringResult")
        .def_readonly("T", &kgws::ScatteringResult::T)
        .def_readonly("R", &kgws::ScatteringResult::R)
        .def_readonly("d1_over_a1", &kgws::ScatteringResult::d1_over_a1)
        .def_readonly("b1_over_a1", &kgws::ScatteringResult::b1_over_a1)
        .def_readonly("energy", &kgws::ScatteringResult::energy)
        .def("__repr__", [](const kgws::ScatteringResult& r) {
            return "<ScatteringResult E=" + std::to_string(r.energy) +
                   " T=" + std::to_string(r.T) + " R=" + std::to_string(r.R) +
                   ">";
        });

    m.def(
        "make_symmetric",
        [](const py::kwargs& kw) {
            return kgws::make_symmetric(side_from_kwargs(kw));
        },
        "Build the symmetric 26-parameter set from the 12 free parameters "
        "(alpha, L, V1, V2, A, B, C, D, q, p, xi, eta).");

    m.def("derive_v0", &kgws::derive_v0, py::arg("params"),
          "Recompute and cache the locality offsets; returns (v0_left, "
          "v0_right).");

    m.def("potential", &kgws::evaluate, py::arg("params"), py::arg("x"),
          "Potential value at x in GeV.");

    m.def("load_config", &kgws::load_config, py::arg("path"));
    py::class_<kgws::ConfigData>(m, "ConfigData")
        .def_readonly("params", &kgws::ConfigData::params)
        .def_readonly("mass", &kgws::ConfigData::mass)
        .def_readonly("asymmetric", &kgws::ConfigData::asymmetric);

    m.def(
        "transmission_reflection",
        [](double E, double M, const kgws::PotentialParams& p) {
            return kgws::transmission_reflection(E, M, p, kgws::UnitSystem{});
        },
        py::arg("energy"), py::arg("mass"), py::arg("params"));

    m.def(
        "scan_spectrum",
        [](const kgws::PotentialParams& p, double M) {
            return kgws::scan_spectrum(p, M, kgws::UnitSystem{});
        },
        py::arg("params"), py::arg("mass"));

    m.def(
        "bound_wavefunction",
        [](const kgws::BoundState& s, double x,
           const kgws::PotentialParams& p, double M) {
            const kgws::BoundProblem problem{p, M, kgws::UnitSystem{}, {}};
            return kgws::bound_wavefunction(s, x, problem);
        },
        py::arg("state"), py::arg("x"), py::arg("params"), py::arg("mass"));

    m.def(
        "oracle_transmission",
        [](double E, double M, const kgws::PotentialParams& p) {
            return kgws::oracle_transmission(E, M, p, kgws::UnitSystem{});
        },
        py::arg("energy"), py::arg("mass"), py::arg("params"),
        "Transmission by direct integration of the wave equation "
        "(verification path).");

    m.def(
        "oracle_spectrum",
        [](const kgws::PotentialParams& p, double M) {
            return kgws::oracle_spectrum(p, M, kgws::UnitSystem{});
        },
        py::arg("params"), py::arg("mass"),
        "Bound spectrum by two-sided shooting (verification path).");

    m.def("hyp2f1", &kgws::hyp2f1, py::arg("a"), py::arg("b"), py::arg("c"),
          py::arg("z"), "Gauss hypergeometric function on the cut plane.");
    m.def("ln_gamma", &kgws::ln_gamma, py::arg("z"),
          "Principal branch of log Gamma.");
}
