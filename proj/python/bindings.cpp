#include "gl3lab/afe.hpp"
#include "gl3lab/charsum.hpp"
#include "gl3lab/delta.hpp"
#include "gl3lab/error.hpp"
#include "gl3lab/moment.hpp"
#include "gl3lab/special.hpp"
#include "gl3lab/verify.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace gl3lab;

PYBIND11_MODULE(_gl3lab, m) {
    static py::exception<Error> err(m, "Error");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetObject(err.ptr(), py::make_tuple(errc_name(e.code()), e.what()).ptr());
        }
    });

    m.def("kloosterman", &modular::kloosterman, py::arg("a"), py::arg("b"), py::arg("c"));
    m.def("mod_inverse", &modular::mod_inverse, py::arg("a"), py::arg("q"));
    m.def("ramanujan_sum", &modular::ramanujan_sum, py::arg("n"), py::arg("q"));

    m.def(
        "c_eta_bruteforce",
        [](i64 mm, i64 h1, i64 h2, i64 q1, i64 q2, int eta, double cap) {
            return charsum::c_eta_bruteforce({mm, h1, h2, q1, q2, eta}, cap);
        },
        py::arg("m"), py::arg("h1"), py::arg("h2"), py::arg("q1"), py::arg("q2"), py::arg("eta") = 1,
        py::arg("cap") = 1e6);
    m.def(
        "c_eta_closed_zero",
        [](i64 h1, i64 h2, i64 q1, i64 q2, int eta) { return charsum::c_eta_closed_zero({0, h1, h2, q1, q2, eta}); },
        py::arg("h1"), py::arg("h2"), py::arg("q1"), py::arg("q2"), py::arg("eta") = 1);

    m.def(
        "delta_detect",
        [](i64 n, double Q) {
            delta::DeltaConfig c;
            c.Q = Q;
            return delta::delta_detect(n, c);
        },
        py::arg("n"), py::arg("Q") = 20.0);

    m.def("zeta", &special::zeta_em, py::arg("s"));
    m.def("lambda_coefficient", &gl3::builtin_coefficients, py::arg("form"), py::arg("m"), py::arg("n"));
    m.def(
        "l_value",
        [](const std::string& form, double t) { return gl3::l_value_afe({0.5, t}, gl3::builtin_form(form)); },
        py::arg("form"), py::arg("t"));
    m.def(
        "second_moment",
        [](const std::string& form, double t, double M, const std::string& mode) {
            const auto r = moment::second_moment(gl3::builtin_form(form), t, M, moment::parse_mode(mode));
            return py::make_tuple(r.value, r.error);
        },
        py::arg("form"), py::arg("t"), py::arg("M"), py::arg("mode") = "direct_zeta3");
    m.def(
        "shifted_sum",
        [](const std::string& form, double M, double H, double N, double t, int sign) {
            moment::ShiftedSumParams p;
            p.M = M;
            p.H = H;
            p.N = N;
            p.t = t;
            p.sign = sign;
            return moment::shifted_sum(p, gl3::builtin_form(form));
        },
        py::arg("form"), py::arg("M"), py::arg("H"), py::arg("N"), py::arg("t"), py::arg("sign") = 1);

    // suites return the report as JSON text
    m.def("delta_verify", [](double Q, i64 nmax) { return verify::delta_verify({Q, nmax}).to_json().dump(); },
          py::arg("Q") = 20.0, py::arg("nmax") = 15);
    m.def(
        "duality_test",
        [](int trials, int max_dim, std::uint64_t seed) {
            verify::DualityParams p;
            p.trials = trials;
            p.max_dim = max_dim;
            p.seed = seed;
            return verify::duality_test(p).to_json().dump();
        },
        py::arg("trials") = 1000, py::arg("max_dim") = 50, py::arg("seed") = 1);
    m.def(
        "newton_check", [](std::uint64_t seed) {
            verify::NewtonParams p;
            p.seed = seed;
            return verify::newton_check(p).to_json().dump();
        },
        py::arg("seed") = 1);
}
