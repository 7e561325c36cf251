#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zdcm/branches.hpp"
#include "zdcm/error.hpp"
#include "zdcm/hardy.hpp"
#include "zdcm/operator.hpp"
#include "zdcm/sim.hpp"
#include "zdcm/zdl.hpp"

namespace py = pybind11;
using namespace zdcm;

namespace {

SignMode sign_arg(const std::string& s) { return parse_sign(s); }

RationalHardyFunction rational(const std::vector<cplx>& numerator, const std::vector<cplx>& poles) {
  return make_rational(ComplexPolynomial(numerator), poles);
}

}  // namespace

PYBIND11_MODULE(zdcm, m) {
  m.doc() = "Small-dispersion limit solver: closed forms, operator route, pseudospectral simulator";

  py::register_exception<Error>(m, "Error");

  py::class_<RationalHardyFunction>(m, "RationalHardyFunction")
      .def(py::init(&rational), py::arg("numerator"), py::arg("poles"),
           "u0 = P/Q with Q(y) = prod (y + conj p_k), Im p_k < 0; numerator coefficients low degree first")
      .def("__call__", [](const RationalHardyFunction& u, cplx z) { return eval(u, z); })
      .def_property_readonly("poles", &RationalHardyFunction::pole_params)
      .def_property_readonly("residues", &RationalHardyFunction::residues)
      .def_property_readonly("order", &RationalHardyFunction::order)
      .def("l2_norm_sq", [](const RationalHardyFunction& u) { return l2_norm_sq(u); })
      .def("linf_norm", [](const RationalHardyFunction& u) { return linf_norm(u); })
      .def("fourier", [](const RationalHardyFunction& u, std::vector<double> xi) { return fourier_halfline(u, xi); });

  m.def("figure1", [] { return make_rational(ComplexPolynomial{1.0}, {cplx(0.0, -1.0)}); }, "u0(y) = 1/(y+i)");

  py::class_<BranchSet>(m, "BranchSet")
      .def_readonly("t", &BranchSet::t)
      .def_readonly("x", &BranchSet::x)
      .def_readonly("real_roots", &BranchSet::real_roots)
      .def_readonly("upper_roots", &BranchSet::upper_roots)
      .def_readonly("ell", &BranchSet::ell)
      .def_readonly("degenerate", &BranchSet::degenerate)
      .def_readonly("gamma_prime", &BranchSet::gamma_prime);

  m.def("branches", [](const RationalHardyFunction& u, double t, double x, const std::string& sign) {
    return branches(u, t, x, sign_arg(sign));
  }, py::arg("u"), py::arg("t"), py::arg("x"), py::arg("sign") = "focusing");
  m.def("shock_time", [](const RationalHardyFunction& u, const std::string& sign) {
    return shock_time(u, sign_arg(sign), default_window(u));
  }, py::arg("u"), py::arg("sign") = "focusing");
  m.def("critical_values", [](const RationalHardyFunction& u, double t, const std::string& sign) {
    return critical_values(u, t, sign_arg(sign), default_window(u));
  }, py::arg("u"), py::arg("t"), py::arg("sign") = "focusing");

  py::class_<ZDSample>(m, "ZDSample")
      .def_readonly("t", &ZDSample::t)
      .def_readonly("x", &ZDSample::x)
      .def_readonly("value", &ZDSample::value)
      .def_readonly("modulus", &ZDSample::modulus)
      .def_readonly("phase", &ZDSample::phase)
      .def_readonly("ell", &ZDSample::ell)
      .def_property_readonly("route", [](const ZDSample& s) { return std::string(to_string(s.route)); });

  m.def("zd", [](const RationalHardyFunction& u, double t, double x, const std::string& sign, const std::string& route) {
    return zd_point(u, t, x, sign_arg(sign), parse_route(route));
  }, py::arg("u"), py::arg("t"), py::arg("x"), py::arg("sign") = "focusing", py::arg("route") = "rational");

  m.def("zd_field", [](const RationalHardyFunction& u, double t, std::vector<double> xs, const std::string& sign,
                       const std::string& route) {
    const ZDField f = zd_field(u, t, xs, sign_arg(sign), parse_route(route));
    py::list out;
    for (const FieldPoint& p : f.points) {
      if (p.sample)
        out.append(p.sample->value);
      else
        out.append(py::none());
    }
    return out;
  }, py::arg("u"), py::arg("t"), py::arg("xs"), py::arg("sign") = "focusing", py::arg("route") = "rational",
     "Values on the grid; None where a point was excluded");

  py::class_<HalfLineOperator>(m, "HalfLineOperator")
      .def(py::init([](const RationalHardyFunction& u, double xi_max, int m) { return build_halfline(u, xi_max, m); }),
           py::arg("u"), py::arg("xi_max") = 40.0, py::arg("m") = 1024)
      .def_property_readonly("size", &HalfLineOperator::size)
      .def("zd", [](const HalfLineOperator& op, double t, double x, const std::string& sign, double delta) {
        ResolveOptions o;
        o.delta = delta;
        return resolve_zd_operator(op, t, x, sign_arg(sign), o).value;
      }, py::arg("t"), py::arg("x"), py::arg("sign") = "focusing", py::arg("delta") = 0.05)
      .def("ueps", [](const HalfLineOperator& op, double t, double eps, double x, const std::string& sign,
                      double delta) {
        ResolveOptions o;
        o.delta = delta;
        return resolve_ueps_operator(op, t, eps, x, sign_arg(sign), o);
      }, py::arg("t"), py::arg("eps"), py::arg("x"), py::arg("sign") = "focusing", py::arg("delta") = 0.05);

  py::class_<SimState>(m, "Simulation")
      .def(py::init([](const RationalHardyFunction& u, double L, int M, double eps, const std::string& sign, double dt) {
             SimConfig c;
             c.L = L;
             c.M = M;
             c.eps = eps;
             c.sign = sign_arg(sign);
             c.dt = dt;
             return init_sim(u, c);
           }),
           py::arg("u"), py::arg("L") = 80.0, py::arg("M") = 2048, py::arg("eps") = 0.2,
           py::arg("sign") = "focusing", py::arg("dt") = 0.0)
      .def_property_readonly("t", &SimState::t)
      .def_property_readonly("dt", &SimState::dt)
      .def("x", [](const SimState& s) {
        std::vector<double> xs(static_cast<std::size_t>(s.M()));
        for (int j = 0; j < s.M(); ++j) xs[static_cast<std::size_t>(j)] = s.x(j);
        return xs;
      })
      .def("physical", &SimState::physical)
      .def("mass", &SimState::mass)
      .def("evolve", &SimState::evolve, py::arg("T"), py::call_guard<py::gil_scoped_release>())
      .def("save", [](const SimState& s, const std::string& path) { save_checkpoint(s, path); })
      .def_static("load", [](const std::string& path) { return load_checkpoint(path); });
}
