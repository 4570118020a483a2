#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "levytype/empirical.hpp"
#include "levytype/feller_symbols.hpp"
#include "levytype/levy_core.hpp"
#include "levytype/process.hpp"
#include "levytype/samplers.hpp"
#include "levytype/semigroup_ops.hpp"
#include "levytype/serialization.hpp"

namespace py = pybind11;
using namespace levytype;

namespace {

Vec as_point(const py::object& xi, int dim) {
  if (py::isinstance<py::float_>(xi) || py::isinstance<py::int_>(xi)) {
    return Vec::Constant(dim, xi.cast<double>());
  }
  Vec v = xi.cast<Vec>();
  if (v.size() != dim) {
    throw DimensionMismatch("point has the wrong dimension");
  }
  return v;
}

// xi given as a 1-d list of scalars (d = 1) or as rows of a 2-d array
std::vector<Vec> as_points(const py::object& grid, int dim) {
  std::vector<Vec> out;
  if (dim == 1) {
    for (double x : grid.cast<std::vector<double>>()) {
      out.push_back(Vec::Constant(1, x));
    }
    return out;
  }
  Mat m = grid.cast<Mat>();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out.push_back(as_point(py::cast(Vec(m.row(i).transpose())), dim));
  }
  return out;
}

py::dict path_dict(const CadlagPath& p) {
  py::dict d;
  d["times"] = p.times();
  d["values"] = Mat(p.values().transpose());
  std::vector<double> jt;
  for (const auto& j : p.jumps()) {
    jt.push_back(j.time);
  }
  d["jump_times"] = jt;
  return d;
}

StateSymbol symbol_from(const py::object& alpha) {
  if (py::isinstance<py::str>(alpha)) {
    if (alpha.cast<std::string>() != "sine") {
      throw InvalidAlpha("alpha must be a number or \"sine\"");
    }
    return StateSymbol::stable_like_sine();
  }
  double a = alpha.cast<double>();
  return StateSymbol::stable_like([a](const Vec&) { return a; });
}

} // namespace

PYBIND11_MODULE(_levytype, m) {
  m.doc() = "Lévy processes, Lévy-type symbols and Feller semigroups";

  auto base = py::register_exception<Error>(m, "LevyTypeError");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<PreconditionFailed>(m, "PreconditionFailed", base.ptr());

  py::class_<LevyTriplet>(m, "LevyTriplet")
      .def(py::init([](const Vec& drift, const Mat& diffusion) {
             return LevyTriplet(drift, diffusion, LevyMeasureSpec::zero(static_cast<int>(drift.size())));
           }),
           py::arg("drift"), py::arg("diffusion"))
      .def_static("from_json", [](const std::string& s) { return triplet_from_json(Json::parse(s)); })
      .def("to_json", [](const LevyTriplet& t) { return triplet_to_json(t).dump(); })
      .def_property_readonly("dim", &LevyTriplet::dim)
      .def_property_readonly("drift", &LevyTriplet::drift)
      .def_property_readonly("diffusion", &LevyTriplet::diffusion)
      .def("truncated", &LevyTriplet::truncated, py::arg("eps"))
      .def(
          "exponent",
          [](const LevyTriplet& t, const py::object& xi) {
            std::vector<Complex> out;
            for (const Vec& x : as_points(xi, t.dim())) {
              out.push_back(eval_exponent(t, x));
            }
            return out;
          },
          py::arg("xi"), "psi at each point of xi");

  m.def("brownian", &catalog::brownian, py::arg("dim") = 1, py::arg("sigma") = 1.0, py::arg("drift") = 0.0);
  m.def("poisson", &catalog::poisson, py::arg("rate"));
  m.def("compound_poisson_gaussian", &catalog::compound_poisson_gaussian, py::arg("rate"), py::arg("s") = 1.0);
  m.def("symmetric_stable", &catalog::symmetric_stable, py::arg("alpha"), py::arg("scale") = 1.0);
  m.def("symmetric_stable_density", &catalog::symmetric_stable_density, py::arg("alpha"), py::arg("c") = 1.0);
  m.def("gamma_process", &catalog::gamma_process);

  m.def(
      "sample_path",
      [](const LevyTriplet& t, double eps, double T, double dt, std::uint64_t seed, std::uint64_t stream) {
        LevyItoPath p;
        {
          py::gil_scoped_release nogil;
          RandomSource rng(seed, stream);
          p = sample_levy_ito(t, eps, T, dt, rng);
        }
        py::dict d = path_dict(p.path);
        d["truncation_bound"] = p.truncation_bound;
        return d;
      },
      py::arg("triplet"), py::arg("eps"), py::arg("T"), py::arg("dt"), py::arg("seed") = 0,
      py::arg("stream") = 0, "Lévy-Itô path on [0, T] with small jumps below eps replaced by drift");

  m.def(
      "sample_endpoints",
      [](const LevyTriplet& t, double eps, double T, std::size_t n, std::uint64_t seed) {
        Mat out(n, t.dim());
        {
          py::gil_scoped_release nogil;
          LevySampler s(t, eps, std::min(1e-2, T));
          Vec x0 = Vec::Zero(t.dim());
          for (std::size_t k = 0; k < n; ++k) {
            RandomSource rng(seed, k);
            out.row(static_cast<Eigen::Index>(k)) = s.sample_endpoint(x0, T, rng).transpose();
          }
        }
        return out;
      },
      py::arg("triplet"), py::arg("eps"), py::arg("T"), py::arg("n"), py::arg("seed") = 0,
      "n samples of X_T (rows), path k drawn from stream k");

  m.def(
      "empirical_cf",
      [](const Mat& samples, const py::object& xi) {
        Mat s = samples.transpose();
        CfEstimate e = empirical_cf(s, as_points(xi, static_cast<int>(s.rows())));
        return py::make_tuple(e.phi, e.se);
      },
      py::arg("samples"), py::arg("xi"), "mean of exp(i xi X) over sample rows, with standard errors");

  m.def("maximal_constant", &maximal_constant, py::arg("dim"));

  m.def(
      "indices_at_infinity",
      [](const py::object& alpha, double x, double xi_max, int points) {
        IndexEstimate e = indices_at_infinity(symbol_from(alpha), Vec::Constant(1, x), xi_max, points);
        py::dict d;
        d["beta"] = e.beta;
        d["delta"] = e.delta;
        d["beta_interval"] = py::make_tuple(e.beta_lo, e.beta_hi);
        d["delta_interval"] = py::make_tuple(e.delta_lo, e.delta_hi);
        return d;
      },
      py::arg("alpha"), py::arg("x") = 0.0, py::arg("xi_max") = 1e6, py::arg("points") = 25,
      "growth indices of the stable-like symbol |xi|^alpha(y) near x; alpha is a number or \"sine\"");

  m.def(
      "stable_like_symbol",
      [](const py::object& alpha, double x, double xi) {
        return eval_symbol(symbol_from(alpha), Vec::Constant(1, x), Vec::Constant(1, xi));
      },
      py::arg("alpha"), py::arg("x"), py::arg("xi"));

  m.def(
      "generator",
      [](const LevyTriplet& t, const py::object& x, double a, bool fourier) {
        TestFunction f = TestFunction::gaussian(t.dim(), a);
        Vec p = as_point(x, t.dim());
        OperatorValue v = fourier ? generator_fourier(CharacteristicExponent::of(t), f, p)
                                  : generator_integro(t, f, p);
        return py::make_tuple(v.value, v.error);
      },
      py::arg("triplet"), py::arg("x"), py::arg("a") = 0.5, py::arg("fourier") = false,
      "A f(x) for f = exp(-a |x|^2), as (value, error estimate)");
}
