#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "elliptic_dyson/harness.hpp"
#include "elliptic_dyson/kernels.hpp"
#include "elliptic_dyson/sde.hpp"

namespace py = pybind11;
using namespace edyson;

namespace {

ThetaKind theta_kind(int k) {
  switch (k) {
    case 0: return ThetaKind::Theta0;
    case 1: return ThetaKind::Theta1;
    case 2: return ThetaKind::Theta2;
    case 3: return ThetaKind::Theta3;
  }
  throw py::value_error("theta kind must be 0, 1, 2 or 3");
}

BoundaryCond boundary(const std::string& s) {
  if (s.size() != 2) throw py::value_error("boundary must be two letters from {a, r}, e.g. 'ar'");
  auto wall = [](char c) {
    if (c == 'a') return Wall::Absorb;
    if (c == 'r') return Wall::Reflect;
    throw py::value_error("boundary letters must be 'a' or 'r'");
  };
  return {wall(s[0]), wall(s[1])};
}

KernelContext make_context(const std::string& family, const std::vector<double>& u, double t_star, double r,
                           const std::string& mode) {
  const FamilyTag tag = parse_family(family);
  const Family fam(tag, static_cast<int>(u.size()));
  if (mode == "elliptic") return KernelContext::elliptic(fam, ProcessClock(t_star, r), Config(fam, u, r));
  if (mode == "trig") return KernelContext::trigonometric(tag, Config(fam, u, r), r);
  if (mode == "equilibrium") return KernelContext::equilibrium(tag, static_cast<int>(u.size()), r);
  throw py::value_error("mode must be 'elliptic', 'trig' or 'equilibrium'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Elliptic Dyson models: special functions, kernels, simulation and validation suites";
  m.attr("__version__") = ELLIPTIC_DYSON_VERSION;

  py::register_exception<Error>(m, "EllipticDysonError", PyExc_RuntimeError);

  m.def(
      "theta", [](int kind, cplx v, cplx tau) { return theta(theta_kind(kind), v, ModularParam(tau)); }, py::arg("kind"),
      py::arg("v"), py::arg("tau"), "Jacobi theta function of the given kind (0-3).");
  m.def(
      "a_func", [](double cal_n, double t_rem, double x, double r) { return a_func(cal_n, t_rem, x, r); }, py::arg("cal_n"),
      py::arg("t_rem"), py::arg("x"), py::arg("r") = 1.0, "Drift function A at remaining time t_rem.");
  m.def(
      "dedekind_eta", [](cplx tau) { return dedekind_eta(ModularParam(tau)); }, py::arg("tau"));
  m.def("eta1", &eta1, py::arg("cal_n"), py::arg("t_rem"), py::arg("r") = 1.0);
  m.def("weierstrass_p", &weierstrass_p, py::arg("z"), py::arg("omega1"), py::arg("omega3"));
  m.def("weierstrass_zeta", &weierstrass_zeta, py::arg("z"), py::arg("omega1"), py::arg("omega3"));

  m.def(
      "cal_n", [](const std::string& family, int n) { return Family(parse_family(family), n).cal_n(); }, py::arg("family"),
      py::arg("n"));
  m.def(
      "macdonald_det",
      [](const std::string& family, const std::vector<double>& u, double im_tau, double r) {
        const Family fam(parse_family(family), static_cast<int>(u.size()));
        return macdonald_det(fam, Config(fam, u, r), ModularParam::imaginary(im_tau), r);
      },
      py::arg("family"), py::arg("u"), py::arg("im_tau"), py::arg("r") = 1.0);
  m.def(
      "factorized_det",
      [](const std::string& family, const std::vector<double>& u, double im_tau, double r) {
        const Family fam(parse_family(family), static_cast<int>(u.size()));
        return factorized_det(fam, Config(fam, u, r), ModularParam::imaginary(im_tau), r);
      },
      py::arg("family"), py::arg("u"), py::arg("im_tau"), py::arg("r") = 1.0);
  m.def(
      "d_mart",
      [](const std::string& family, const std::vector<double>& u, double t, const std::vector<double>& x, double t_star,
         double r) {
        const Family fam(parse_family(family), static_cast<int>(u.size()));
        return MartingaleCtx(fam, ProcessClock(t_star, r), Config(fam, u, r)).d_mart(t, x);
      },
      py::arg("family"), py::arg("u"), py::arg("t"), py::arg("x"), py::arg("t_star") = 1.0, py::arg("r") = 1.0,
      "Determinantal martingale function at (t, x) for initial configuration u.");

  m.def(
      "p_interval",
      [](const std::string& bc, double t, double y, double x, double r) { return p_interval(boundary(bc), t, y, x, r); },
      py::arg("boundary"), py::arg("t"), py::arg("y"), py::arg("x"), py::arg("r") = 1.0,
      "Brownian transition density on [0, pi r]; boundary is 'aa', 'ar', 'ra' or 'rr'.");

  py::class_<KernelContext>(m, "Kernel")
      .def(py::init(&make_context), py::arg("family"), py::arg("u"), py::arg("t_star") = 1.0, py::arg("r") = 1.0,
           py::arg("mode") = "elliptic")
      .def("__call__", &KernelContext::kernel, py::arg("s"), py::arg("x"), py::arg("t"), py::arg("y"))
      .def("density", &KernelContext::density, py::arg("t"), py::arg("x"))
      .def(
          "density_grid",
          [](const KernelContext& k, double t, py::array_t<double, py::array::c_style | py::array::forcecast> xs) {
            auto in = xs.unchecked<1>();
            py::array_t<double> out(in.shape(0));
            auto o = out.mutable_unchecked<1>();
            for (py::ssize_t i = 0; i < in.shape(0); ++i) o(i) = k.density(t, in(i));
            return out;
          },
          py::arg("t"), py::arg("x"))
      .def(
          "gap_probability",
          [](const KernelContext& k, double t, double a, double b) { return fredholm_gap(k, t, a, b); }, py::arg("t"),
          py::arg("a"), py::arg("b"))
      .def_property_readonly("n", &KernelContext::n);

  m.def(
      "equilibrium_density",
      [](const std::string& family, double x, int n, double r) { return equilibrium_density(parse_family(family), x, n, r); },
      py::arg("family"), py::arg("x"), py::arg("n"), py::arg("r") = 1.0);
  m.def(
      "kernel_eq_trig",
      [](const std::string& family, double dt, double x, double y, int n, double r) {
        return kernel_eq_trig(parse_family(family), dt, x, y, n, r);
      },
      py::arg("family"), py::arg("dt"), py::arg("x"), py::arg("y"), py::arg("n"), py::arg("r") = 1.0);

  m.def(
      "simulate",
      [](const std::string& model, const std::vector<double>& u, const std::vector<double>& record_times, int n_paths,
         double dt, uint64_t seed, double t_star, double r, double beta, double grading, int threads) {
        SdeSpec spec;
        spec.params = ModelParams{parse_model(model), beta, r, t_star};
        spec.u = u;
        spec.record_times = record_times;
        spec.n_paths = n_paths;
        spec.dt = dt;
        spec.seed = seed;
        spec.grading = grading;
        spec.threads = threads;
        PathEnsemble ens;
        {
          py::gil_scoped_release release;
          ens = simulate(spec);
        }
        const auto n_t = static_cast<py::ssize_t>(ens.times.size());
        py::array_t<double> pos({static_cast<py::ssize_t>(ens.n_paths()), n_t, static_cast<py::ssize_t>(ens.n)});
        std::copy(ens.positions.begin(), ens.positions.end(), pos.mutable_data());
        py::array_t<bool> flagged(static_cast<py::ssize_t>(ens.flagged.size()));
        for (size_t i = 0; i < ens.flagged.size(); ++i) flagged.mutable_data()[i] = ens.flagged[i] != 0;
        py::dict out;
        out["times"] = ens.times;
        out["positions"] = pos;
        out["flagged"] = flagged;
        return out;
      },
      py::arg("model"), py::arg("u"), py::arg("record_times"), py::arg("n_paths") = 1000, py::arg("dt") = 1e-4,
      py::arg("seed") = 0, py::arg("t_star") = std::numeric_limits<double>::infinity(), py::arg("r") = 1.0,
      py::arg("beta") = 2.0, py::arg("grading") = 0.0, py::arg("threads") = 0,
      "Simulate a path ensemble; positions have shape (paths, record times, N).");

  m.def(
      "run_suite",
      [](const std::string& suite, const std::vector<std::string>& families, const std::vector<int>& ns, uint64_t seed,
         int mc_paths, int threads) {
        RunConfig cfg;
        cfg.suite = parse_suite(suite);
        for (const auto& f : families) cfg.families.push_back(parse_family(f));
        cfg.ns = ns;
        cfg.seed = seed;
        cfg.mc_paths = mc_paths;
        cfg.threads = threads;
        py::gil_scoped_release release;
        return to_json(run_suite(cfg));
      },
      py::arg("suite") = "identities", py::arg("families") = std::vector<std::string>{}, py::arg("n") = std::vector<int>{},
      py::arg("seed") = 42, py::arg("mc_paths") = 100000, py::arg("threads") = 0,
      "Run a validation suite and return the JSON report text.");
}
