#include "mlat/constraints.hpp"
#include "mlat/io.hpp"
#include "mlat/quadrics.hpp"
#include "mlat/simulate.hpp"
#include "mlat/solver.hpp"

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace mlat;

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::vector<Vector> rows(const RowMatrix& m) {
  std::vector<Vector> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(m.row(i).transpose());
  return out;
}

// Python objects via the JSON form: one schema for the CLI and the module.
py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Scenario make_scenario(const RowMatrix& satellites, const std::vector<double>& pseudoranges, double rank_rel,
                       double geom_abs) {
  Scenario sc;
  sc.n = static_cast<int>(satellites.cols());
  sc.satellites = rows(satellites);
  sc.pseudoranges = pseudoranges;
  sc.tol = {rank_rel, geom_abs};
  sc.tol.validate();
  return validate_scenario(sc).scenario;
}

AffineConstraint make_constraint(const Vector& base, const RowMatrix& basis, const Tolerance& tol) {
  AffineConstraint c{base, rows(basis)};
  c.validate(static_cast<int>(base.size()), tol);
  return c;
}

py::list points(const std::vector<LiftedPoint>& pts) {
  py::list out;
  for (const auto& p : pts) out.append(py::make_tuple(p.b, p.x));
  return out;
}

py::dict solve(const RowMatrix& satellites, const std::vector<double>& t, double rank_rel, double geom_abs) {
  const Scenario sc = make_scenario(satellites, t, rank_rel, geom_abs);
  const auto sq = solve_squared_detailed(sc);
  const auto feasible = filter_inequalities(sq.set, sq.frame, sq.reduced);
  py::dict d;
  d["kind"] = to_string(sq.set.kind);
  d["count"] = to_string(sq.set.count);
  d["points"] = points(sq.set.points);
  d["feasible_points"] = points(feasible.points);
  d["feasible_rule"] = to_string(feasible.rule);
  d["solution_set"] = to_python(to_json(sq.set));
  d["frame"] = to_python(to_json(sq.frame));
  return d;
}

py::dict classify(const RowMatrix& satellites, const std::vector<double>& t, double rank_rel, double geom_abs) {
  const Scenario sc = make_scenario(satellites, t, rank_rel, geom_abs);
  const auto sq = solve_squared_detailed(sc);
  const auto qsol = classify_solution_quadric(sq.frame, sq.set);
  const auto qsat = classify_satellite_quadric(sq.frame, sq.set);
  py::dict d;
  d["qsol"] = to_python(to_json(qsol));
  d["qsat"] = to_python(to_json(qsat));
  d["duality"] = to_python(to_json(duality_report(qsol, qsat.descriptor, sc.tol)));
  return d;
}

py::list sample(const RowMatrix& satellites, const std::vector<double>& t, int count, unsigned long long seed,
                double rank_rel, double geom_abs) {
  const Scenario sc = make_scenario(satellites, t, rank_rel, geom_abs);
  return points(sample_solutions(solve_squared(sc), count, seed));
}

py::list intersect(const RowMatrix& satellites, const std::vector<double>& t, const Vector& base,
                   const RowMatrix& basis, double rank_rel, double geom_abs) {
  const Scenario sc = make_scenario(satellites, t, rank_rel, geom_abs);
  const AffineConstraint con = make_constraint(base, basis, sc.tol);
  const auto sq = solve_squared_detailed(sc);
  auto inter = intersect_with_affine(sq.set, sq.frame, con, sc.tol);
  py::list out;
  for (const auto& c : mark_feasibility(inter.candidates, sc)) out.append(to_python(to_json(c)));
  return out;
}

SearchRegion make_region(const Vector& base, const RowMatrix& basis, const Vector& lower, const Vector& upper,
                         const std::vector<int>& resolution) {
  SearchRegion r{make_constraint(base, basis, Tolerance{}), lower, upper, resolution};
  r.validate(static_cast<int>(base.size()));
  return r;
}

py::tuple surface(const RowMatrix& receivers, const std::vector<double>& t, const Vector& base,
                  const RowMatrix& basis, const Vector& lower, const Vector& upper,
                  const std::vector<int>& resolution) {
  const CostSurface s = cost_surface(rows(receivers), t, make_region(base, basis, lower, upper, resolution));
  std::vector<py::ssize_t> shape(resolution.begin(), resolution.end());
  py::array_t<double> values(shape);
  std::copy(s.values.begin(), s.values.end(), values.mutable_data());
  return py::make_tuple(values, s.argmin_point);
}

py::dict trials(const RowMatrix& receivers, const Vector& truth, double sigma, std::uint64_t seed, int n_trials,
                const Vector& base, const RowMatrix& basis, int resolution, double half_width, double bias,
                const std::string& unit, int threads) {
  TrialConfig cfg;
  cfg.receivers = rows(receivers);
  cfg.x_true = truth;
  cfg.b_true = bias;
  cfg.noise = {sigma, seed};
  cfg.region = default_region(make_constraint(base, basis, Tolerance{}), truth, half_width, resolution);
  cfg.region.validate(static_cast<int>(truth.size()));
  cfg.unit = unit;
  const ErrorStats st = [&] {
    py::gil_scoped_release release;
    return run_trials(cfg, n_trials, threads);
  }();
  py::dict d;
  d["trials"] = st.trials;
  d["mean_error"] = st.mean_error;
  d["std_error"] = st.std_error;
  d["unit"] = st.unit;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pseudorange multilateration: exact solution sets, quadric classification, grid search";
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);

  m.def("solve", &solve, py::arg("satellites"), py::arg("pseudoranges"), py::arg("rank_rel") = 1e-9,
        py::arg("geom_abs") = 1e-9,
        "Squared solution set and its feasible part. Points are (b, x) tuples.");
  m.def("classify", &classify, py::arg("satellites"), py::arg("pseudoranges"), py::arg("rank_rel") = 1e-9,
        py::arg("geom_abs") = 1e-9, "Solution and satellite quadrics with their duality report.");
  m.def("sample", &sample, py::arg("satellites"), py::arg("pseudoranges"), py::arg("count"), py::arg("seed") = 0,
        py::arg("rank_rel") = 1e-9, py::arg("geom_abs") = 1e-9, "Seeded points of the squared solution set.");
  m.def("intersect", &intersect, py::arg("satellites"), py::arg("pseudoranges"), py::arg("base"), py::arg("basis"),
        py::arg("rank_rel") = 1e-9, py::arg("geom_abs") = 1e-9,
        "Candidates on the affine subspace base + span(basis rows).");
  m.def("cost_surface", &surface, py::arg("receivers"), py::arg("pseudoranges"), py::arg("base"), py::arg("basis"),
        py::arg("lower"), py::arg("upper"), py::arg("resolution"),
        "Grid of the centered residual cost and its minimizer.");
  m.def("run_trials", &trials, py::arg("receivers"), py::arg("truth"), py::arg("sigma"), py::arg("seed"),
        py::arg("trials"), py::arg("base"), py::arg("basis"), py::arg("resolution") = 401,
        py::arg("half_width") = 2.0, py::arg("bias") = 0.0, py::arg("unit") = "", py::arg("threads") = 0);
}
