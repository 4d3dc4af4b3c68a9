#include "mlat/model.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <sstream>

namespace mlat {

double Scenario::scale() const {
  double s = 1.0;
  for (const auto& p : satellites) s = std::max(s, p.norm());
  for (double t : pseudoranges) s = std::max(s, std::abs(t));
  return s;
}

Scenario Scenario::subset(const std::vector<std::size_t>& indices) const {
  Scenario out;
  out.n = n;
  out.tol = tol;
  out.unit = unit;
  for (auto i : indices) {
    if (i >= satellites.size()) throw InvalidInput("satellite index out of range");
    out.satellites.push_back(satellites.at(i));
    out.pseudoranges.push_back(pseudoranges.at(i));
  }
  return out;
}

ValidationReport validate_scenario(const Scenario& sc) {
  sc.tol.validate();
  if (sc.n < 1) throw InvalidInput("dimension n must be at least 1");
  if (sc.satellites.empty()) throw InvalidInput("scenario has no satellites");
  if (sc.satellites.size() != sc.pseudoranges.size())
    throw InvalidInput("number of satellites and pseudoranges differ");
  for (std::size_t i = 0; i < sc.satellites.size(); ++i) {
    const auto& s = sc.satellites[i];
    if (s.size() != sc.n) {
      std::ostringstream msg;
      msg << "satellite " << i << " has " << s.size() << " coordinates, expected " << sc.n;
      throw InvalidInput(msg.str());
    }
    if (!s.allFinite() || !std::isfinite(sc.pseudoranges[i])) {
      std::ostringstream msg;
      msg << "satellite " << i << " has a non-finite value";
      throw InvalidInput(msg.str());
    }
  }
  ValidationReport report;
  report.scenario = sc;
  for (std::size_t i = 0; i < sc.size(); ++i)
    for (std::size_t j = i + 1; j < sc.size(); ++j)
      if (sc.satellites[i] == sc.satellites[j] && sc.pseudoranges[i] == sc.pseudoranges[j]) {
        report.duplicates.emplace_back(i, j);
        std::ostringstream msg;
        msg << "satellites " << i << " and " << j << " are identical (redundant)";
        report.notes.push_back(msg.str());
      }
  return report;
}

int Frame::k() const { return static_cast<int>(w().size()); }

const Vector& Frame::v() const {
  return full_rank() ? full().v : deficient().v;
}

double Frame::beta() const { return full_rank() ? full().beta : deficient().beta; }

const std::vector<Vector>& Frame::w() const { return full_rank() ? full().w : deficient().w; }

const std::vector<double>& Frame::gamma() const {
  return full_rank() ? full().gamma : deficient().gamma;
}

const std::vector<Vector>& Frame::span() const {
  return full_rank() ? full().span : deficient().span;
}

double QuadraticForm::operator()(const Vector& p) const {
  return square.dot(p.cwiseProduct(p)) + linear.dot(p) + constant;
}

Vector QuadraticForm::gradient(const Vector& p) const {
  return 2.0 * square.cwiseProduct(p) + linear;
}

int SolutionSet::parameter_count() const {
  return static_cast<int>(basis.size()) + (has_direction ? 1 : 0);
}

LiftedPoint SolutionSet::embed(const Vector& params) const {
  if (params.size() != parameter_count()) throw InvalidInput("wrong number of solution parameters");
  LiftedPoint p{origin_b, origin_x};
  int offset = 0;
  if (has_direction) {
    p.b += params(0);
    p.x += params(0) * direction;
    offset = 1;
  }
  for (std::size_t j = 0; j < basis.size(); ++j)
    p.x += params(offset + static_cast<int>(j)) * basis[j];
  return p;
}

const char* to_string(SolutionKind kind) {
  switch (kind) {
    case SolutionKind::Empty: return "Empty";
    case SolutionKind::Full: return "Full";
    case SolutionKind::Parametrized: return "Parametrized";
  }
  return "?";
}

const char* to_string(CountHint count) {
  switch (count) {
    case CountHint::Zero: return "Zero";
    case CountHint::One: return "One";
    case CountHint::Two: return "Two";
    case CountHint::Infinite: return "Infinite";
  }
  return "?";
}

namespace {
constexpr QuadricKind kAllKinds[] = {
    QuadricKind::ProlateSpheroid, QuadricKind::HyperboloidTwoSheets,
    QuadricKind::ParaboloidOfRevolution, QuadricKind::Sphere,
    QuadricKind::AffineSubspace, QuadricKind::Line,
    QuadricKind::PairOfPoints, QuadricKind::SinglePoint,
    QuadricKind::Empty, QuadricKind::FullSpace,
    QuadricKind::HyperboloidOneSheet, QuadricKind::Cone,
    QuadricKind::Cylinder,
};
}  // namespace

const char* to_string(QuadricKind kind) {
  switch (kind) {
    case QuadricKind::ProlateSpheroid: return "ProlateSpheroid";
    case QuadricKind::HyperboloidTwoSheets: return "HyperboloidTwoSheets";
    case QuadricKind::ParaboloidOfRevolution: return "ParaboloidOfRevolution";
    case QuadricKind::Sphere: return "Sphere";
    case QuadricKind::AffineSubspace: return "AffineSubspace";
    case QuadricKind::Line: return "Line";
    case QuadricKind::PairOfPoints: return "PairOfPoints";
    case QuadricKind::SinglePoint: return "SinglePoint";
    case QuadricKind::Empty: return "Empty";
    case QuadricKind::FullSpace: return "FullSpace";
    case QuadricKind::HyperboloidOneSheet: return "HyperboloidOneSheet";
    case QuadricKind::Cone: return "Cone";
    case QuadricKind::Cylinder: return "Cylinder";
  }
  return "?";
}

std::optional<QuadricKind> quadric_kind_from_string(const std::string& name) {
  for (auto k : kAllKinds)
    if (name == to_string(k)) return k;
  return std::nullopt;
}

Vector AffineFrame::coordinates(const Vector& x) const {
  Vector q(dim());
  const Vector d = x - base;
  for (int i = 0; i < dim(); ++i) q(i) = basis[static_cast<std::size_t>(i)].dot(d);
  return q;
}

Vector AffineFrame::point(const Vector& coords) const {
  Vector x = base;
  for (int i = 0; i < dim(); ++i) x += coords(i) * basis[static_cast<std::size_t>(i)];
  return x;
}

double AffineFrame::distance(const Vector& x) const { return (x - point(coordinates(x))).norm(); }

double ImplicitEquation::operator()(const Vector& q) const {
  if (unconstrained) return 0.0;
  double value = constant;
  int start = 0;
  if (axial && q.size() > 0) {
    value += axial_square * q(0) * q(0) + axial_linear * q(0);
    start = 1;
  }
  for (Eigen::Index i = start; i < q.size(); ++i) value += transverse * q(i) * q(i);
  return value;
}

Vector ImplicitEquation::gradient(const Vector& q) const {
  Vector g = Vector::Zero(q.size());
  if (unconstrained) return g;
  int start = 0;
  if (axial && q.size() > 0) {
    g(0) = 2.0 * axial_square * q(0) + axial_linear;
    start = 1;
  }
  for (Eigen::Index i = start; i < q.size(); ++i) g(i) = 2.0 * transverse * q(i);
  return g;
}

double QuadricDescriptor::residual(const Vector& x) const {
  if (kind == QuadricKind::Empty) return std::numeric_limits<double>::infinity();
  return std::abs(equation(ambient.coordinates(x))) + ambient.distance(x);
}

std::vector<double> TimeMap::times(const Vector& s) const {
  switch (form) {
    case Form::Linear: return {coefficient.dot(s) + offset};
    case Form::TwoValued: {
      const double r2 = (s - center).squaredNorm() + radius_sq;
      if (r2 < 0.0) return {};
      const double r = std::sqrt(r2);
      if (r == 0.0) return {bias};
      return {bias - r, bias + r};
    }
    case Form::Unconstrained: return {};
  }
  return {};
}

}  // namespace mlat
