#include "mlat/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace mlat {

void SearchRegion::validate(int n) const {
  constraint.validate(n, Tolerance{});
  const auto dims = static_cast<Eigen::Index>(constraint.basis.size());
  if (dims == 0) throw InvalidInput("search region needs at least one axis");
  if (lower.size() != dims || upper.size() != dims || static_cast<Eigen::Index>(resolution.size()) != dims)
    throw InvalidInput("search region bounds do not match the plane dimension");
  for (Eigen::Index i = 0; i < dims; ++i) {
    if (!std::isfinite(lower(i)) || !std::isfinite(upper(i)) || !(lower(i) < upper(i)))
      throw InvalidInput("search region must satisfy lower < upper on every axis");
    if (resolution[static_cast<std::size_t>(i)] < 2) throw InvalidInput("search region needs at least 2 nodes per axis");
  }
}

std::size_t SearchRegion::size() const {
  std::size_t total = 1;
  for (int r : resolution) total *= static_cast<std::size_t>(r);
  return total;
}

Vector SearchRegion::coordinates(std::size_t index) const {
  const auto dims = static_cast<Eigen::Index>(resolution.size());
  Vector c(dims);
  for (Eigen::Index i = dims - 1; i >= 0; --i) {
    const auto res = static_cast<std::size_t>(resolution[static_cast<std::size_t>(i)]);
    const auto k = index % res;
    index /= res;
    c(i) = lower(i) + (upper(i) - lower(i)) * static_cast<double>(k) / static_cast<double>(res - 1);
  }
  return c;
}

Vector SearchRegion::point(std::size_t index) const {
  return AffineFrame{constraint.base, constraint.basis}.point(coordinates(index));
}

SearchRegion default_region(const AffineConstraint& plane, const Vector& x_true, double half_width, int resolution) {
  SearchRegion r;
  r.constraint = plane;
  const Vector c = AffineFrame{plane.base, plane.basis}.coordinates(x_true);
  r.lower = c.array() - half_width;
  r.upper = c.array() + half_width;
  r.resolution.assign(plane.basis.size(), resolution);
  return r;
}

std::vector<double> synthesize_pseudoranges(const std::vector<Vector>& receivers, const Vector& x_true,
                                            double b_true, const NoiseModel& noise) {
  if (noise.sigma < 0.0 || !std::isfinite(noise.sigma)) throw InvalidInput("noise sigma must be nonnegative");
  std::mt19937_64 rng(noise.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> t;
  t.reserve(receivers.size());
  for (const auto& s : receivers) {
    if (s.size() != x_true.size()) throw InvalidInput("receiver and truth have different dimensions");
    double value = (s - x_true).norm() + b_true;
    if (noise.sigma > 0.0) value += noise.sigma * normal(rng);
    t.push_back(value);
  }
  return t;
}

namespace {

// distances[i * nodes + g] = ||s_i - p_g||
std::vector<double> node_distances(const std::vector<Vector>& receivers, const SearchRegion& region) {
  const std::size_t nodes = region.size();
  std::vector<double> d(receivers.size() * nodes);
  for (std::size_t g = 0; g < nodes; ++g) {
    const Vector p = region.point(g);
    for (std::size_t i = 0; i < receivers.size(); ++i) d[i * nodes + g] = (receivers[i] - p).norm();
  }
  return d;
}

double cost_at(const std::vector<double>& dist, std::size_t nodes, std::size_t g, const std::vector<double>& t) {
  const std::size_t m = t.size();
  double mean = 0.0;
  for (std::size_t i = 0; i < m; ++i) mean += dist[i * nodes + g] - t[i];
  mean /= static_cast<double>(m);
  double e = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = dist[i * nodes + g] - t[i] - mean;
    e += r * r;
  }
  return e;
}

std::size_t best_node(const std::vector<double>& dist, std::size_t nodes, const std::vector<double>& t) {
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < nodes; ++g) {
    const double e = cost_at(dist, nodes, g, t);
    if (e < best_value) {
      best_value = e;
      best = g;
    }
  }
  return best;
}

}  // namespace

CostSurface cost_surface(const std::vector<Vector>& receivers, const std::vector<double>& t_tilde,
                         const SearchRegion& region) {
  if (receivers.empty()) throw InvalidInput("need at least one receiver");
  if (receivers.size() != t_tilde.size()) throw InvalidInput("receivers and times differ in count");
  region.validate(static_cast<int>(receivers.front().size()));
  CostSurface s;
  s.region = region;
  const std::size_t nodes = region.size();
  const auto dist = node_distances(receivers, region);
  s.values.resize(nodes);
  for (std::size_t g = 0; g < nodes; ++g) s.values[g] = cost_at(dist, nodes, g, t_tilde);
  s.argmin_index = static_cast<std::size_t>(std::min_element(s.values.begin(), s.values.end()) - s.values.begin());
  s.argmin_point = region.point(s.argmin_index);
  return s;
}

Vector grid_locate(const CostSurface& surface) {
  if (surface.values.empty()) throw InvalidInput("empty cost surface");
  const auto it = std::min_element(surface.values.begin(), surface.values.end());
  return surface.region.point(static_cast<std::size_t>(it - surface.values.begin()));
}

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ErrorStats run_trials(const TrialConfig& config, int n_trials, int threads) {
  if (n_trials < 1) throw InvalidInput("need at least one trial");
  if (config.receivers.empty()) throw InvalidInput("need at least one receiver");
  config.region.validate(static_cast<int>(config.x_true.size()));
  const std::size_t nodes = config.region.size();
  const auto dist = node_distances(config.receivers, config.region);
  const double factor = config.unit == "km" ? 1000.0 : 1.0;

  std::vector<double> errors(static_cast<std::size_t>(n_trials));
  auto work = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      NoiseModel noise = config.noise;
      noise.seed = trial_seed(config.noise.seed, static_cast<std::uint64_t>(i));
      const auto t = synthesize_pseudoranges(config.receivers, config.x_true, config.b_true, noise);
      const Vector estimate = config.region.point(best_node(dist, nodes, t));
      errors[static_cast<std::size_t>(i)] = factor * (estimate - config.x_true).norm();
    }
  };
  int workers = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, n_trials);
  if (workers <= 1) {
    work(0, n_trials);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (n_trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int begin = w * chunk;
      const int end = std::min(n_trials, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  ErrorStats stats;
  stats.trials = n_trials;
  stats.unit = config.unit == "km" ? "m" : config.unit;
  double sum = 0.0;
  for (double e : errors) sum += e;
  stats.mean_error = sum / n_trials;
  if (n_trials > 1) {
    double sq = 0.0;
    for (double e : errors) sq += (e - stats.mean_error) * (e - stats.mean_error);
    stats.std_error = std::sqrt(sq / (n_trials - 1));
  }
  return stats;
}

}  // namespace mlat
