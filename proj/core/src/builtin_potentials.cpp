#include "lfl/builtin_potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lfl/errors.hpp"

namespace lfl {

namespace {
constexpr double kHalfLog2Pi = 0.9189385332046727;  // log(2*pi)/2

void check_dim(std::size_t dim) {
  if (dim == 0) throw ConfigError("potential dimension must be positive");
}
}  // namespace

Quadratic::Quadratic(double lambda, std::size_t dim) : lambda_(lambda), dim_(dim) {
  check_dim(dim);
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("quadratic curvature lambda must be finite and >= 0");
  }
}

double Quadratic::value(std::span<const double> x) const {
  return 0.5 * lambda_ * squared_norm(x);
}

void Quadratic::gradient(std::span<const double> x, std::span<double> out) const {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = lambda_ * x[i];
}

PseudoHuber::PseudoHuber(std::size_t dim) : dim_(dim) { check_dim(dim); }

double PseudoHuber::value(std::span<const double> x) const {
  return std::sqrt(1.0 + squared_norm(x));
}

void PseudoHuber::gradient(std::span<const double> x, std::span<double> out) const {
  const double inv = 1.0 / std::sqrt(1.0 + squared_norm(x));
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * inv;
}

HolderPower::HolderPower(double s, std::size_t dim)
    : s_(s), holder_l_(std::exp2(1.0 - s)), dim_(dim) {
  check_dim(dim);
  if (!(s > 0.0) || !(s <= 1.0)) {
    throw ConfigError("Holder exponent s must lie in (0, 1]");
  }
}

double HolderPower::value(std::span<const double> x) const {
  return std::pow(norm(x), 1.0 + s_) / (1.0 + s_);
}

void HolderPower::gradient(std::span<const double> x, std::span<double> out) const {
  const double r = norm(x);
  if (r == 0.0) {
    for (double& v : out) v = 0.0;
    return;
  }
  const double scale = std::pow(r, s_ - 1.0);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = scale * x[i];
}

FiniteSumQuadratic::FiniteSumQuadratic(std::vector<Point> centers)
    : centers_(std::move(centers)) {
  if (centers_.empty()) throw ConfigError("finite sum needs at least one center");
  dim_ = centers_.front().size();
  check_dim(dim_);
  for (const Point& c : centers_) {
    if (c.size() != dim_) {
      throw ConfigError("finite-sum centers must share one dimension");
    }
  }
}

double FiniteSumQuadratic::component_value(std::size_t i,
                                           std::span<const double> x) const {
  return 0.5 * squared_distance(x, centers_[i]);
}

void FiniteSumQuadratic::component_gradient(std::size_t i, std::span<const double> x,
                                            std::span<double> out) const {
  const Point& c = centers_[i];
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] - c[j];
}

FiniteSumQuadratic unit_grid_finite_sum(std::size_t n) {
  if (n == 0) throw ConfigError("finite sum needs at least one center");
  std::vector<Point> centers;
  centers.reserve(n);
  const double shift = 0.5 * static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    centers.push_back(Point{static_cast<double>(i) - shift});
  }
  return FiniteSumQuadratic(std::move(centers));
}

GaussianMixture1D::GaussianMixture1D(std::vector<double> means,
                                     std::vector<double> weights)
    : means_(std::move(means)), weights_(std::move(weights)) {
  if (means_.empty() || means_.size() != weights_.size()) {
    throw ConfigError("mixture needs matching, non-empty means and weights");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0)) throw ConfigError("mixture weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ConfigError("mixture weights must sum to 1");
  }
  log_weights_.reserve(weights_.size());
  for (double w : weights_) log_weights_.push_back(std::log(w));
}

LogDensityScore GaussianMixture1D::logdensity_and_score(double x) const {
  // l_i = log w_i - (x - m_i)^2/2 - log(2*pi)/2; shift by the max so the
  // responsibilities stay exact even when every component underflows.
  double max_l = -std::numeric_limits<double>::infinity();
  const std::size_t n = means_.size();
  std::vector<double> l(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = x - means_[i];
    l[i] = log_weights_[i] - 0.5 * z * z - kHalfLog2Pi;
    max_l = std::max(max_l, l[i]);
  }
  double mass = 0.0;
  double weighted_dev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = std::exp(l[i] - max_l);
    mass += e;
    weighted_dev += e * (x - means_[i]);
  }
  return LogDensityScore{max_l + std::log(mass), -weighted_dev / mass};
}

double GaussianMixture1D::value(std::span<const double> x) const {
  return -logdensity_and_score(x[0]).log_density;
}

void GaussianMixture1D::gradient(std::span<const double> x,
                                 std::span<double> out) const {
  out[0] = -logdensity_and_score(x[0]).score;
}

std::optional<double> GaussianMixture1D::lipschitz_grad() const {
  // V''(x) = 1 - Var(mean | x).  The conditional variance of the component
  // mean is at most (spread/2)^2, attained between two extreme components,
  // so V'' ranges over [1 - (spread/2)^2, 1].
  const auto [lo, hi] = std::minmax_element(means_.begin(), means_.end());
  const double half_spread = 0.5 * (*hi - *lo);
  return std::max(1.0, half_spread * half_spread - 1.0);
}

double GaussianMixture1D::density(double x) const {
  return std::exp(logdensity_and_score(x).log_density);
}

GaussianMixture1D symmetric_bimodal(double m) {
  return GaussianMixture1D({-m, m}, {0.5, 0.5});
}

GaussianMixture1D skewed_bimodal(double m) {
  return GaussianMixture1D({-m, m}, {0.75, 0.25});
}

}  // namespace lfl
