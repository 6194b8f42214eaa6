#include "lfl/potential.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "lfl/errors.hpp"
#include "lfl/rng.hpp"

namespace lfl {

namespace {

// Fixed key for the construction audits: the audit must be deterministic and
// must not interact with any user-visible stream.
constexpr std::uint64_t kAuditSeed = 0x0a5d17c0de5eedull;
constexpr double kAuditScale = 5.0;
constexpr double kRelSlack = 1e-9;
constexpr double kAbsSlack = 1e-12;

std::string format_point(std::span<const double> x) {
  std::string out = "(";
  char buf[32];
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6g", x[i]);
    if (i) out += ", ";
    out += buf;
  }
  out += ")";
  return out;
}

}  // namespace

void GrowthParams::validate() const {
  if (!(a > 0.0)) throw ConfigError("growth constant a must be > 0");
  if (!(b >= 0.0)) throw ConfigError("growth constant b must be >= 0");
  if (!(gamma > 0.0) || !(gamma <= 2.0)) {
    throw ConfigError(
        "growth exponent gamma must lie in (0, 2]; gamma = 0 is unsupported "
        "(the radial drift term must grow)");
  }
  if (!(xi >= 0.0) || !(xi <= gamma / 2.0)) {
    throw ConfigError("gradient growth exponent xi must lie in [0, gamma/2]");
  }
  if (!(m > 0.0)) throw ConfigError("gradient growth constant m must be > 0");
}

double FiniteSumPotential::value(std::span<const double> x) const {
  const std::size_t n = n_components();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += component_value(i, x);
  return acc / static_cast<double>(n);
}

void FiniteSumPotential::gradient(std::span<const double> x,
                                  std::span<double> out) const {
  const std::size_t n = n_components();
  Point tmp(x.size());
  for (double& v : out) v = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    component_gradient(i, x, std::span<double>(tmp));
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += tmp[j];
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (double& v : out) v *= inv_n;
}

void audit_declared_constants(const Potential& pot, std::size_t n_pairs) {
  const std::size_t d = pot.dimension();
  const auto lip = pot.lipschitz_grad();
  const auto hol = pot.holder();
  const auto gro = pot.growth();
  if (gro) gro->validate();

  Point x(d), y(d), gx(d), gy(d);
  std::uint64_t block = 0;
  const auto draw = [&](Point& p) {
    gaussian_block(kAuditSeed, 0, block++, std::span<double>(p));
    for (double& v : p) v *= kAuditScale;
  };

  for (std::size_t i = 0; i < n_pairs; ++i) {
    draw(x);
    draw(y);
    pot.gradient(x, std::span<double>(gx));
    pot.gradient(y, std::span<double>(gy));
    const double grad_gap = std::sqrt(squared_distance(gx, gy));
    const double dist = std::sqrt(squared_distance(x, y));

    if (lip) {
      const double cap = *lip * dist * (1.0 + kRelSlack) + kAbsSlack;
      if (grad_gap > cap) {
        throw AuditError("declared gradient-Lipschitz constant L=" +
                         std::to_string(*lip) + " violated: ||grad(x)-grad(y)||=" +
                         std::to_string(grad_gap) + " > L*||x-y||=" +
                         std::to_string(*lip * dist) + " at x=" + format_point(x) +
                         ", y=" + format_point(y));
      }
    }
    if (hol) {
      const double cap =
          hol->l * std::pow(dist, hol->s) * (1.0 + kRelSlack) + kAbsSlack;
      if (grad_gap > cap) {
        throw AuditError("declared Holder smoothness (s=" + std::to_string(hol->s) +
                         ", l=" + std::to_string(hol->l) +
                         ") violated: ||grad(x)-grad(y)||=" + std::to_string(grad_gap) +
                         " > l*||x-y||^s=" + std::to_string(hol->l * std::pow(dist, hol->s)) +
                         " at x=" + format_point(x) + ", y=" + format_point(y));
      }
    }
    if (gro) {
      const double r = norm(x);
      const double radial = dot(x, gx);
      const double drift_floor =
          gro->a * std::pow(r, gro->gamma) - gro->b;
      if (radial < drift_floor - kRelSlack * std::abs(drift_floor) - kAbsSlack) {
        throw AuditError("declared growth (a=" + std::to_string(gro->a) +
                         ", b=" + std::to_string(gro->b) + ", gamma=" +
                         std::to_string(gro->gamma) + ") violated: <x, grad V(x)>=" +
                         std::to_string(radial) + " < a*||x||^gamma - b=" +
                         std::to_string(drift_floor) + " at x=" + format_point(x));
      }
      const double grad_cap =
          gro->m * (1.0 + std::pow(r, gro->xi)) * (1.0 + kRelSlack) + kAbsSlack;
      if (norm(gx) > grad_cap) {
        throw AuditError("declared gradient growth (m=" + std::to_string(gro->m) +
                         ", xi=" + std::to_string(gro->xi) +
                         ") violated: ||grad V(x)||=" + std::to_string(norm(gx)) +
                         " > m*(1+||x||^xi)=" +
                         std::to_string(gro->m * (1.0 + std::pow(r, gro->xi))) +
                         " at x=" + format_point(x));
      }
    }
  }
}

Point finite_difference_gradient(const Potential& pot, std::span<const double> x,
                                 double step_scale) {
  Point g(x.size());
  Point probe(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = step_scale * std::max(1.0, std::abs(x[i]));
    const double xi = x[i];
    probe[i] = xi + h;
    const double vp = pot.value(probe);
    probe[i] = xi - h;
    const double vm = pot.value(probe);
    probe[i] = xi;
    g[i] = (vp - vm) / (2.0 * h);
  }
  return g;
}

}  // namespace lfl
