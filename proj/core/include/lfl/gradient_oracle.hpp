#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "lfl/potential.hpp"
#include "lfl/rng.hpp"
#include "lfl/vec.hpp"

namespace lfl {

// E||zeta||^r for zeta ~ N(0, I_d): 2^{r/2} Gamma((d+r)/2) / Gamma(d/2).
double gaussian_norm_moment(std::size_t d, double r);

// Declared regularity of a smoothed-gradient construction: smoothness of the
// expected gradient, variance bound, and squared-bias bound.
struct SmoothingParams {
  double l_hat;
  double delta_v;
  double delta_b;
};

// For a potential whose gradient is s-Holder with constant l, Gaussian
// smoothing at radius eta with batch size B yields
//   l_hat   = l * d^{(1-s)/2} / eta^{1-s}
//   delta_v = 4 l^2 d^s eta^{2s} / B
//   delta_b = (l eta^s E||zeta||^{2+s})^2
// For eta = 0 the oracle is exact: (l_hat=l only when s=1; callers must not
// smooth a non-Lipschitz gradient with eta=0) -> here eta=0 returns
// {l, 0, 0} and is only meaningful for s=1.
SmoothingParams smoothing_params(double l, double s, std::size_t d, double eta,
                                 std::size_t batch);

// A randomized first-order oracle G(x, zeta).  Draws are pure functions of
// (x, step, stream identity): the oracle reads its noise from the fixed
// oracle slots of the chain's counter block for `step`, so it never
// perturbs the drift noise and degenerate instances replay exact-gradient
// trajectories bit for bit.
class StochasticGradientOracle {
 public:
  virtual ~StochasticGradientOracle() = default;

  virtual std::size_t dimension() const = 0;
  virtual void query(std::span<const double> x, std::uint64_t step,
                     const RngStream& stream, std::span<double> out) const = 0;

  // Declared constants: smoothness of the expected gradient, bias bound
  // (squared norm), and variance bound.
  virtual double l_hat() const = 0;
  virtual double delta_b() const = 0;
  virtual double delta_v() const = 0;

  Point query(std::span<const double> x, std::uint64_t step,
              const RngStream& stream) const {
    Point out(dimension());
    query(x, step, stream, std::span<double>(out));
    return out;
  }
};

// Deterministic passthrough to the potential's gradient.
class ExactGradientOracle final : public StochasticGradientOracle {
 public:
  explicit ExactGradientOracle(std::shared_ptr<const Potential> pot);

  using StochasticGradientOracle::query;
  std::size_t dimension() const override { return pot_->dimension(); }
  void query(std::span<const double> x, std::uint64_t step,
             const RngStream& stream, std::span<double> out) const override;
  double l_hat() const override;
  double delta_b() const override { return 0.0; }
  double delta_v() const override { return 0.0; }

 private:
  std::shared_ptr<const Potential> pot_;
};

// G(x, zeta) = grad V(x) + bias + sqrt(noise_var) * zeta.  The bias is a
// constant vector and the noise isotropic Gaussian, so delta_b = ||bias||^2
// and delta_v = noise_var * d hold with equality.
class LinearNoisyOracle final : public StochasticGradientOracle {
 public:
  LinearNoisyOracle(std::shared_ptr<const Potential> pot, Point bias,
                    double noise_var);

  using StochasticGradientOracle::query;
  std::size_t dimension() const override { return pot_->dimension(); }
  void query(std::span<const double> x, std::uint64_t step,
             const RngStream& stream, std::span<double> out) const override;
  double l_hat() const override;
  double delta_b() const override { return squared_norm(bias_); }
  double delta_v() const override {
    return noise_var_ * static_cast<double>(dimension());
  }

  const Point& bias() const { return bias_; }
  double noise_var() const { return noise_var_; }

 private:
  std::shared_ptr<const Potential> pot_;
  Point bias_;
  double noise_var_;
};

// Gaussian smoothing for weakly smooth (Holder-gradient) potentials:
// G(x) = (1/B) sum_l grad V(x + eta * zeta_l), zeta_l iid N(0, I).
// eta = 0 degenerates to the exact gradient and consumes no noise.
class SmoothedOracle final : public StochasticGradientOracle {
 public:
  SmoothedOracle(std::shared_ptr<const Potential> pot, double eta,
                 std::size_t batch);

  using StochasticGradientOracle::query;
  std::size_t dimension() const override { return pot_->dimension(); }
  void query(std::span<const double> x, std::uint64_t step,
             const RngStream& stream, std::span<double> out) const override;
  double l_hat() const override { return params_.l_hat; }
  double delta_b() const override { return params_.delta_b; }
  double delta_v() const override { return params_.delta_v; }

  double eta() const { return eta_; }
  std::size_t batch() const { return batch_; }
  const Potential& base() const { return *pot_; }

  // The deterministic core: (1/B) sum over the given noise vectors, laid out
  // as B contiguous d-blocks.  Exposed so tests can drive explicit zetas.
  void gradient_given_noise(std::span<const double> x,
                            std::span<const double> zetas,
                            std::span<double> out) const;

 private:
  std::shared_ptr<const Potential> pot_;
  double eta_;
  std::size_t batch_;
  SmoothingParams params_;
};

Point smoothed_gradient(const SmoothedOracle& oracle, std::span<const double> x,
                        const RngStream& stream, std::uint64_t step);

// Empirical construction audit: on a fixed deterministic point set, draws
// n_draws oracle samples per point and checks the bias and variance
// estimates against the declared delta_b / delta_v at three standard errors.
// Throws AuditError with the offending point and estimates.
void audit_oracle(const StochasticGradientOracle& oracle, const Potential& pot,
                  std::size_t n_draws = 4096);

}  // namespace lfl
