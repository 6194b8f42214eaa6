#include "lfl/gradient_oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "lfl/errors.hpp"

namespace lfl {

namespace {
constexpr std::uint64_t kOracleAuditSeed = 0x0ac1e0a0d17ull;

double potential_l_hat(const Potential& pot) {
  if (auto l = pot.lipschitz_grad()) return *l;
  throw ConfigError(
      "oracle over a potential without a declared gradient-Lipschitz "
      "constant: smoothness of the expected gradient is undefined");
}
}  // namespace

double gaussian_norm_moment(std::size_t d, double r) {
  if (d == 0 || !(r > -static_cast<double>(d))) {
    throw ConfigError("gaussian_norm_moment needs d >= 1 and r > -d");
  }
  const double half_d = 0.5 * static_cast<double>(d);
  return std::exp(0.5 * r * std::numbers::ln2 + std::lgamma(half_d + 0.5 * r) -
                  std::lgamma(half_d));
}

SmoothingParams smoothing_params(double l, double s, std::size_t d, double eta,
                                 std::size_t batch) {
  if (!(l > 0.0)) throw ConfigError("smoothing needs a positive Holder constant");
  if (!(s > 0.0) || !(s <= 1.0)) throw ConfigError("smoothing exponent s must lie in (0, 1]");
  if (!(eta >= 0.0)) throw ConfigError("smoothing radius eta must be >= 0");
  if (batch == 0) throw ConfigError("smoothing batch size must be >= 1");
  if (eta == 0.0) return SmoothingParams{l, 0.0, 0.0};
  const double dd = static_cast<double>(d);
  const double bias_root = l * std::pow(eta, s) * gaussian_norm_moment(d, 2.0 + s);
  return SmoothingParams{
      l * std::pow(dd, 0.5 * (1.0 - s)) / std::pow(eta, 1.0 - s),
      4.0 * l * l * std::pow(dd, s) * std::pow(eta, 2.0 * s) /
          static_cast<double>(batch),
      bias_root * bias_root};
}

ExactGradientOracle::ExactGradientOracle(std::shared_ptr<const Potential> pot)
    : pot_(std::move(pot)) {
  if (!pot_) throw ConfigError("oracle needs a potential");
}

void ExactGradientOracle::query(std::span<const double> x, std::uint64_t,
                                const RngStream&, std::span<double> out) const {
  pot_->gradient(x, out);
}

double ExactGradientOracle::l_hat() const { return potential_l_hat(*pot_); }

LinearNoisyOracle::LinearNoisyOracle(std::shared_ptr<const Potential> pot,
                                     Point bias, double noise_var)
    : pot_(std::move(pot)), bias_(std::move(bias)), noise_var_(noise_var) {
  if (!pot_) throw ConfigError("oracle needs a potential");
  if (bias_.size() != pot_->dimension()) {
    throw ConfigError("oracle bias dimension must match the potential");
  }
  if (!(noise_var_ >= 0.0)) throw ConfigError("oracle noise variance must be >= 0");
  audit_oracle(*this, *pot_);
}

void LinearNoisyOracle::query(std::span<const double> x, std::uint64_t step,
                              const RngStream& stream,
                              std::span<double> out) const {
  pot_->gradient(x, out);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += bias_[i];
  if (noise_var_ > 0.0) {
    Point zeta(out.size());
    gaussian_block(stream.master_seed, stream.chain_index,
                   rng_block::make(step, rng_block::kOracleBase),
                   std::span<double>(zeta));
    const double sd = std::sqrt(noise_var_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += sd * zeta[i];
  }
}

double LinearNoisyOracle::l_hat() const { return potential_l_hat(*pot_); }

SmoothedOracle::SmoothedOracle(std::shared_ptr<const Potential> pot, double eta,
                               std::size_t batch)
    : pot_(std::move(pot)), eta_(eta), batch_(batch) {
  if (!pot_) throw ConfigError("oracle needs a potential");
  const auto hol = pot_->holder();
  if (!hol) {
    throw ConfigError(
        "smoothed oracle needs a potential with declared Holder smoothness");
  }
  params_ = smoothing_params(hol->l, hol->s, pot_->dimension(), eta_, batch_);
  if (eta_ > 0.0) audit_oracle(*this, *pot_);
}

void SmoothedOracle::gradient_given_noise(std::span<const double> x,
                                          std::span<const double> zetas,
                                          std::span<double> out) const {
  const std::size_t d = x.size();
  Point probe(d), g(d);
  for (double& v : out) v = 0.0;
  for (std::size_t l = 0; l < batch_; ++l) {
    for (std::size_t i = 0; i < d; ++i) {
      probe[i] = x[i] + eta_ * zetas[l * d + i];
    }
    pot_->gradient(probe, std::span<double>(g));
    for (std::size_t i = 0; i < d; ++i) out[i] += g[i];
  }
  const double inv_b = 1.0 / static_cast<double>(batch_);
  for (double& v : out) v *= inv_b;
}

void SmoothedOracle::query(std::span<const double> x, std::uint64_t step,
                           const RngStream& stream, std::span<double> out) const {
  if (eta_ == 0.0) {
    pot_->gradient(x, out);
    return;
  }
  const std::size_t d = x.size();
  Point zetas(batch_ * d);
  for (std::size_t l = 0; l < batch_; ++l) {
    gaussian_block(stream.master_seed, stream.chain_index,
                   rng_block::make(step, rng_block::kOracleBase + l),
                   std::span<double>(zetas).subspan(l * d, d));
  }
  gradient_given_noise(x, zetas, out);
}

Point smoothed_gradient(const SmoothedOracle& oracle, std::span<const double> x,
                        const RngStream& stream, std::uint64_t step) {
  return oracle.query(x, step, stream);
}

void audit_oracle(const StochasticGradientOracle& oracle, const Potential& pot,
                  std::size_t n_draws) {
  const std::size_t d = oracle.dimension();
  if (pot.dimension() != d) {
    throw ConfigError("oracle audit: potential dimension mismatch");
  }
  constexpr std::size_t kNPoints = 5;
  RngStream audit_stream{kOracleAuditSeed, 0, 0};

  Point x(d), g_true(d), sample(d), mean(d);
  std::vector<double> sq_dev(n_draws);
  std::uint64_t point_block = 0;
  for (std::size_t pt = 0; pt < kNPoints; ++pt) {
    gaussian_block(kOracleAuditSeed, 1, point_block++, std::span<double>(x));
    for (double& v : x) v *= 5.0;
    pot.gradient(x, std::span<double>(g_true));

    // First pass: mean of the oracle draws at x.  Each draw uses a distinct
    // step index so block-addressed oracles see fresh noise.
    for (double& v : mean) v = 0.0;
    for (std::size_t k = 0; k < n_draws; ++k) {
      oracle.query(x, pt * n_draws + k, audit_stream, std::span<double>(sample));
      for (std::size_t i = 0; i < d; ++i) mean[i] += sample[i];
    }
    for (double& v : mean) v /= static_cast<double>(n_draws);

    // Second pass: spread around the mean (draws replay bit-identically).
    double var_acc = 0.0;
    for (std::size_t k = 0; k < n_draws; ++k) {
      oracle.query(x, pt * n_draws + k, audit_stream, std::span<double>(sample));
      sq_dev[k] = squared_distance(sample, mean);
      var_acc += sq_dev[k];
    }
    const double var_hat = var_acc / static_cast<double>(n_draws);
    double var_of_sq = 0.0;
    for (double v : sq_dev) var_of_sq += (v - var_hat) * (v - var_hat);
    var_of_sq /= static_cast<double>(n_draws);

    const double mean_se = std::sqrt(var_hat / static_cast<double>(n_draws));
    const double var_se = std::sqrt(var_of_sq / static_cast<double>(n_draws));

    // Accumulation roundoff alone must not fail a zero-noise oracle, so
    // both caps carry a slack far below any declarable bias or variance.
    const double g_norm = std::sqrt(squared_norm(g_true));
    const double bias_cap =
        std::sqrt(oracle.delta_b()) + 3.0 * mean_se + 1e-12 * (1.0 + g_norm);
    const double var_cap =
        oracle.delta_v() + 3.0 * var_se + 1e-12 * (1.0 + g_norm * g_norm);

    const double bias_norm = std::sqrt(squared_distance(mean, g_true));
    if (bias_norm > bias_cap) {
      throw AuditError(
          "oracle bias audit failed: ||mean draw - grad V|| = " +
          std::to_string(bias_norm) + " exceeds sqrt(delta_b) + 3 SE = " +
          std::to_string(bias_cap) + " at audit point " + std::to_string(pt));
    }
    if (var_hat > var_cap) {
      throw AuditError(
          "oracle variance audit failed: estimate " + std::to_string(var_hat) +
          " exceeds delta_v + 3 SE = " + std::to_string(var_cap) +
          " at audit point " + std::to_string(pt));
    }
  }
}

}  // namespace lfl
