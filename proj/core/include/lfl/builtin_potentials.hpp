#pragma once

#include <memory>
#include <vector>

#include "lfl/log_density.hpp"
#include "lfl/potential.hpp"

namespace lfl {

// V(x) = lambda * ||x||^2 / 2, the exactly solvable reference potential.
// lambda = 0 gives the zero potential (pure Brownian chain).
class Quadratic final : public Potential {
 public:
  using Potential::gradient;

  Quadratic(double lambda, std::size_t dim);

  std::size_t dimension() const override { return dim_; }
  double value(std::span<const double> x) const override;
  void gradient(std::span<const double> x, std::span<double> out) const override;
  std::optional<double> lipschitz_grad() const override { return lambda_; }
  std::optional<double> lipschitz_hessian() const override { return 0.0; }
  std::optional<HolderSmoothness> holder() const override {
    return HolderSmoothness{1.0, lambda_};
  }

  double lambda() const { return lambda_; }

 private:
  double lambda_;
  std::size_t dim_;
};

// V(x) = sqrt(1 + ||x||^2): globally 1-smooth, linear growth, the stock
// example satisfying the dissipativity assumptions with
// a = b = gamma = m = 1 and xi = 0.
class PseudoHuber final : public Potential {
 public:
  using Potential::gradient;

  explicit PseudoHuber(std::size_t dim);

  std::size_t dimension() const override { return dim_; }
  double value(std::span<const double> x) const override;
  void gradient(std::span<const double> x, std::span<double> out) const override;
  std::optional<double> lipschitz_grad() const override { return 1.0; }
  std::optional<GrowthParams> growth() const override {
    return GrowthParams{1.0, 1.0, 1.0, 0.0, 1.0};
  }

 private:
  std::size_t dim_;
};

// V(x) = ||x||^(1+s) / (1+s) for s in (0, 1]: the gradient ||x||^(s-1) x is
// s-Holder (constant 2^(1-s), sharp at antipodal pairs) but not Lipschitz
// for s < 1.  gradient(0) := 0, the unique continuous extension.
class HolderPower final : public Potential {
 public:
  using Potential::gradient;

  HolderPower(double s, std::size_t dim);

  std::size_t dimension() const override { return dim_; }
  double value(std::span<const double> x) const override;
  void gradient(std::span<const double> x, std::span<double> out) const override;
  std::optional<HolderSmoothness> holder() const override {
    return HolderSmoothness{s_, holder_l_};
  }

  double s() const { return s_; }

 private:
  double s_;
  double holder_l_;
  std::size_t dim_;
};

// V = (1/n) sum_i f_i with f_i(x) = ||x - c_i||^2 / 2.  Every component is
// 1-smooth, so L = 1 regardless of the centers.
class FiniteSumQuadratic final : public FiniteSumPotential {
 public:
  explicit FiniteSumQuadratic(std::vector<Point> centers);

  std::size_t dimension() const override { return dim_; }
  std::size_t n_components() const override { return centers_.size(); }
  double component_value(std::size_t i, std::span<const double> x) const override;
  void component_gradient(std::size_t i, std::span<const double> x,
                          std::span<double> out) const override;
  std::optional<double> lipschitz_grad() const override { return 1.0; }
  std::optional<double> lipschitz_hessian() const override { return 0.0; }

  const std::vector<Point>& centers() const { return centers_; }

 private:
  std::vector<Point> centers_;
  std::size_t dim_;
};

// n centers spaced one unit apart on the first axis, symmetric around 0:
// -(n-1)/2, ..., +(n-1)/2.
FiniteSumQuadratic unit_grid_finite_sum(std::size_t n);

// One-dimensional Gaussian mixture with unit-variance components:
// rho(x) = sum_i w_i * N(x; mean_i, 1).  Doubles as the potential
// V = -log rho.  Densities and scores are evaluated in log space with a
// max-shift, so they stay meaningful far into the tails (|x| ~ 38 before
// the density itself underflows).
class GaussianMixture1D final : public Potential {
 public:
  using Potential::gradient;

  GaussianMixture1D(std::vector<double> means, std::vector<double> weights);

  std::size_t dimension() const override { return 1; }
  double value(std::span<const double> x) const override;
  void gradient(std::span<const double> x, std::span<double> out) const override;
  std::optional<double> lipschitz_grad() const override;

  // log rho(x) and the score (log rho)'(x) in one pass.
  LogDensityScore logdensity_and_score(double x) const;

  double density(double x) const;

  const std::vector<double>& means() const { return means_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> means_;
  std::vector<double> weights_;
  std::vector<double> log_weights_;
};

// The two-mode example family: the target is an even 50/50 mixture at
// -m and +m; the skewed law reweights the same components 3/4 vs 1/4.
// The pair separates total variation from relative Fisher information as
// the modes move apart.
GaussianMixture1D symmetric_bimodal(double m);
GaussianMixture1D skewed_bimodal(double m);

}  // namespace lfl
