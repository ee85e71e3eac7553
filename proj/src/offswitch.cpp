#include "corrlab/offswitch.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace corrlab {

namespace {

constexpr double kTailWidth = 10.0;  // integrate over mu +- 10 sigma
constexpr double kScaleTol = 1e-12;

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

void OffSwitchParams::validate() const {
  if (!std::isfinite(mu)) throw std::invalid_argument("OffSwitchParams: mu must be finite");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("OffSwitchParams: sigma must be positive");
  }
  if (!(beta >= 0.0)) throw std::invalid_argument("OffSwitchParams: beta must be nonnegative");
}

double human_policy(double u_a, double beta) {
  if (!(beta >= 0.0)) throw std::invalid_argument("human_policy: beta must be nonnegative");
  if (beta == 0.0) return u_a >= 0.0 ? 1.0 : 0.0;
  return logistic(u_a / beta);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double rationality_mass(const OffSwitchParams& params) {
  params.validate();
  if (params.beta == 0.0) return 1.0;
  // P(rational | u) = pi(u) for u >= 0 and 1 - pi(u) below, i.e. sigmoid(|u|/beta).
  const auto integrand = [&](double u) {
    const double z = (u - params.mu) / params.sigma;
    return logistic(std::abs(u) / params.beta) * normal_pdf(z) / params.sigma;
  };
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double lo = params.mu - kTailWidth * params.sigma;
  const double hi = params.mu + kTailWidth * params.sigma;
  constexpr unsigned kMaxDepth = 20;
  constexpr double kRelTol = 1e-13;
  // Split at the kink of |u|.
  if (lo < 0.0 && hi > 0.0) {
    return Quadrature::integrate(integrand, lo, 0.0, kMaxDepth, kRelTol) +
           Quadrature::integrate(integrand, 0.0, hi, kMaxDepth, kRelTol);
  }
  return Quadrature::integrate(integrand, lo, hi, kMaxDepth, kRelTol);
}

double action_preference_mass(const OffSwitchParams& params) {
  params.validate();
  return normal_cdf(params.mu / params.sigma);
}

double positive_part_mean(double mu, double sigma) {
  const double z = mu / sigma;
  return mu * normal_cdf(z) + sigma * normal_pdf(z);
}

double negative_part_mean(double mu, double sigma) {
  return mu - positive_part_mean(mu, sigma);
}

OffSwitchSolution solve_offswitch(const OffSwitchParams& params) {
  params.validate();
  OffSwitchSolution sol;
  sol.p_r = rationality_mass(params);
  sol.p_a = action_preference_mass(params);
  const double upper = positive_part_mean(params.mu, params.sigma);
  const double lower = negative_part_mean(params.mu, params.sigma);
  sol.expected_values = {params.mu, 0.0, sol.p_r * upper + (1.0 - sol.p_r) * lower};

  const double best = *std::max_element(sol.expected_values.begin(), sol.expected_values.end());
  std::vector<double> mix(3, 0.0);
  double count = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    if (sol.expected_values[k] >= best - kDefaultTol) {
      mix[k] = 1.0;
      count += 1.0;
    }
  }
  for (double& m : mix) m /= count;
  sol.strategy = MixedStrategy(std::move(mix));
  return sol;
}

std::array<double, 3> offswitch_discrete_triple(std::span<const double> values,
                                                std::span<const double> weights, double p) {
  if (values.size() != weights.size() || values.empty()) {
    throw std::invalid_argument("offswitch_discrete_triple: one weight per value required");
  }
  double mean = 0.0, upper = 0.0, lower = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    mean += weights[k] * values[k];
    upper += weights[k] * std::max(values[k], 0.0);
    lower += weights[k] * std::min(values[k], 0.0);
  }
  return {mean, 0.0, p * upper + (1.0 - p) * lower};
}

std::array<double, 3> reduce_from_adversary(const AdversaryScenario& scenario) {
  for (const auto& g : scenario.belief.games()) {
    if (g.rows() != 2 || g.cols() != 2) {
      throw std::invalid_argument("reduce_from_adversary: requires 2x2 games");
    }
    const double a = g(0, 0).row, b = g(0, 1).row, c = g(1, 0).row, d = g(1, 1).row;
    if (std::abs(a - b) > kScaleTol || std::abs(c) > kScaleTol || std::abs(d) > kScaleTol) {
      throw std::invalid_argument("reduce_from_adversary: games must be scaled to a=b, c=d=0");
    }
  }
  const ConditionalStats stats = conditional_stats(scenario.belief);
  const auto triple = [&](const MixedStrategy& adv) {
    const DefenderUtilities u = expected_utilities(stats, scenario.p, adv);
    return std::array<double, 3>{u.alpha, u.beta, u.omega};
  };
  const std::array<double, 3> result = triple(adversary_strategy(scenario).strategy);
  for (std::size_t j = 0; j < 2; ++j) {
    const auto pure = triple(MixedStrategy::Pure(2, j));
    for (std::size_t k = 0; k < 3; ++k) {
      if (std::abs(pure[k] - result[k]) > kScaleTol * std::max(1.0, std::abs(result[k]))) {
        throw std::logic_error("reduce_from_adversary: utilities depend on the adversary");
      }
    }
  }
  return result;
}

}  // namespace corrlab
