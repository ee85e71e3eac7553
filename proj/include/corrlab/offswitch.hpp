#pragma once

#include <array>
#include <span>

#include "corrlab/adversary.hpp"
#include "corrlab/nash.hpp"

namespace corrlab {

// Single-agent off-switch game. The agent chooses between acting (a),
// switching off (s) and deferring to the human (w(a)) under a Gaussian
// belief N(mu, sigma) over the action's utility U_a.

struct OffSwitchParams {
  double mu = 0.0;
  double sigma = 1.0;
  double beta = 0.0;  // 0 is the perfectly rational (step function) human

  void validate() const;
};

enum OffSwitchAction : std::size_t { kAct = 0, kSwitchOff = 1, kDefer = 2 };

struct OffSwitchSolution {
  double p_r = 0.0;  // probability the human decides rationally
  double p_a = 0.0;  // probability that a is preferred to s
  std::array<double, 3> expected_values{};
  MixedStrategy strategy;
};

/// Probability the human allows the action: sigmoid(u / beta), or the
/// step 1[u >= 0] when beta is 0.
double human_policy(double u_a, double beta);

/// Probability that the human's decision is the rational one, integrated
/// over the Gaussian belief.
double rationality_mass(const OffSwitchParams& params);

/// Gaussian mass on U_a >= 0, i.e. Phi(mu / sigma).
double action_preference_mass(const OffSwitchParams& params);

double normal_cdf(double x);
double normal_pdf(double x);

/// E[max(U, 0)] and E[min(U, 0)] for U ~ N(mu, sigma).
double positive_part_mean(double mu, double sigma);
double negative_part_mean(double mu, double sigma);

OffSwitchSolution solve_offswitch(const OffSwitchParams& params);

/// (E[U_a], 0, p E[max(U_a,0)] + (1-p) E[min(U_a,0)]) for a discrete
/// belief over U_a.
std::array<double, 3> offswitch_discrete_triple(std::span<const double> values,
                                                std::span<const double> weights, double p);

/// For a 2x2 adversary scenario whose games all have a = b and c = d = 0,
/// returns the defender's (E[U|alpha], E[U|beta], E[U|omega]) after checking
/// that it does not depend on the adversary's strategy.
std::array<double, 3> reduce_from_adversary(const AdversaryScenario& scenario);

}  // namespace corrlab
