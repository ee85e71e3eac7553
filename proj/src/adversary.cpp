#include "corrlab/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace corrlab {

AdversaryScenario::AdversaryScenario(GameBelief belief_in, double p_in, AdversaryMode mode_in)
    : belief(std::move(belief_in)), p(p_in), mode(std::move(mode_in)) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("AdversaryScenario: p outside [0,1]");
  for (const auto& g : belief.games()) {
    if (!g.is_symmetric()) {
      throw std::invalid_argument("AdversaryScenario: belief games must be symmetric");
    }
  }
  if (mode.kind == AdversaryMode::Kind::kFixed) {
    if (!mode.fixed) throw std::invalid_argument("AdversaryScenario: fixed mode without strategy");
    if (mode.fixed->size() != n_actions()) {
      throw std::invalid_argument("AdversaryScenario: fixed strategy size does not match games");
    }
  }
}

bool IncentiveVector::ask_only() const {
  return omega == 1 && std::all_of(direct.begin(), direct.end(), [](int m) { return m == 0; });
}

DefenderTable build_gamma(const SymmetricGame& base) {
  const double a = base.a(), b = base.b(), c = base.c(), d = base.d();
  if (a == c || b == d) {
    throw std::invalid_argument("build_gamma: payoff ties a=c or b=d have no defined branch");
  }
  // Adversary is the row player of the base layout here, so entry
  // (i, j) of the base game is (adversary payoff, defender payoff).
  const Bimatrix g = expand_symmetric(base);
  DefenderTable table;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      table.entries[i][j] = {g(i, j).row, g(i, j).col, g(i, j).col};
    }
    const std::size_t best = g(i, 0).col > g(i, 1).col ? 0 : 1;
    table.entries[i][kOmega] = {g(i, best).row, g(i, best).col, g(i, best).col};
  }
  table.branch = a > c ? (b > d ? 1 : 2) : (b > d ? 3 : 4);
  return table;
}

AdversaryStrategy nash_adversary_strategy(const Bimatrix& game) {
  const EquilibriumSet eqs = support_enumeration(game);
  if (eqs.empty()) throw std::runtime_error("nash_adversary_strategy: solver found no equilibrium");
  std::vector<double> mix(game.cols(), 0.0);
  for (const auto& eq : eqs.equilibria) {
    for (std::size_t j = 0; j < game.cols(); ++j) mix[j] += eq.col[j];
  }
  for (double& v : mix) v /= static_cast<double>(eqs.size());
  return {MixedStrategy(std::move(mix)), eqs.degenerate};
}

AdversaryStrategy adversary_strategy(const AdversaryScenario& scenario) {
  if (scenario.mode.kind == AdversaryMode::Kind::kFixed) return {*scenario.mode.fixed, false};
  std::vector<double> mix(scenario.n_actions(), 0.0);
  bool degenerate = false;
  for (std::size_t k = 0; k < scenario.belief.size(); ++k) {
    const AdversaryStrategy per_game = nash_adversary_strategy(scenario.belief.games()[k]);
    degenerate = degenerate || per_game.degenerate;
    for (std::size_t j = 0; j < mix.size(); ++j) {
      mix[j] += scenario.belief.weights()[k] * per_game.strategy[j];
    }
  }
  return {MixedStrategy(std::move(mix)), degenerate};
}

namespace {

void require_2x2(const GameBelief& belief, const char* who) {
  if (belief.games().front().rows() != 2 || belief.games().front().cols() != 2) {
    throw std::invalid_argument(std::string(who) + ": requires 2x2 base games");
  }
}

PairStats pair_stats(const GameBelief& belief, std::size_t x_row, std::size_t y_row,
                     std::size_t col) {
  PairStats s;
  double x_gt = 0.0, y_gt = 0.0, x_lt = 0.0, y_lt = 0.0;
  for (std::size_t k = 0; k < belief.size(); ++k) {
    const double w = belief.weights()[k];
    if (w == 0.0) continue;
    const double x = belief.games()[k](x_row, col).row;
    const double y = belief.games()[k](y_row, col).row;
    if (x > y) {
      s.p_greater += w;
      x_gt += w * x;
      y_gt += w * y;
    } else if (x < y) {
      s.p_less += w;
      x_lt += w * x;
      y_lt += w * y;
    } else {
      s.p_tie += w;
      s.x_given_tie_mass += w * x;
    }
  }
  if (s.p_greater > 0.0) {
    s.x_given_greater = x_gt / s.p_greater;
    s.y_given_greater = y_gt / s.p_greater;
  }
  if (s.p_less > 0.0) {
    s.x_given_less = x_lt / s.p_less;
    s.y_given_less = y_lt / s.p_less;
  }
  return s;
}

// E[p*max + (1-p)*min] of one payoff pair, expanded over the sign events.
double supervised_value(const PairStats& s, double p) {
  double v = s.x_given_tie_mass;
  if (s.p_greater > 0.0) {
    v += (p * *s.x_given_greater + (1.0 - p) * *s.y_given_greater) * s.p_greater;
  }
  if (s.p_less > 0.0) {
    v += (p * *s.y_given_less + (1.0 - p) * *s.x_given_less) * s.p_less;
  }
  return v;
}

// Coefficients of one adversary column in the two inequalities:
//   vs_x: E[(1-p)(y-x) | x>y] P(x>y) + E[p(y-x) | x<y] P(x<y)
//   vs_y: E[p(x-y) | x>y] P(x>y) + E[(1-p)(x-y) | x<y] P(x<y)
std::pair<double, double> inequality_terms(const PairStats& s, double p) {
  double vs_x = 0.0;
  double vs_y = 0.0;
  if (s.p_greater > 0.0) {
    const double diff = *s.x_given_greater - *s.y_given_greater;
    vs_x += (1.0 - p) * -diff * s.p_greater;
    vs_y += p * diff * s.p_greater;
  }
  if (s.p_less > 0.0) {
    const double diff = *s.x_given_less - *s.y_given_less;
    vs_x += p * -diff * s.p_less;
    vs_y += (1.0 - p) * diff * s.p_less;
  }
  return {vs_x, vs_y};
}

}  // namespace

ConditionalStats conditional_stats(const GameBelief& belief) {
  require_2x2(belief, "conditional_stats");
  ConditionalStats stats;
  stats.ac = pair_stats(belief, kAlpha, kBeta, kAlpha);
  stats.bd = pair_stats(belief, kAlpha, kBeta, kBeta);
  for (std::size_t k = 0; k < belief.size(); ++k) {
    const double w = belief.weights()[k];
    const Bimatrix& g = belief.games()[k];
    stats.mean_a += w * g(0, 0).row;
    stats.mean_b += w * g(0, 1).row;
    stats.mean_c += w * g(1, 0).row;
    stats.mean_d += w * g(1, 1).row;
  }
  return stats;
}

DefenderUtilities expected_utilities(const ConditionalStats& stats, double p,
                                     const MixedStrategy& adv) {
  if (adv.size() != 2) throw std::invalid_argument("expected_utilities: adversary must have 2 actions");
  DefenderUtilities u;
  u.alpha = stats.mean_a * adv[0] + stats.mean_b * adv[1];
  u.beta = stats.mean_c * adv[0] + stats.mean_d * adv[1];
  u.omega = supervised_value(stats.ac, p) * adv[0] + supervised_value(stats.bd, p) * adv[1];
  return u;
}

DefenderUtilities expected_utilities(const AdversaryScenario& scenario) {
  return expected_utilities(conditional_stats(scenario.belief), scenario.p,
                            adversary_strategy(scenario).strategy);
}

Theorem1Result theorem1_check(const ConditionalStats& stats, double p, const MixedStrategy& adv,
                              double tol) {
  if (adv.size() != 2) throw std::invalid_argument("theorem1_check: adversary must have 2 actions");
  const auto [ac_vs_alpha, ac_vs_beta] = inequality_terms(stats.ac, p);
  const auto [bd_vs_alpha, bd_vs_beta] = inequality_terms(stats.bd, p);
  Theorem1Result r;
  r.lhs1 = ac_vs_alpha * adv[0] + bd_vs_alpha * adv[1];
  r.lhs2 = ac_vs_beta * adv[0] + bd_vs_beta * adv[1];
  r.ineq1 = r.lhs1 > tol;
  r.ineq2 = r.lhs2 > tol;
  return r;
}

Theorem1Result theorem1_check(const AdversaryScenario& scenario, double tol) {
  return theorem1_check(conditional_stats(scenario.belief), scenario.p,
                        adversary_strategy(scenario).strategy, tol);
}

IncentiveVector incentive_vector(std::span<const double> direct_values, double omega_value,
                                 double tie_tol) {
  double best = omega_value;
  for (double v : direct_values) best = std::max(best, v);
  IncentiveVector m;
  m.direct.reserve(direct_values.size());
  for (double v : direct_values) m.direct.push_back(v >= best - tie_tol ? 1 : 0);
  m.omega = omega_value >= best - tie_tol ? 1 : 0;
  return m;
}

IncentiveVector incentive_vector(const DefenderUtilities& u, double tie_tol) {
  const std::array<double, 2> direct{u.alpha, u.beta};
  return incentive_vector(direct, u.omega, tie_tol);
}

IncentiveVector incentive_vector(const AdversaryScenario& scenario, double tie_tol) {
  if (scenario.n_actions() == 2) return incentive_vector(expected_utilities(scenario), tie_tol);
  const NActionUtilities u = n_action_utilities(scenario.belief, scenario.p,
                                                adversary_strategy(scenario).strategy);
  return incentive_vector(u.direct, u.omega, tie_tol);
}

double aggregate_corrigibility(std::span<const IncentiveVector> vectors) {
  if (vectors.empty()) throw std::invalid_argument("aggregate_corrigibility: empty ensemble");
  const std::size_t n = vectors.front().direct.size();
  std::vector<double> direct(n, 0.0);
  double omega = 0.0;
  for (const auto& m : vectors) {
    if (m.direct.size() != n) {
      throw std::invalid_argument("aggregate_corrigibility: mixed action counts");
    }
    for (std::size_t k = 0; k < n; ++k) direct[k] += m.direct[k];
    omega += m.omega;
  }
  const double count = static_cast<double>(vectors.size());
  return omega / count - *std::max_element(direct.begin(), direct.end()) / count;
}

double aggregate_corrigibility(std::span<const AdversaryScenario> ensemble, double tie_tol) {
  std::vector<IncentiveVector> vectors;
  vectors.reserve(ensemble.size());
  for (const auto& s : ensemble) vectors.push_back(incentive_vector(s, tie_tol));
  return aggregate_corrigibility(vectors);
}

NActionUtilities n_action_utilities(const GameBelief& belief, double p,
                                    const MixedStrategy& adv) {
  const std::size_t n = belief.games().front().rows();
  if (n < 2) throw std::invalid_argument("n_action_check: need at least 2 actions");
  if (adv.size() != n) {
    throw std::invalid_argument("n_action_check: adversary strategy size does not match games");
  }
  NActionUtilities u;
  u.direct.assign(n, 0.0);
  for (std::size_t g = 0; g < belief.size(); ++g) {
    const Bimatrix& game = belief.games()[g];
    if (game.rows() != n || game.cols() != n) {
      throw std::invalid_argument("n_action_check: games must all be n x n");
    }
    const double w = belief.weights()[g];
    for (std::size_t j = 0; j < n; ++j) {
      double hi = game(0, j).row;
      double lo = hi;
      for (std::size_t k = 0; k < n; ++k) {
        const double v = game(k, j).row;
        u.direct[k] += w * adv[j] * v;
        hi = std::max(hi, v);
        lo = std::min(lo, v);
      }
      u.omega += w * adv[j] * (p * hi + (1.0 - p) * lo);
    }
  }
  return u;
}

std::vector<bool> n_action_check(const GameBelief& belief, double p, const MixedStrategy& adv,
                                 double tol) {
  const NActionUtilities u = n_action_utilities(belief, p, adv);
  std::vector<bool> out;
  out.reserve(u.direct.size());
  for (double v : u.direct) out.push_back(u.omega - v > tol);
  return out;
}

}  // namespace corrlab
