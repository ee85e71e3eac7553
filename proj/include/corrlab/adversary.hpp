#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "corrlab/corrigibility.hpp"
#include "corrlab/game.hpp"
#include "corrlab/nash.hpp"

namespace corrlab {

// The defender is the row player of every symmetric base game; the
// adversary is the column player. Defender payoffs read
//   a = U(alpha | adv alpha), b = U(alpha | adv beta),
//   c = U(beta  | adv alpha), d = U(beta  | adv beta).

struct AdversaryMode {
  enum class Kind { kNashPerGame, kFixed };

  Kind kind = Kind::kNashPerGame;
  std::optional<MixedStrategy> fixed;

  static AdversaryMode NashPerGame() { return {}; }
  static AdversaryMode Fixed(MixedStrategy strategy) {
    return {Kind::kFixed, std::move(strategy)};
  }
};

struct AdversaryScenario {
  AdversaryScenario(GameBelief belief, double p, AdversaryMode mode);

  GameBelief belief;  // over symmetric n x n games
  double p;           // probability the human steers in the defender's favour
  AdversaryMode mode;

  std::size_t n_actions() const { return belief.games().front().rows(); }
};

struct AdversaryStrategy {
  MixedStrategy strategy;
  bool degenerate = false;
};

/// Moments of one payoff pair (x, y) (either (a, c) or (b, d)) over the
/// belief's atoms. Conditional means are absent when the event has zero mass.
struct PairStats {
  double p_greater = 0.0;  // P(x > y)
  double p_less = 0.0;     // P(x < y)
  double p_tie = 0.0;
  std::optional<double> x_given_greater, y_given_greater;
  std::optional<double> x_given_less, y_given_less;
  double x_given_tie_mass = 0.0;  // E[x ; x = y], unconditional
};

struct ConditionalStats {
  PairStats ac;
  PairStats bd;
  double mean_a = 0.0, mean_b = 0.0, mean_c = 0.0, mean_d = 0.0;
};

struct DefenderUtilities {
  double alpha = 0.0;
  double beta = 0.0;
  double omega = 0.0;
};

struct Theorem1Result {
  double lhs1 = 0.0;  // E[U|omega] - E[U|alpha] in inequality form
  double lhs2 = 0.0;  // E[U|omega] - E[U|beta] in inequality form
  bool ineq1 = false;
  bool ineq2 = false;

  bool ask() const { return ineq1 && ineq2; }
};

/// One indicator per direct action plus one for omega; 1 where the
/// expected utility is maximal within the tie tolerance.
struct IncentiveVector {
  std::vector<int> direct;
  int omega = 0;

  int m_alpha() const { return direct.at(0); }
  int m_beta() const { return direct.at(1); }
  bool ask_only() const;

  friend bool operator==(const IncentiveVector&, const IncentiveVector&) = default;
};

/// 2x3 table of (adversary, defender, human) payoffs with rows
/// indexed by the adversary's action and columns by the defender's
/// (alpha, beta, omega), for a rational aligned human.
struct DefenderTable {
  std::array<std::array<std::array<double, 3>, 3>, 2> entries{};
  int branch = 0;  // 1: a>c,b>d  2: a>c,b<d  3: a<c,b>d  4: a<c,b<d
};

DefenderTable build_gamma(const SymmetricGame& base);

/// Column-player strategy averaged uniformly over every equilibrium.
AdversaryStrategy nash_adversary_strategy(const Bimatrix& game);

AdversaryStrategy adversary_strategy(const AdversaryScenario& scenario);

ConditionalStats conditional_stats(const GameBelief& belief);

DefenderUtilities expected_utilities(const AdversaryScenario& scenario);
DefenderUtilities expected_utilities(const ConditionalStats& stats, double p,
                                     const MixedStrategy& adversary);

Theorem1Result theorem1_check(const AdversaryScenario& scenario, double tol = kDefaultTol);
Theorem1Result theorem1_check(const ConditionalStats& stats, double p,
                              const MixedStrategy& adversary, double tol = kDefaultTol);

IncentiveVector incentive_vector(std::span<const double> direct_values, double omega_value,
                                 double tie_tol = kDefaultTol);
IncentiveVector incentive_vector(const DefenderUtilities& utilities, double tie_tol = kDefaultTol);
IncentiveVector incentive_vector(const AdversaryScenario& scenario, double tie_tol = kDefaultTol);

/// mean m(omega) - max over direct actions of mean m(k); in [-1, 1].
double aggregate_corrigibility(std::span<const IncentiveVector> vectors);
double aggregate_corrigibility(std::span<const AdversaryScenario> ensemble,
                               double tie_tol = kDefaultTol);

/// Expected defender utility of each direct action and of asking, for
/// n x n games with a p-rational human mirroring per adversary column.
struct NActionUtilities {
  std::vector<double> direct;
  double omega = 0.0;
};

NActionUtilities n_action_utilities(const GameBelief& belief, double p,
                                    const MixedStrategy& adversary);

/// E[U|omega] - E[U|k] > tol for each direct action k.
std::vector<bool> n_action_check(const GameBelief& belief, double p,
                                 const MixedStrategy& adversary, double tol = kDefaultTol);

}  // namespace corrlab
