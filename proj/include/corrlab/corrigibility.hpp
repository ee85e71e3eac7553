#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "corrlab/game.hpp"
#include "corrlab/nash.hpp"

namespace corrlab {

/// Finite belief over which game is being played.
class GameBelief {
 public:
  GameBelief(std::vector<Bimatrix> games, std::vector<double> weights);

  static GameBelief Delta(Bimatrix game);
  /// Weight r on `first`, 1 - r on `second`. r = 0 and r = 1 are exact deltas.
  static GameBelief Bernoulli(double r, Bimatrix first, Bimatrix second);

  const std::vector<Bimatrix>& games() const { return games_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return games_.size(); }

 private:
  std::vector<Bimatrix> games_;
  std::vector<double> weights_;
};

/// Each agent's belief that the human steers rationally in its favour.
struct RationalityBelief {
  double p1 = 1.0;
  double p2 = 1.0;
  bool shared = true;

  static RationalityBelief Shared(double p);
  static RationalityBelief Independent(double p1, double p2);
};

/// Which of max (F) or min (G) fills each player's supervised entries.
enum class SubgameVariant { kFF, kFG, kGF, kGG };

struct CorrigibilityVerdict {
  bool corrigible = false;
  EquilibriumSet equilibria;
  // Index into equilibria of the reported equilibrium (maximal joint
  // omega probability when there are several).
  std::size_t selected = 0;
  std::array<double, 2> per_agent_omega{0.0, 0.0};

  bool multiple() const { return equilibria.size() > 1; }
};

using Rgb = std::array<int, 3>;

/// 3x3 game over (alpha, beta, omega) whose top-left block is `base` and
/// whose omega row/column/corner take the per-player max or min.
Bimatrix build_subgame(const Bimatrix& base, SubgameVariant variant);

/// Expected normal-form game over the game belief and human rationality.
Bimatrix expected_nfg(const GameBelief& belief, const RationalityBelief& rationality);

CorrigibilityVerdict corrigibility_verdict(const Bimatrix& gamma, double tol = kDefaultTol);

/// (P(alpha), P(beta), P(omega)) of each agent's reported equilibrium
/// strategy scaled to 0..255.
std::array<Rgb, 2> equilibrium_colour(const CorrigibilityVerdict& verdict);

int to_channel(double probability);

}  // namespace corrlab
