#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "corrlab/game.hpp"

namespace corrlab {

inline constexpr double kDefaultTol = 1e-9;
// Equilibria closer than this (L-infinity) are reported once.
inline constexpr double kDedupTol = 1e-7;
// Largest game dimension accepted by support_enumeration.
inline constexpr std::size_t kMaxSolverActions = 4;

/// Probability vector over a player's actions.
class MixedStrategy {
 public:
  MixedStrategy() = default;
  /// Validates entries in [0,1] summing to 1 within 1e-9.
  explicit MixedStrategy(std::vector<double> probs);

  static MixedStrategy Pure(std::size_t n, std::size_t action);
  static MixedStrategy Uniform(std::size_t n);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t k) const { return probs_[k]; }
  const std::vector<double>& probs() const { return probs_; }

  /// Actions with probability above `eps`.
  std::vector<std::size_t> support(double eps = 0.0) const;

  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;

 private:
  std::vector<double> probs_;
};

struct Equilibrium {
  MixedStrategy row;
  MixedStrategy col;

  friend bool operator==(const Equilibrium&, const Equilibrium&) = default;
};

struct EquilibriumSet {
  std::vector<Equilibrium> equilibria;
  bool degenerate = false;

  std::size_t size() const { return equilibria.size(); }
  bool empty() const { return equilibria.empty(); }

  friend bool operator==(const EquilibriumSet&, const EquilibriumSet&) = default;
};

/// Thrown when a game exceeds kMaxSolverActions in either dimension.
class SizeLimitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Pure profiles (i, j) where neither player has a strictly better reply.
std::vector<std::pair<Action, Action>> pure_equilibria(const Bimatrix& game);

/// All Nash equilibria of a game of at most 4x4, deduplicated and sorted
/// lexicographically by (row, col) probabilities.
EquilibriumSet support_enumeration(const Bimatrix& game, double tol = kDefaultTol);

bool is_equilibrium(const Bimatrix& game, const MixedStrategy& row, const MixedStrategy& col,
                    double tol = kDefaultTol);

/// (row^T U_row col, row^T U_col col).
std::pair<double, double> expected_payoff(const Bimatrix& game, const MixedStrategy& row,
                                          const MixedStrategy& col);

/// Largest gain any player obtains from a pure deviation.
double max_deviation_gain(const Bimatrix& game, const std::vector<double>& row,
                          const std::vector<double>& col);

double linf_distance(const Equilibrium& a, const Equilibrium& b);

}  // namespace corrlab
