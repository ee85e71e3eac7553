#include "corrlab/corrigibility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace corrlab {

GameBelief::GameBelief(std::vector<Bimatrix> games, std::vector<double> weights)
    : games_(std::move(games)), weights_(std::move(weights)) {
  if (games_.empty()) throw std::invalid_argument("GameBelief: no games");
  if (games_.size() != weights_.size()) {
    throw std::invalid_argument("GameBelief: one weight per game required");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("GameBelief: weights must be nonnegative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("GameBelief: weights must sum to 1");
  }
  for (const auto& g : games_) {
    if (g.rows() != games_.front().rows() || g.cols() != games_.front().cols()) {
      throw std::invalid_argument("GameBelief: games must share dimensions");
    }
  }
}

GameBelief GameBelief::Delta(Bimatrix game) { return GameBelief({std::move(game)}, {1.0}); }

GameBelief GameBelief::Bernoulli(double r, Bimatrix first, Bimatrix second) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("GameBelief: r outside [0,1]");
  if (r == 1.0) return Delta(std::move(first));
  if (r == 0.0) return Delta(std::move(second));
  return GameBelief({std::move(first), std::move(second)}, {r, 1.0 - r});
}

RationalityBelief RationalityBelief::Shared(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("RationalityBelief: p outside [0,1]");
  return {p, p, true};
}

RationalityBelief RationalityBelief::Independent(double p1, double p2) {
  if (!(p1 >= 0.0 && p1 <= 1.0) || !(p2 >= 0.0 && p2 <= 1.0)) {
    throw std::invalid_argument("RationalityBelief: p outside [0,1]");
  }
  return {p1, p2, false};
}

Bimatrix build_subgame(const Bimatrix& base, SubgameVariant variant) {
  if (base.rows() != 2 || base.cols() != 2) {
    throw std::invalid_argument("build_subgame: base game must be 2x2");
  }
  const bool row_max = variant == SubgameVariant::kFF || variant == SubgameVariant::kFG;
  const bool col_max = variant == SubgameVariant::kFF || variant == SubgameVariant::kGF;
  const auto h1 = [row_max](double x, double y) { return row_max ? std::max(x, y) : std::min(x, y); };
  const auto h2 = [col_max](double x, double y) { return col_max ? std::max(x, y) : std::min(x, y); };

  Bimatrix out(3, 3);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) out(i, j) = base(i, j);
  }
  for (std::size_t i = 0; i < 2; ++i) {
    out(i, kOmega) = {h1(base(i, 0).row, base(i, 1).row), h2(base(i, 0).col, base(i, 1).col)};
  }
  for (std::size_t j = 0; j < 2; ++j) {
    out(kOmega, j) = {h1(base(0, j).row, base(1, j).row), h2(base(0, j).col, base(1, j).col)};
  }
  out(kOmega, kOmega) = {
      h1(h1(base(0, 0).row, base(0, 1).row), h1(base(1, 0).row, base(1, 1).row)),
      h2(h2(base(0, 0).col, base(0, 1).col), h2(base(1, 0).col, base(1, 1).col))};
  return out;
}

namespace {

// sum_g w_g * G_variant(g)
Bimatrix belief_average(const GameBelief& belief, SubgameVariant variant) {
  Bimatrix acc(3, 3);
  for (std::size_t k = 0; k < belief.size(); ++k) {
    const Bimatrix sub = build_subgame(belief.games()[k], variant);
    const double w = belief.weights()[k];
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        acc(i, j).row += w * sub(i, j).row;
        acc(i, j).col += w * sub(i, j).col;
      }
    }
  }
  return acc;
}

void accumulate(Bimatrix& acc, const Bimatrix& term, double coefficient) {
  for (std::size_t i = 0; i < acc.rows(); ++i) {
    for (std::size_t j = 0; j < acc.cols(); ++j) {
      acc(i, j).row += coefficient * term(i, j).row;
      acc(i, j).col += coefficient * term(i, j).col;
    }
  }
}

}  // namespace

Bimatrix expected_nfg(const GameBelief& belief, const RationalityBelief& rat) {
  Bimatrix gamma(3, 3);
  if (rat.shared) {
    // A shared belief only ever sees both-rational or both-irrational play.
    accumulate(gamma, belief_average(belief, SubgameVariant::kFF), rat.p1);
    accumulate(gamma, belief_average(belief, SubgameVariant::kGG), 1.0 - rat.p1);
    return gamma;
  }
  const double p1 = rat.p1;
  const double p2 = rat.p2;
  accumulate(gamma, belief_average(belief, SubgameVariant::kFF), p1 * p2);
  accumulate(gamma, belief_average(belief, SubgameVariant::kFG), p1 * (1.0 - p2));
  accumulate(gamma, belief_average(belief, SubgameVariant::kGF), (1.0 - p1) * p2);
  accumulate(gamma, belief_average(belief, SubgameVariant::kGG), (1.0 - p1) * (1.0 - p2));
  return gamma;
}

CorrigibilityVerdict corrigibility_verdict(const Bimatrix& gamma, double tol) {
  if (gamma.rows() != 3 || gamma.cols() != 3) {
    throw std::invalid_argument("corrigibility_verdict: expected a 3x3 game");
  }
  CorrigibilityVerdict verdict;
  verdict.equilibria = support_enumeration(gamma, tol);
  const auto& eqs = verdict.equilibria.equilibria;
  if (eqs.empty()) return verdict;

  double best_joint = -1.0;
  for (std::size_t k = 0; k < eqs.size(); ++k) {
    const double joint = eqs[k].row[kOmega] * eqs[k].col[kOmega];
    if (joint > best_joint) {
      best_joint = joint;
      verdict.selected = k;
    }
  }
  const auto& chosen = eqs[verdict.selected];
  verdict.per_agent_omega = {chosen.row[kOmega], chosen.col[kOmega]};
  verdict.corrigible = eqs.size() == 1 && chosen.row[kOmega] >= 1.0 - tol &&
                       chosen.col[kOmega] >= 1.0 - tol;
  return verdict;
}

int to_channel(double probability) {
  const double scaled = std::clamp(probability, 0.0, 1.0) * 255.0;
  return static_cast<int>(std::floor(scaled + 0.5));
}

std::array<Rgb, 2> equilibrium_colour(const CorrigibilityVerdict& verdict) {
  std::array<Rgb, 2> out{};
  if (verdict.equilibria.empty()) return out;
  const auto& eq = verdict.equilibria.equilibria[verdict.selected];
  for (int c = 0; c < 3; ++c) {
    out[0][c] = to_channel(eq.row[static_cast<std::size_t>(c)]);
    out[1][c] = to_channel(eq.col[static_cast<std::size_t>(c)]);
  }
  return out;
}

}  // namespace corrlab
