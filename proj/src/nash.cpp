#include "corrlab/nash.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace corrlab {

MixedStrategy::MixedStrategy(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("MixedStrategy: empty");
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("MixedStrategy: probability outside [0,1]");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("MixedStrategy: probabilities sum to " + std::to_string(total));
  }
}

MixedStrategy MixedStrategy::Pure(std::size_t n, std::size_t action) {
  std::vector<double> p(n, 0.0);
  p.at(action) = 1.0;
  return MixedStrategy(std::move(p));
}

MixedStrategy MixedStrategy::Uniform(std::size_t n) {
  return MixedStrategy(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

std::vector<std::size_t> MixedStrategy::support(double eps) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < probs_.size(); ++k) {
    if (probs_[k] > eps) out.push_back(k);
  }
  return out;
}

std::vector<std::pair<Action, Action>> pure_equilibria(const Bimatrix& g) {
  std::vector<std::pair<Action, Action>> out;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      bool stable = true;
      for (std::size_t i2 = 0; i2 < g.rows() && stable; ++i2) {
        stable = g(i, j).row >= g(i2, j).row;
      }
      for (std::size_t j2 = 0; j2 < g.cols() && stable; ++j2) {
        stable = g(i, j).col >= g(i, j2).col;
      }
      if (stable) out.emplace_back(i, j);
    }
  }
  return out;
}

namespace {

// Per-action expected payoff of `player` against the opponent's mix.
std::vector<double> action_values(const Bimatrix& g, int player, const std::vector<double>& opp) {
  if (player == 0) {
    std::vector<double> v(g.rows(), 0.0);
    for (std::size_t i = 0; i < g.rows(); ++i) {
      for (std::size_t j = 0; j < g.cols(); ++j) v[i] += g(i, j).row * opp[j];
    }
    return v;
  }
  std::vector<double> v(g.cols(), 0.0);
  for (std::size_t j = 0; j < g.cols(); ++j) {
    for (std::size_t i = 0; i < g.rows(); ++i) v[j] += g(i, j).col * opp[i];
  }
  return v;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

std::vector<std::vector<std::size_t>> nonempty_subsets(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (1u << k)) s.push_back(k);
    }
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

// Mix over `support` for the opponent of `player` that makes `player`
// indifferent across `indifferent`. Solves
//   sum_{k in support} U(i, k) z_k - v = 0  (i in indifferent),  sum z = 1.
// Returns nullopt when the system has no unique solution; `singular` is set
// when the system is square but rank deficient.
std::optional<std::vector<double>> indifference_mix(const Bimatrix& g, int player,
                                                    const std::vector<std::size_t>& indifferent,
                                                    const std::vector<std::size_t>& support,
                                                    std::size_t opp_actions, bool& singular) {
  const auto n_eq = static_cast<Eigen::Index>(indifferent.size() + 1);
  const auto n_var = static_cast<Eigen::Index>(support.size() + 1);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_eq, n_var);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_eq);
  for (std::size_t r = 0; r < indifferent.size(); ++r) {
    for (std::size_t c = 0; c < support.size(); ++c) {
      const std::size_t own = indifferent[r];
      const std::size_t opp = support[c];
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          player == 0 ? g(own, opp).row : g(opp, own).col;
    }
    m(static_cast<Eigen::Index>(r), n_var - 1) = -1.0;
  }
  for (Eigen::Index c = 0; c + 1 < n_var; ++c) m(n_eq - 1, c) = 1.0;
  rhs(n_eq - 1) = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (lu.rank() < n_var) {
    if (n_eq == n_var) singular = true;
    return std::nullopt;
  }
  const Eigen::VectorXd z = lu.solve(rhs);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m * z - rhs).cwiseAbs().maxCoeff() > 1e-10 * scale) return std::nullopt;

  std::vector<double> mix(opp_actions, 0.0);
  for (std::size_t c = 0; c < support.size(); ++c) {
    mix[support[c]] = z(static_cast<Eigen::Index>(c));
  }
  return mix;
}

// Clips round-off negatives; rejects genuinely infeasible points.
std::optional<std::vector<double>> to_simplex(std::vector<double> p, double tol) {
  double total = 0.0;
  for (double& v : p) {
    if (!std::isfinite(v) || v < -tol) return std::nullopt;
    v = std::max(v, 0.0);
    total += v;
  }
  if (total <= 0.0) return std::nullopt;
  for (double& v : p) v = std::min(v / total, 1.0);
  return p;
}

std::size_t best_response_count(const std::vector<double>& values, double tol) {
  const double best = *std::max_element(values.begin(), values.end());
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [&](double v) { return v >= best - tol; }));
}

bool lex_less(const Equilibrium& a, const Equilibrium& b) {
  if (a.row.probs() != b.row.probs()) return a.row.probs() < b.row.probs();
  return a.col.probs() < b.col.probs();
}

class Collector {
 public:
  Collector(const Bimatrix& g, double tol) : game_(g), tol_(tol) {}

  void offer(const std::vector<double>& x, const std::vector<double>& y) {
    auto row = to_simplex(x, tol_);
    auto col = to_simplex(y, tol_);
    if (!row || !col) return;
    if (max_deviation_gain(game_, *row, *col) > tol_) return;
    Equilibrium eq{MixedStrategy(*row), MixedStrategy(*col)};
    for (auto& known : found_) {
      if (linf_distance(known, eq) < kDedupTol) {
        if (lex_less(eq, known)) known = std::move(eq);
        return;
      }
    }
    found_.push_back(std::move(eq));
  }

  // More pure best responses than support size signals a continuum.
  bool any_nash_degenerate() const {
    for (const auto& eq : found_) {
      const auto row_values = action_values(game_, 0, eq.col.probs());
      const auto col_values = action_values(game_, 1, eq.row.probs());
      if (best_response_count(row_values, tol_) > eq.row.support().size() ||
          best_response_count(col_values, tol_) > eq.col.support().size()) {
        return true;
      }
    }
    return false;
  }

  std::vector<Equilibrium> take() {
    std::sort(found_.begin(), found_.end(), lex_less);
    return std::move(found_);
  }

 private:
  const Bimatrix& game_;
  double tol_;
  std::vector<Equilibrium> found_;
};

}  // namespace

EquilibriumSet support_enumeration(const Bimatrix& g, double tol) {
  if (g.rows() > kMaxSolverActions || g.cols() > kMaxSolverActions) {
    throw SizeLimitError("support_enumeration: game is " + std::to_string(g.rows()) + "x" +
                         std::to_string(g.cols()) + ", limit is " +
                         std::to_string(kMaxSolverActions) + "x" +
                         std::to_string(kMaxSolverActions));
  }
  EquilibriumSet result;
  Collector collector(g, tol);
  const auto row_sets = nonempty_subsets(g.rows());
  const auto col_sets = nonempty_subsets(g.cols());

  // Equal-cardinality supports: the row player's support I is where the
  // column mix must make them indifferent, and vice versa.
  for (const auto& rows : row_sets) {
    for (const auto& cols : col_sets) {
      if (rows.size() != cols.size()) continue;
      bool singular = false;
      auto y = indifference_mix(g, 0, rows, cols, g.cols(), singular);
      auto x = indifference_mix(g, 1, cols, rows, g.rows(), singular);
      if (singular) result.degenerate = true;
      if (x && y) collector.offer(*x, *y);
    }
  }
  if (collector.any_nash_degenerate()) result.degenerate = true;

  if (result.degenerate) {
    // Extreme points of equilibrium continua: each is a pair of vertices
    // fixed by an arbitrary indifference set and support.
    std::vector<std::vector<double>> row_vertices;
    std::vector<std::vector<double>> col_vertices;
    bool unused = false;
    for (const auto& indiff : row_sets) {
      for (const auto& support : col_sets) {
        if (auto y = indifference_mix(g, 0, indiff, support, g.cols(), unused)) {
          if (auto s = to_simplex(*y, tol)) col_vertices.push_back(*s);
        }
      }
    }
    for (const auto& indiff : col_sets) {
      for (const auto& support : row_sets) {
        if (auto x = indifference_mix(g, 1, indiff, support, g.rows(), unused)) {
          if (auto s = to_simplex(*x, tol)) row_vertices.push_back(*s);
        }
      }
    }
    for (const auto& x : row_vertices) {
      for (const auto& y : col_vertices) collector.offer(x, y);
    }
  }
  result.equilibria = collector.take();
  return result;
}

double max_deviation_gain(const Bimatrix& g, const std::vector<double>& row,
                          const std::vector<double>& col) {
  const auto row_values = action_values(g, 0, col);
  const auto col_values = action_values(g, 1, row);
  const double row_gain = *std::max_element(row_values.begin(), row_values.end()) -
                          dot(row, row_values);
  const double col_gain = *std::max_element(col_values.begin(), col_values.end()) -
                          dot(col, col_values);
  return std::max(row_gain, col_gain);
}

bool is_equilibrium(const Bimatrix& g, const MixedStrategy& row, const MixedStrategy& col,
                    double tol) {
  if (row.size() != g.rows() || col.size() != g.cols()) {
    throw std::invalid_argument("is_equilibrium: strategy size does not match game");
  }
  return max_deviation_gain(g, row.probs(), col.probs()) <= tol;
}

std::pair<double, double> expected_payoff(const Bimatrix& g, const MixedStrategy& row,
                                          const MixedStrategy& col) {
  if (row.size() != g.rows() || col.size() != g.cols()) {
    throw std::invalid_argument("expected_payoff: strategy size does not match game");
  }
  double u1 = 0.0;
  double u2 = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      const double w = row[i] * col[j];
      u1 += w * g(i, j).row;
      u2 += w * g(i, j).col;
    }
  }
  return {u1, u2};
}

double linf_distance(const Equilibrium& a, const Equilibrium& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.row.size(); ++k) d = std::max(d, std::abs(a.row[k] - b.row[k]));
  for (std::size_t k = 0; k < a.col.size(); ++k) d = std::max(d, std::abs(a.col[k] - b.col[k]));
  return d;
}

}  // namespace corrlab
