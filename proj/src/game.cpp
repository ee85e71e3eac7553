#include "corrlab/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "corrlab/random.hpp"

namespace corrlab {

namespace {

void check_finite(const std::vector<PayoffPair>& entries) {
  for (const auto& e : entries) {
    if (!std::isfinite(e.row) || !std::isfinite(e.col)) {
      throw std::invalid_argument("Bimatrix: payoff entries must be finite");
    }
  }
}

}  // namespace

Bimatrix::Bimatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("Bimatrix: dimensions must be at least 1x1");
  }
}

Bimatrix::Bimatrix(std::size_t rows, std::size_t cols, std::vector<PayoffPair> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("Bimatrix: dimensions must be at least 1x1");
  }
  if (entries_.size() != rows * cols) {
    throw std::invalid_argument("Bimatrix: entry count does not match dimensions");
  }
  check_finite(entries_);
}

Bimatrix Bimatrix::FromTables(const std::vector<std::vector<double>>& row_payoffs,
                              const std::vector<std::vector<double>>& col_payoffs) {
  const std::size_t rows = row_payoffs.size();
  if (rows == 0 || col_payoffs.size() != rows) {
    throw std::invalid_argument("Bimatrix: payoff tables must have matching rows");
  }
  const std::size_t cols = row_payoffs.front().size();
  std::vector<PayoffPair> entries;
  entries.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (row_payoffs[i].size() != cols || col_payoffs[i].size() != cols) {
      throw std::invalid_argument("Bimatrix: ragged payoff table");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      entries.push_back({row_payoffs[i][j], col_payoffs[i][j]});
    }
  }
  return Bimatrix(rows, cols, std::move(entries));
}

bool Bimatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if ((*this)(i, j).col != (*this)(j, i).row) return false;
    }
  }
  return true;
}

Bimatrix Bimatrix::transposed() const {
  Bimatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const auto& e = (*this)(i, j);
      out(j, i) = {e.col, e.row};
    }
  }
  return out;
}

std::string to_string(GameClass kind) {
  switch (kind) {
    case GameClass::kMonotone:
      return "monotone";
    case GameClass::kHarmonic:
      return "harmonic";
    case GameClass::kOther:
      return "other";
  }
  return "other";
}

std::vector<std::size_t> ResponseGraph::sinks() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (out_degree(k) == 0) out.push_back(k);
  }
  return out;
}

std::size_t ResponseGraph::out_degree(std::size_t node) const {
  return static_cast<std::size_t>(std::count_if(
      edges.begin(), edges.end(), [node](const ResponseEdge& e) { return e.from == node; }));
}

bool ResponseGraph::has_cycle() const {
  // Iterative three-colour DFS.
  enum Colour : char { kWhite, kGrey, kBlack };
  std::vector<std::vector<std::size_t>> adjacency(nodes.size());
  for (const auto& e : edges) adjacency[e.from].push_back(e.to);
  std::vector<Colour> colour(nodes.size(), kWhite);
  for (std::size_t start = 0; start < nodes.size(); ++start) {
    if (colour[start] != kWhite) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{start, 0}};
    colour[start] = kGrey;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next < adjacency[node].size()) {
        const std::size_t to = adjacency[node][next++];
        if (colour[to] == kGrey) return true;
        if (colour[to] == kWhite) {
          colour[to] = kGrey;
          stack.emplace_back(to, 0);
        }
      } else {
        colour[node] = kBlack;
        stack.pop_back();
      }
    }
  }
  return false;
}

Bimatrix expand(const ReducedGame& reduced) {
  const auto& r = reduced.row_payoffs;
  const auto& c = reduced.shared ? reduced.row_payoffs : reduced.col_payoffs;
  return Bimatrix(2, 2, {{r[0], c[0]}, {r[1], c[1]}, {r[2], c[2]}, {r[3], c[3]}});
}

Bimatrix expand_symmetric(const SymmetricGame& g) {
  return Bimatrix(2, 2, {{g.a(), g.a()}, {g.b(), g.c()}, {g.c(), g.b()}, {g.d(), g.d()}});
}

ReducedGame reduce(const Bimatrix& game) {
  if (game.rows() != 2 || game.cols() != 2) {
    throw std::invalid_argument("reduce: reduced notation covers 2x2 games only");
  }
  std::array<double, 4> row{};
  std::array<double, 4> col{};
  for (std::size_t k = 0; k < 4; ++k) {
    row[k] = game(k / 2, k % 2).row;
    col[k] = game(k / 2, k % 2).col;
  }
  return ReducedGame::Split(row, col);
}

namespace {

// Index of the strictly dominant row (player 0) or column (player 1), or -1.
int strictly_dominant(const Bimatrix& g, int player) {
  const auto payoff = [&](std::size_t own, std::size_t other) {
    return player == 0 ? g(own, other).row : g(other, own).col;
  };
  for (std::size_t own = 0; own < 2; ++own) {
    const std::size_t alt = 1 - own;
    if (payoff(own, 0) > payoff(alt, 0) && payoff(own, 1) > payoff(alt, 1)) {
      return static_cast<int>(own);
    }
  }
  return -1;
}

}  // namespace

GameClass classify(const Bimatrix& game) {
  if (game.rows() != 2 || game.cols() != 2) {
    throw std::invalid_argument("classify: only 2x2 games are classified");
  }
  if (strictly_dominant(game, 0) >= 0 && strictly_dominant(game, 1) >= 0) {
    return GameClass::kMonotone;
  }
  const ResponseGraph graph = response_graph(game);
  if (graph.sinks().empty() && graph.has_cycle()) return GameClass::kHarmonic;
  return GameClass::kOther;
}

ResponseGraph response_graph(const Bimatrix& game) {
  ResponseGraph graph;
  graph.rows = game.rows();
  graph.cols = game.cols();
  for (std::size_t i = 0; i < game.rows(); ++i) {
    for (std::size_t j = 0; j < game.cols(); ++j) graph.nodes.emplace_back(i, j);
  }
  const auto node = [&](std::size_t i, std::size_t j) { return i * game.cols() + j; };
  for (std::size_t i = 0; i < game.rows(); ++i) {
    for (std::size_t j = 0; j < game.cols(); ++j) {
      for (std::size_t i2 = 0; i2 < game.rows(); ++i2) {
        const double gain = game(i2, j).row - game(i, j).row;
        if (i2 != i && gain > 0.0) graph.edges.push_back({node(i, j), node(i2, j), 0, gain});
      }
      for (std::size_t j2 = 0; j2 < game.cols(); ++j2) {
        const double gain = game(i, j2).col - game(i, j).col;
        if (j2 != j && gain > 0.0) graph.edges.push_back({node(i, j), node(i, j2), 1, gain});
      }
    }
  }
  return graph;
}

std::vector<SymmetricGame> enumerate_symmetric_ordinals() {
  std::array<double, 4> perm{1, 2, 3, 4};
  std::vector<SymmetricGame> out;
  do {
    out.push_back({perm});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<Bimatrix> sample_symmetric_games(std::size_t n_actions, std::size_t count,
                                             std::uint64_t seed) {
  if (n_actions < 2) {
    throw std::invalid_argument("sample_symmetric_games: n_actions must be >= 2");
  }
  Rng rng(seed);
  const std::size_t slots = n_actions * n_actions;
  std::vector<double> ordinals(slots);
  std::vector<Bimatrix> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::iota(ordinals.begin(), ordinals.end(), 1.0);
    rng.shuffle(ordinals);
    Bimatrix g(n_actions, n_actions);
    for (std::size_t i = 0; i < n_actions; ++i) {
      for (std::size_t j = 0; j < n_actions; ++j) {
        g(i, j) = {ordinals[i * n_actions + j], ordinals[j * n_actions + i]};
      }
    }
    out.push_back(std::move(g));
  }
  return out;
}

Bimatrix affine_transform(const Bimatrix& game, int player, double scale, double shift) {
  if (player != 0 && player != 1) throw std::invalid_argument("affine_transform: player must be 0 or 1");
  if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(shift)) {
    throw std::invalid_argument("affine_transform: need a positive finite scale and a finite shift");
  }
  Bimatrix out = game;
  for (std::size_t i = 0; i < game.rows(); ++i) {
    for (std::size_t j = 0; j < game.cols(); ++j) {
      auto& e = out(i, j);
      (player == 0 ? e.row : e.col) = scale * (player == 0 ? e.row : e.col) + shift;
    }
  }
  return out;
}

}  // namespace corrlab
