#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace corrlab {

/// Index of a pure action; in 2x2 games 0 is alpha and 1 is beta, in the
/// 3x3 corrigibility games 2 is omega (ask the human).
using Action = std::size_t;

inline constexpr Action kAlpha = 0;
inline constexpr Action kBeta = 1;
inline constexpr Action kOmega = 2;

struct PayoffPair {
  double row = 0.0;
  double col = 0.0;

  friend bool operator==(const PayoffPair&, const PayoffPair&) = default;
};

/// Two-player normal-form game stored row-major. Entry (i, j) holds the row
/// player's and the column player's utility when row plays i and column j.
class Bimatrix {
 public:
  Bimatrix(std::size_t rows, std::size_t cols);
  Bimatrix(std::size_t rows, std::size_t cols, std::vector<PayoffPair> entries);

  /// Builds from two payoff tables given as nested rows.
  static Bimatrix FromTables(const std::vector<std::vector<double>>& row_payoffs,
                             const std::vector<std::vector<double>>& col_payoffs);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const PayoffPair& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  PayoffPair& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }

  double row_payoff(std::size_t i, std::size_t j) const { return (*this)(i, j).row; }
  double col_payoff(std::size_t i, std::size_t j) const { return (*this)(i, j).col; }

  const std::vector<PayoffPair>& entries() const { return entries_; }

  bool is_square() const { return rows_ == cols_; }
  /// True when the column player's table is the transpose of the row player's.
  bool is_symmetric() const;

  Bimatrix transposed() const;

  friend bool operator==(const Bimatrix&, const Bimatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<PayoffPair> entries_;
};

/// The <(a,b,c,d),(a~,b~,c~,d~)> shorthand for 2x2 games.
struct ReducedGame {
  std::array<double, 4> row_payoffs{};
  std::array<double, 4> col_payoffs{};
  bool shared = false;

  static ReducedGame Shared(std::array<double, 4> payoffs) {
    return {payoffs, payoffs, true};
  }
  static ReducedGame Split(std::array<double, 4> row, std::array<double, 4> col) {
    return {row, col, row == col};
  }
};

/// Symmetric 2x2 game (a,b,c,d) laid out as [[(a,a),(b,c)],[(c,b),(d,d)]].
struct SymmetricGame {
  std::array<double, 4> ordinal{};

  double a() const { return ordinal[0]; }
  double b() const { return ordinal[1]; }
  double c() const { return ordinal[2]; }
  double d() const { return ordinal[3]; }

  friend bool operator==(const SymmetricGame&, const SymmetricGame&) = default;
};

enum class GameClass { kMonotone, kHarmonic, kOther };

std::string to_string(GameClass kind);

struct ResponseEdge {
  std::size_t from = 0;  // node index
  std::size_t to = 0;
  int player = 0;        // 0 = row, 1 = column
  double improvement = 0.0;
};

/// Best-response (improvement) graph over pure profiles. Nodes are ordered
/// row-major: node k is the profile (k / cols, k % cols).
struct ResponseGraph {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::pair<Action, Action>> nodes;
  std::vector<ResponseEdge> edges;

  std::vector<std::size_t> sinks() const;
  bool has_cycle() const;
  std::size_t out_degree(std::size_t node) const;
};

Bimatrix expand(const ReducedGame& reduced);
Bimatrix expand_symmetric(const SymmetricGame& game);

/// Inverse of expand for 2x2 games. Sets `shared` when both tables coincide.
ReducedGame reduce(const Bimatrix& game);

/// Strict-dominance / no-pure-equilibrium taxonomy of 2x2 games. Throws
/// std::invalid_argument for any other shape.
GameClass classify(const Bimatrix& game);

ResponseGraph response_graph(const Bimatrix& game);

/// All 24 assignments of {1,2,3,4} to (a,b,c,d), lexicographically ordered.
std::vector<SymmetricGame> enumerate_symmetric_ordinals();

/// Symmetric n x n games whose row-player table is a uniform random
/// permutation of 1..n*n. Deterministic in `seed`.
std::vector<Bimatrix> sample_symmetric_games(std::size_t n_actions, std::size_t count,
                                             std::uint64_t seed);

/// Positive-affine map u -> scale * u + shift applied to one player's table.
Bimatrix affine_transform(const Bimatrix& game, int player, double scale, double shift);

}  // namespace corrlab
