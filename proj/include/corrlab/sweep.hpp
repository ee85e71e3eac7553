#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "corrlab/adversary.hpp"
#include "corrlab/corrigibility.hpp"
#include "corrlab/game.hpp"
#include "corrlab/nash.hpp"

namespace corrlab {

enum class GridKind { kCorrigibility, kAdversary, kEnsemble };

std::string to_string(GridKind kind);

/// One lattice point. `strategies` holds one probability vector per agent
/// over (direct actions..., omega).
struct CellRecord {
  double r = 0.0;
  double p = 0.0;
  std::vector<std::vector<double>> strategies;
  std::vector<Equilibrium> equilibria;  // corrigibility grids only
  std::size_t selected = 0;
  std::size_t n_equilibria = 1;
  bool degenerate = false;
  bool corrigible = false;
  std::optional<IncentiveVector> incentive;  // adversary grids
  std::optional<double> aggregate;           // ensemble grids

  friend bool operator==(const CellRecord&, const CellRecord&) = default;
};

/// Cells are stored p-major: cell (ir, ip) lives at ip * r_axis.size() + ir.
struct PhaseGrid {
  GridKind kind = GridKind::kCorrigibility;
  std::vector<double> r_axis;
  std::vector<double> p_axis;
  std::size_t agents = 1;
  std::vector<CellRecord> cells;

  const CellRecord& at(std::size_t ir, std::size_t ip) const {
    return cells.at(ip * r_axis.size() + ir);
  }

  friend bool operator==(const PhaseGrid&, const PhaseGrid&) = default;
};

struct SweepOptions {
  std::size_t threads = 1;  // 0 = all available cores
  double tol = kDefaultTol;
  // Ensemble sweeps evaluate at most this many game pairs (0 = all pairs).
  std::size_t max_pairs = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kDefaultResolution = 101;

/// Thread count from CORRLAB_THREADS, else the number of available cores.
std::size_t threads_from_environment();

/// resolution points evenly spaced over [0, 1] including both ends.
std::vector<double> unit_lattice(std::size_t resolution);

/// Runs body(k) for k in [0, count) on up to `threads` workers. Results
/// must be written to disjoint slots; the first exception is rethrown.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

PhaseGrid sweep_corrigibility(const Bimatrix& game1, const Bimatrix& game2,
                              std::size_t resolution, const SweepOptions& options = {});

PhaseGrid sweep_adversary(const Bimatrix& game1, const Bimatrix& game2, std::size_t resolution,
                          const AdversaryMode& mode, const SweepOptions& options = {});

PhaseGrid sweep_ensemble(const std::vector<Bimatrix>& games, std::size_t resolution,
                         const AdversaryMode& mode, const SweepOptions& options = {});

enum class RenderMode { kRgbStrategy, kCorrigibleBinary, kAggregateScalar };

std::string render_heatmap(const PhaseGrid& grid, RenderMode mode);

/// "#RRGGBB" on the red(-1) -> white(0) -> blue(+1) ramp.
std::string aggregate_colour(double value);

enum class GridFormat { kCsv, kJson };

std::string write_grid(const PhaseGrid& grid, GridFormat format);
PhaseGrid read_grid_json(const std::string& text);

}  // namespace corrlab
