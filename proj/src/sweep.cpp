#include "corrlab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include "corrlab/random.hpp"

namespace corrlab {

std::string to_string(GridKind kind) {
  switch (kind) {
    case GridKind::kCorrigibility:
      return "corrigibility";
    case GridKind::kAdversary:
      return "adversary";
    case GridKind::kEnsemble:
      return "ensemble";
  }
  return "corrigibility";
}

std::size_t threads_from_environment() {
  const std::size_t cores = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CORRLAB_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<std::size_t>(value);
  }
  return cores;
}

std::vector<double> unit_lattice(std::size_t resolution) {
  if (resolution < 2) throw std::invalid_argument("unit_lattice: resolution must be >= 2");
  std::vector<double> axis(resolution);
  const double last = static_cast<double>(resolution - 1);
  for (std::size_t k = 0; k < resolution; ++k) axis[k] = static_cast<double>(k) / last;
  return axis;
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) {
        try {
          body(k);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {

PhaseGrid empty_grid(GridKind kind, std::size_t resolution, std::size_t agents) {
  PhaseGrid grid;
  grid.kind = kind;
  grid.r_axis = unit_lattice(resolution);
  grid.p_axis = unit_lattice(resolution);
  grid.agents = agents;
  grid.cells.resize(resolution * resolution);
  for (std::size_t ip = 0; ip < resolution; ++ip) {
    for (std::size_t ir = 0; ir < resolution; ++ir) {
      auto& cell = grid.cells[ip * resolution + ir];
      cell.r = grid.r_axis[ir];
      cell.p = grid.p_axis[ip];
    }
  }
  return grid;
}

std::vector<double> argmax_strategy(const IncentiveVector& m) {
  std::vector<double> s(m.direct.begin(), m.direct.end());
  s.push_back(m.omega);
  double count = 0.0;
  for (double v : s) count += v;
  for (double& v : s) v /= count;
  return s;
}

// Belief-weighted adversary mix, summed in the same order as
// adversary_strategy so both routes agree bit for bit.
MixedStrategy mix_strategies(const GameBelief& belief,
                             const std::vector<const MixedStrategy*>& per_game) {
  std::vector<double> mix(per_game.front()->size(), 0.0);
  for (std::size_t k = 0; k < belief.size(); ++k) {
    for (std::size_t j = 0; j < mix.size(); ++j) mix[j] += belief.weights()[k] * (*per_game[k])[j];
  }
  return MixedStrategy(std::move(mix));
}

void require_symmetric_pair(const Bimatrix& g1, const Bimatrix& g2, const char* who) {
  if (!g1.is_symmetric() || !g2.is_symmetric() || g1.rows() != g2.rows()) {
    throw std::invalid_argument(std::string(who) + ": games must be symmetric and equally sized");
  }
}

struct PreparedGame {
  Bimatrix game;
  MixedStrategy adversary;
  bool degenerate = false;
};

std::vector<PreparedGame> prepare(const std::vector<Bimatrix>& games, const AdversaryMode& mode) {
  std::vector<PreparedGame> out;
  out.reserve(games.size());
  for (const auto& g : games) {
    if (mode.kind == AdversaryMode::Kind::kFixed) {
      if (mode.fixed->size() != g.cols()) {
        throw std::invalid_argument("sweep: fixed adversary strategy size does not match games");
      }
      out.push_back({g, *mode.fixed, false});
    } else {
      AdversaryStrategy s = nash_adversary_strategy(g);
      out.push_back({g, std::move(s.strategy), s.degenerate});
    }
  }
  return out;
}

// Incentive vector of the defender for a Bernoulli(r) belief over a pair.
IncentiveVector pair_incentive(const PreparedGame& first, const PreparedGame& second, double r,
                               double p, const AdversaryMode& mode, double tol, bool& degenerate) {
  const GameBelief belief = GameBelief::Bernoulli(r, first.game, second.game);
  MixedStrategy adversary;
  if (mode.kind == AdversaryMode::Kind::kFixed) {
    adversary = *mode.fixed;
  } else if (r == 1.0) {
    adversary = mix_strategies(belief, {&first.adversary});
    degenerate = first.degenerate;
  } else if (r == 0.0) {
    adversary = mix_strategies(belief, {&second.adversary});
    degenerate = second.degenerate;
  } else {
    adversary = mix_strategies(belief, {&first.adversary, &second.adversary});
    degenerate = first.degenerate || second.degenerate;
  }
  const AdversaryScenario scenario(belief, p, AdversaryMode::Fixed(std::move(adversary)));
  return incentive_vector(scenario, tol);
}

}  // namespace

PhaseGrid sweep_corrigibility(const Bimatrix& game1, const Bimatrix& game2,
                              std::size_t resolution, const SweepOptions& options) {
  if (game1.rows() != 2 || game1.cols() != 2 || game2.rows() != 2 || game2.cols() != 2) {
    throw std::invalid_argument("sweep_corrigibility: games must be 2x2");
  }
  PhaseGrid grid = empty_grid(GridKind::kCorrigibility, resolution, 2);
  parallel_for(grid.cells.size(), options.threads, [&](std::size_t k) {
    CellRecord& cell = grid.cells[k];
    const GameBelief belief = GameBelief::Bernoulli(cell.r, game1, game2);
    const Bimatrix gamma = expected_nfg(belief, RationalityBelief::Shared(cell.p));
    const CorrigibilityVerdict verdict = corrigibility_verdict(gamma, options.tol);
    cell.equilibria = verdict.equilibria.equilibria;
    cell.n_equilibria = cell.equilibria.size();
    cell.selected = verdict.selected;
    cell.degenerate = verdict.equilibria.degenerate;
    cell.corrigible = verdict.corrigible;
    if (!cell.equilibria.empty()) {
      const auto& eq = cell.equilibria[cell.selected];
      cell.strategies = {eq.row.probs(), eq.col.probs()};
    }
  });
  return grid;
}

PhaseGrid sweep_adversary(const Bimatrix& game1, const Bimatrix& game2, std::size_t resolution,
                          const AdversaryMode& mode, const SweepOptions& options) {
  require_symmetric_pair(game1, game2, "sweep_adversary");
  const auto prepared = prepare({game1, game2}, mode);
  PhaseGrid grid = empty_grid(GridKind::kAdversary, resolution, 1);
  parallel_for(grid.cells.size(), options.threads, [&](std::size_t k) {
    CellRecord& cell = grid.cells[k];
    bool degenerate = false;
    const IncentiveVector m =
        pair_incentive(prepared[0], prepared[1], cell.r, cell.p, mode, options.tol, degenerate);
    cell.strategies = {argmax_strategy(m)};
    cell.degenerate = degenerate;
    cell.corrigible = m.ask_only();
    cell.incentive = m;
  });
  return grid;
}

PhaseGrid sweep_ensemble(const std::vector<Bimatrix>& games, std::size_t resolution,
                         const AdversaryMode& mode, const SweepOptions& options) {
  if (games.size() < 2) throw std::invalid_argument("sweep_ensemble: need at least two games");
  for (const auto& g : games) require_symmetric_pair(g, games.front(), "sweep_ensemble");
  const auto prepared = prepare(games, mode);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < games.size(); ++i) {
    for (std::size_t j = i + 1; j < games.size(); ++j) pairs.emplace_back(i, j);
  }
  if (options.max_pairs > 0 && pairs.size() > options.max_pairs) {
    Rng rng(options.seed);
    rng.shuffle(pairs);
    pairs.resize(options.max_pairs);
    std::sort(pairs.begin(), pairs.end());
  }

  PhaseGrid grid = empty_grid(GridKind::kEnsemble, resolution, 1);
  parallel_for(grid.cells.size(), options.threads, [&](std::size_t k) {
    CellRecord& cell = grid.cells[k];
    std::vector<IncentiveVector> vectors;
    vectors.reserve(pairs.size());
    std::vector<double> mean_strategy(games.front().rows() + 1, 0.0);
    bool degenerate = false;
    for (const auto& [i, j] : pairs) {
      bool pair_degenerate = false;
      vectors.push_back(pair_incentive(prepared[i], prepared[j], cell.r, cell.p, mode,
                                       options.tol, pair_degenerate));
      degenerate = degenerate || pair_degenerate;
      const auto s = argmax_strategy(vectors.back());
      for (std::size_t a = 0; a < s.size(); ++a) mean_strategy[a] += s[a];
    }
    for (double& v : mean_strategy) v /= static_cast<double>(pairs.size());
    cell.aggregate = aggregate_corrigibility(vectors);
    cell.strategies = {std::move(mean_strategy)};
    cell.degenerate = degenerate;
    cell.corrigible = *cell.aggregate > 0.0;
  });
  return grid;
}

}  // namespace corrlab
