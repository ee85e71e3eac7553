#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "corrlab/nash.hpp"
#include "corrlab/sweep.hpp"

namespace corrlab::cli {

enum class Command { kClassify, kSolve, kCorrSweep, kAdvSweep, kAdvCheck, kEnsembleSweep, kOffswitch };

inline constexpr std::size_t kMaxResolution = 1001;

struct RunConfig {
  Command command = Command::kClassify;
  std::string game;                // classify, solve
  std::string game1, game2;        // corr-sweep, adv-sweep
  std::vector<std::string> games;  // ensemble-sweep; empty means all 24 ordinal games
  std::string belief;              // scenario file for solve and adv-check
  std::string out;
  std::optional<std::string> format;  // csv, json or svg; defaults from the extension of `out`
  std::optional<std::string> render;  // rgb, binary or aggregate
  std::size_t resolution = kDefaultResolution;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  std::size_t max_pairs = 0;
  std::optional<double> p;
  std::optional<std::string> adv_mode;  // "nash" or "fixed:x,y,..."
  double mu = 0.0;
  double sigma = 1.0;
  double beta = 0.0;
};

/// Parses argv-style arguments (without the program name) and executes
/// them. Returns 0 on success, 1 on malformed input, 2 on size caps.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace corrlab::cli
