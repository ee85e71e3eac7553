#include "corrlab/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "corrlab/adversary.hpp"
#include "corrlab/corrigibility.hpp"
#include "corrlab/game.hpp"
#include "corrlab/io.hpp"
#include "corrlab/offswitch.hpp"

namespace corrlab::cli {

namespace {

using Json = nlohmann::ordered_json;

Json strategy_json(const MixedStrategy& s) { return s.probs(); }

Json equilibria_json(const EquilibriumSet& set) {
  Json list = Json::array();
  for (const auto& eq : set.equilibria) {
    list.push_back({{"row", strategy_json(eq.row)}, {"col", strategy_json(eq.col)}});
  }
  return list;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ParseError("--out", "cannot write '" + path + "'");
  file << contents;
  if (!file) throw ParseError("--out", "write failed for '" + path + "'");
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string output_format(const RunConfig& config) {
  if (config.format) {
    const std::string& f = *config.format;
    if (f != "csv" && f != "json" && f != "svg") throw ParseError("--format", "expected csv, json or svg");
    return f;
  }
  if (ends_with(config.out, ".json")) return "json";
  if (ends_with(config.out, ".svg")) return "svg";
  return "csv";
}

RenderMode render_mode(const RunConfig& config, RenderMode fallback) {
  if (!config.render) return fallback;
  if (*config.render == "rgb") return RenderMode::kRgbStrategy;
  if (*config.render == "binary") return RenderMode::kCorrigibleBinary;
  if (*config.render == "aggregate") return RenderMode::kAggregateScalar;
  throw ParseError("--render", "expected rgb, binary or aggregate");
}

std::optional<AdversaryMode> adversary_mode(const RunConfig& config) {
  if (!config.adv_mode) return std::nullopt;
  const std::string& text = *config.adv_mode;
  if (text == "nash") return AdversaryMode::NashPerGame();
  const std::string prefix = "fixed:";
  if (text.rfind(prefix, 0) != 0) throw ParseError("--adv-mode", "expected nash or fixed:x,y,...");
  std::vector<double> probs;
  std::stringstream items(text.substr(prefix.size()));
  std::string item;
  while (std::getline(items, item, ',')) {
    try {
      std::size_t used = 0;
      probs.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("--adv-mode", "bad probability '" + item + "'");
    }
  }
  try {
    return AdversaryMode::Fixed(MixedStrategy(std::move(probs)));
  } catch (const std::invalid_argument& e) {
    throw ParseError("--adv-mode", e.what());
  }
}

void check_resolution(const RunConfig& config) {
  if (config.resolution < 2) throw ParseError("--resolution", "must be at least 2");
  if (config.resolution > kMaxResolution) {
    throw SizeLimitError("--resolution: at most " + std::to_string(kMaxResolution) + " supported");
  }
}

Bimatrix load_game(const std::string& name_or_path, const std::string& flag) {
  if (name_or_path.empty()) throw ParseError(flag, "missing");
  try {
    return resolve_game(name_or_path);
  } catch (const ParseError& e) {
    throw ParseError(flag + " " + e.field(), std::string(e.what()).substr(e.field().size() + 2));
  }
}

SweepOptions sweep_options(const RunConfig& config) {
  SweepOptions options;
  options.threads = threads_from_environment();
  options.tol = config.tol;
  options.max_pairs = config.max_pairs;
  options.seed = config.seed;
  return options;
}

Json sweep_summary(const PhaseGrid& grid, std::size_t resolution) {
  std::size_t corrigible = 0, degenerate = 0, multiple = 0;
  for (const auto& cell : grid.cells) {
    corrigible += cell.corrigible;
    degenerate += cell.degenerate;
    multiple += cell.n_equilibria > 1;
  }
  Json summary;
  summary["kind"] = to_string(grid.kind);
  summary["resolution"] = resolution;
  summary["cells"] = grid.cells.size();
  summary["corrigible_cells"] = corrigible;
  summary["degenerate_cells"] = degenerate;
  if (grid.kind == GridKind::kCorrigibility) summary["multiple_cells"] = multiple;
  return summary;
}

void emit_grid(const RunConfig& config, const PhaseGrid& grid, RenderMode fallback) {
  if (config.out.empty()) return;
  const std::string format = output_format(config);
  if (format == "svg") {
    write_file(config.out, render_heatmap(grid, render_mode(config, fallback)));
  } else {
    write_file(config.out, write_grid(grid, format == "json" ? GridFormat::kJson : GridFormat::kCsv));
  }
}

void emit_document(const RunConfig& config, const Json& document) {
  if (!config.out.empty()) write_file(config.out, document.dump(2) + "\n");
}

Json do_classify(const RunConfig& config) {
  const Bimatrix game = load_game(config.game, "--game");
  if (game.rows() != 2 || game.cols() != 2) throw ParseError("--game", "classify needs a 2x2 game");
  const ResponseGraph graph = response_graph(game);
  Json pure = Json::array();
  for (const auto& [i, j] : pure_equilibria(game)) pure.push_back({i, j});
  Json summary;
  summary["class"] = to_string(classify(game));
  summary["pure_equilibria"] = std::move(pure);
  summary["cycle"] = graph.has_cycle();
  emit_document(config, summary);
  return summary;
}

Json do_solve(const RunConfig& config) {
  if (!config.game.empty() && !config.belief.empty()) {
    throw ParseError("--belief", "give either --game or --belief, not both");
  }
  Json summary;
  if (!config.belief.empty()) {
    const CorrigibilityScenario scenario = parse_corrigibility_scenario(read_text_file(config.belief));
    const Bimatrix gamma = expected_nfg(scenario.belief, scenario.rationality);
    const CorrigibilityVerdict verdict = corrigibility_verdict(gamma, config.tol);
    summary["n_equilibria"] = verdict.equilibria.size();
    summary["degenerate"] = verdict.equilibria.degenerate;
    summary["corrigible"] = verdict.corrigible;
    summary["selected"] = verdict.selected;
    summary["equilibria"] = equilibria_json(verdict.equilibria);
  } else {
    const Bimatrix game = load_game(config.game, "--game");
    const EquilibriumSet set = support_enumeration(game, config.tol);
    summary["n_equilibria"] = set.size();
    summary["degenerate"] = set.degenerate;
    summary["equilibria"] = equilibria_json(set);
  }
  emit_document(config, summary);
  return summary;
}

Json do_corr_sweep(const RunConfig& config) {
  check_resolution(config);
  const PhaseGrid grid = sweep_corrigibility(load_game(config.game1, "--game1"),
                                             load_game(config.game2, "--game2"),
                                             config.resolution, sweep_options(config));
  emit_grid(config, grid, RenderMode::kRgbStrategy);
  return sweep_summary(grid, config.resolution);
}

Json do_adv_sweep(const RunConfig& config) {
  check_resolution(config);
  if (config.p) throw ParseError("--p", "not used by adv-sweep; p is swept");
  const PhaseGrid grid = sweep_adversary(
      load_game(config.game1, "--game1"), load_game(config.game2, "--game2"), config.resolution,
      adversary_mode(config).value_or(AdversaryMode::NashPerGame()), sweep_options(config));
  emit_grid(config, grid, RenderMode::kCorrigibleBinary);
  return sweep_summary(grid, config.resolution);
}

Json do_adv_check(const RunConfig& config) {
  if (config.belief.empty()) throw ParseError("--belief", "missing");
  const AdversaryScenarioFile file = parse_adversary_scenario(read_text_file(config.belief));
  const AdversaryScenario scenario = make_adversary_scenario(file, config.p, adversary_mode(config));
  const AdversaryStrategy adversary = adversary_strategy(scenario);

  Json summary;
  Json detail;
  detail["adversary"] = strategy_json(adversary.strategy);
  detail["degenerate"] = adversary.degenerate;
  if (scenario.n_actions() == 2) {
    const Theorem1Result check = theorem1_check(scenario, config.tol);
    const DefenderUtilities u = expected_utilities(scenario);
    const IncentiveVector m = incentive_vector(u, config.tol);
    summary["ineq1"] = check.ineq1;
    summary["ineq2"] = check.ineq2;
    summary["ask"] = check.ask();
    detail["lhs"] = {check.lhs1, check.lhs2};
    detail["utilities"] = {u.alpha, u.beta, u.omega};
    detail["incentive"] = {m.direct[0], m.direct[1], m.omega};
  } else {
    const std::vector<bool> checks =
        n_action_check(scenario.belief, scenario.p, adversary.strategy, config.tol);
    const NActionUtilities u = n_action_utilities(scenario.belief, scenario.p, adversary.strategy);
    bool all = true;
    for (bool c : checks) all = all && c;
    summary["checks"] = checks;
    summary["ask"] = all;
    detail["utilities"] = {{"direct", u.direct}, {"omega", u.omega}};
  }
  Json document = summary;
  document.update(detail);
  emit_document(config, document);
  return summary;
}

Json do_ensemble_sweep(const RunConfig& config) {
  check_resolution(config);
  if (config.p) throw ParseError("--p", "not used by ensemble-sweep; p is swept");
  std::vector<Bimatrix> games;
  if (config.games.empty()) {
    for (const auto& g : enumerate_symmetric_ordinals()) games.push_back(expand_symmetric(g));
  } else {
    for (const auto& name : config.games) games.push_back(load_game(name, "--game"));
  }
  const PhaseGrid grid = sweep_ensemble(games, config.resolution,
                                        adversary_mode(config).value_or(AdversaryMode::NashPerGame()),
                                        sweep_options(config));
  emit_grid(config, grid, RenderMode::kAggregateScalar);
  Json summary = sweep_summary(grid, config.resolution);
  summary["games"] = games.size();
  return summary;
}

Json do_offswitch(const RunConfig& config) {
  const OffSwitchParams params{config.mu, config.sigma, config.beta};
  const OffSwitchSolution s = solve_offswitch(params);
  Json summary;
  summary["p_r"] = s.p_r;
  summary["p_a"] = s.p_a;
  summary["expected"] = s.expected_values;
  summary["strategy"] = strategy_json(s.strategy);
  emit_document(config, summary);
  return summary;
}

Json dispatch(const RunConfig& config) {
  switch (config.command) {
    case Command::kClassify:
      return do_classify(config);
    case Command::kSolve:
      return do_solve(config);
    case Command::kCorrSweep:
      return do_corr_sweep(config);
    case Command::kAdvSweep:
      return do_adv_sweep(config);
    case Command::kAdvCheck:
      return do_adv_check(config);
    case Command::kEnsembleSweep:
      return do_ensemble_sweep(config);
    case Command::kOffswitch:
      return do_offswitch(config);
  }
  throw ParseError("command", "unknown");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (!(config.tol > 0.0)) throw ParseError("--tol", "must be positive");
    out << dispatch(config).dump() << '\n';
    return 0;
  } catch (const SizeLimitError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Corrigibility games: solving, sweeps and off-switch analysis", "corrlab"};
  app.require_subcommand(1, 1);

  RunConfig config;
  double p = 0.0;
  std::string adv_mode, format, render;
  CLI::Option* p_opt = nullptr;

  auto tol_flag = [&](CLI::App* sub) {
    sub->add_option("--tol", config.tol, "Numerical tolerance")->check(CLI::PositiveNumber);
  };
  auto out_flags = [&](CLI::App* sub) {
    sub->add_option("--out", config.out, "Artifact path");
    sub->add_option("--format", format, "csv, json or svg (default: from --out extension)");
  };
  auto sweep_flags = [&](CLI::App* sub) {
    sub->add_option("--resolution", config.resolution, "Lattice points per axis");
    sub->add_option("--render", render, "SVG mode: rgb, binary or aggregate");
    tol_flag(sub);
    out_flags(sub);
  };

  auto* classify_cmd = app.add_subcommand("classify", "Classify a 2x2 game");
  classify_cmd->add_option("--game", config.game, "Game file or built-in name")->required();
  out_flags(classify_cmd);

  auto* solve_cmd = app.add_subcommand("solve", "Enumerate Nash equilibria");
  solve_cmd->add_option("--game", config.game, "Game file or built-in name");
  solve_cmd->add_option("--belief", config.belief, "Two-agent scenario file");
  tol_flag(solve_cmd);
  out_flags(solve_cmd);

  auto* corr_cmd = app.add_subcommand("corr-sweep", "Two-agent corrigibility phase grid");
  corr_cmd->add_option("--game1", config.game1, "Game with weight r")->required();
  corr_cmd->add_option("--game2", config.game2, "Game with weight 1 - r")->required();
  sweep_flags(corr_cmd);

  auto* adv_cmd = app.add_subcommand("adv-sweep", "Defender-versus-adversary phase grid");
  adv_cmd->add_option("--game1", config.game1, "Game with weight r")->required();
  adv_cmd->add_option("--game2", config.game2, "Game with weight 1 - r")->required();
  adv_cmd->add_option("--adv-mode", adv_mode, "nash or fixed:x,y,...");
  sweep_flags(adv_cmd);

  auto* check_cmd = app.add_subcommand("adv-check", "Ask-human inequalities for one scenario");
  check_cmd->add_option("--belief", config.belief, "Adversary scenario file")->required();
  p_opt = check_cmd->add_option("--p", p, "Human rationality")->check(CLI::Range(0.0, 1.0));
  check_cmd->add_option("--adv-mode", adv_mode, "nash or fixed:x,y,...");
  tol_flag(check_cmd);
  out_flags(check_cmd);

  auto* ens_cmd = app.add_subcommand("ensemble-sweep", "Aggregate corrigibility over game pairs");
  ens_cmd->add_option("--game", config.games, "Games (default: all 24 ordinal games)");
  ens_cmd->add_option("--max-pairs", config.max_pairs, "Sample at most this many pairs");
  ens_cmd->add_option("--seed", config.seed, "Seed for pair sampling");
  ens_cmd->add_option("--adv-mode", adv_mode, "nash or fixed:x,y,...");
  sweep_flags(ens_cmd);

  auto* off_cmd = app.add_subcommand("offswitch", "Solve the Gaussian off-switch game");
  off_cmd->add_option("--mu", config.mu, "Mean of U_a");
  off_cmd->add_option("--sigma", config.sigma, "Standard deviation of U_a");
  off_cmd->add_option("--beta", config.beta, "Human noise (0 = rational)");
  out_flags(off_cmd);

  std::vector<std::string> argv_storage{"corrlab"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  const std::pair<CLI::App*, Command> commands[] = {
      {classify_cmd, Command::kClassify},  {solve_cmd, Command::kSolve},
      {corr_cmd, Command::kCorrSweep},     {adv_cmd, Command::kAdvSweep},
      {check_cmd, Command::kAdvCheck},     {ens_cmd, Command::kEnsembleSweep},
      {off_cmd, Command::kOffswitch}};
  for (const auto& [sub, command] : commands) {
    if (sub->parsed()) config.command = command;
  }
  if (p_opt->count() > 0) config.p = p;
  if (!adv_mode.empty()) config.adv_mode = adv_mode;
  if (!format.empty()) config.format = format;
  if (!render.empty()) config.render = render;
  return run(config, out, err);
}

}  // namespace corrlab::cli
