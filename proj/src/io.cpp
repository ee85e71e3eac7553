#include "corrlab/io.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace corrlab {

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    // e.what() carries the line and column.
    throw ParseError("<document>", e.what());
  }
}

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ParseError(where, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ParseError(where + "." + key, "unknown field");
  }
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ParseError(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(field, "payoff must be finite");
  return v;
}

std::array<double, 4> four(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 4) throw ParseError(field, "expected 4 numbers");
  std::array<double, 4> out{};
  for (std::size_t k = 0; k < 4; ++k) out[k] = number(j[k], field + "[" + std::to_string(k) + "]");
  return out;
}

Bimatrix game_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected a game object");
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw ParseError(where + ".kind", "missing or not a string");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "reduced") {
    check_keys(j, where, {"kind", "row", "col"});
    if (!j.contains("row")) throw ParseError(where + ".row", "missing");
    const auto row = four(j["row"], where + ".row");
    if (!j.contains("col")) return expand(ReducedGame::Shared(row));
    return expand(ReducedGame::Split(row, four(j["col"], where + ".col")));
  }
  if (kind == "symmetric") {
    check_keys(j, where, {"kind", "row"});
    if (!j.contains("row")) throw ParseError(where + ".row", "missing");
    return expand_symmetric({four(j["row"], where + ".row")});
  }
  if (kind == "bimatrix") {
    check_keys(j, where, {"kind", "payoffs"});
    const std::string field = where + ".payoffs";
    if (!j.contains("payoffs") || !j["payoffs"].is_array() || j["payoffs"].empty()) {
      throw ParseError(field, "expected a nonempty array of rows");
    }
    const auto& rows = j["payoffs"];
    const std::size_t n_cols = rows[0].is_array() ? rows[0].size() : 0;
    if (n_cols == 0) throw ParseError(field + "[0]", "expected a nonempty row");
    std::vector<PayoffPair> entries;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string row_field = field + "[" + std::to_string(i) + "]";
      if (!rows[i].is_array() || rows[i].size() != n_cols) {
        throw ParseError(row_field, "expected " + std::to_string(n_cols) + " entries");
      }
      for (std::size_t c = 0; c < n_cols; ++c) {
        const std::string cell = row_field + "[" + std::to_string(c) + "]";
        const auto& e = rows[i][c];
        if (!e.is_array() || e.size() != 2) throw ParseError(cell, "expected [u1, u2]");
        entries.push_back({number(e[0], cell + "[0]"), number(e[1], cell + "[1]")});
      }
    }
    return Bimatrix(rows.size(), n_cols, std::move(entries));
  }
  throw ParseError(where + ".kind", "unknown kind '" + kind + "'");
}

void parse_belief(const json& j, std::vector<Bimatrix>& games, std::vector<double>& weights) {
  if (!j.contains("belief") || !j["belief"].is_array() || j["belief"].empty()) {
    throw ParseError("belief", "expected a nonempty array");
  }
  for (std::size_t k = 0; k < j["belief"].size(); ++k) {
    const std::string where = "belief[" + std::to_string(k) + "]";
    const auto& atom = j["belief"][k];
    check_keys(atom, where, {"game", "weight"});
    if (!atom.contains("game")) throw ParseError(where + ".game", "missing");
    if (!atom.contains("weight")) throw ParseError(where + ".weight", "missing");
    games.push_back(game_from_json(atom["game"], where + ".game"));
    const double w = number(atom["weight"], where + ".weight");
    if (w < 0.0) throw ParseError(where + ".weight", "must be nonnegative");
    weights.push_back(w);
  }
  double total = 0.0;
  for (double w : weights) total += w;
  if (std::abs(total - 1.0) > 1e-12) throw ParseError("belief", "weights must sum to 1");
}

double probability(const json& j, const std::string& field) {
  const double v = number(j, field);
  if (v < 0.0 || v > 1.0) throw ParseError(field, "must lie in [0,1]");
  return v;
}

AdversaryMode mode_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "nash") return AdversaryMode::NashPerGame();
    throw ParseError("adv_mode", "expected \"nash\" or {\"fixed\": [...]}");
  }
  check_keys(j, "adv_mode", {"fixed"});
  if (!j.contains("fixed") || !j["fixed"].is_array()) {
    throw ParseError("adv_mode.fixed", "expected an array of probabilities");
  }
  std::vector<double> probs;
  for (std::size_t k = 0; k < j["fixed"].size(); ++k) {
    probs.push_back(probability(j["fixed"][k], "adv_mode.fixed[" + std::to_string(k) + "]"));
  }
  try {
    return AdversaryMode::Fixed(MixedStrategy(std::move(probs)));
  } catch (const std::invalid_argument& e) {
    throw ParseError("adv_mode.fixed", e.what());
  }
}

bool same_mode(const AdversaryMode& a, const AdversaryMode& b) {
  return a.kind == b.kind && a.fixed == b.fixed;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("path", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Bimatrix parse_game_json(const std::string& text) { return game_from_json(parse_text(text), "game"); }

Bimatrix parse_game_file(const std::string& path) { return parse_game_json(read_text_file(path)); }

std::string game_to_json(const Bimatrix& game) {
  json rows = json::array();
  for (std::size_t i = 0; i < game.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < game.cols(); ++j) row.push_back({game(i, j).row, game(i, j).col});
    rows.push_back(std::move(row));
  }
  return json{{"kind", "bimatrix"}, {"payoffs", std::move(rows)}}.dump();
}

std::optional<SymmetricGame> named_game(const std::string& name) {
  if (name == "no-conflict") return SymmetricGame{{4, 3, 2, 1}};
  if (name == "battle-of-the-sexes") return SymmetricGame{{2, 4, 3, 1}};
  if (name == "hero") return SymmetricGame{{2, 3, 4, 1}};
  return std::nullopt;
}

Bimatrix resolve_game(const std::string& name_or_path) {
  if (auto g = named_game(name_or_path)) return expand_symmetric(*g);
  return parse_game_file(name_or_path);
}

CorrigibilityScenario parse_corrigibility_scenario(const std::string& text) {
  const json j = parse_text(text);
  check_keys(j, "scenario", {"belief", "p1", "p2", "shared_p"});
  std::vector<Bimatrix> games;
  std::vector<double> weights;
  parse_belief(j, games, weights);
  if (j.contains("shared_p") && !j["shared_p"].is_boolean()) throw ParseError("shared_p", "expected true or false");
  const bool shared = j.value("shared_p", false);
  if (!j.contains("p1")) throw ParseError("p1", "missing");
  const double p1 = probability(j["p1"], "p1");
  double p2 = p1;
  if (j.contains("p2")) {
    p2 = probability(j["p2"], "p2");
  } else if (!shared) {
    throw ParseError("p2", "missing (required unless shared_p is true)");
  }
  if (shared && p2 != p1) throw ParseError("p2", "differs from p1 although shared_p is true");
  for (std::size_t k = 0; k < games.size(); ++k) {
    if (games[k].rows() != 2 || games[k].cols() != 2) {
      throw ParseError("belief[" + std::to_string(k) + "].game", "must be a 2x2 game");
    }
  }
  return {GameBelief(std::move(games), std::move(weights)),
          shared ? RationalityBelief::Shared(p1) : RationalityBelief::Independent(p1, p2)};
}

AdversaryScenarioFile parse_adversary_scenario(const std::string& text) {
  const json j = parse_text(text);
  check_keys(j, "scenario", {"belief", "p", "adv_mode"});
  AdversaryScenarioFile file;
  parse_belief(j, file.games, file.weights);
  for (std::size_t k = 0; k < file.games.size(); ++k) {
    if (!file.games[k].is_symmetric()) {
      throw ParseError("belief[" + std::to_string(k) + "].game", "must be a symmetric game");
    }
    if (file.games[k].rows() != file.games.front().rows()) {
      throw ParseError("belief[" + std::to_string(k) + "].game", "dimension differs from belief[0]");
    }
  }
  if (j.contains("p")) file.p = probability(j["p"], "p");
  if (j.contains("adv_mode")) file.mode = mode_from_json(j["adv_mode"]);
  return file;
}

AdversaryScenario make_adversary_scenario(const AdversaryScenarioFile& file,
                                          std::optional<double> p_override,
                                          std::optional<AdversaryMode> mode_override) {
  if (p_override && file.p && *p_override != *file.p) {
    throw ParseError("p", "flag value conflicts with the scenario file");
  }
  if (mode_override && file.mode && !same_mode(*mode_override, *file.mode)) {
    throw ParseError("adv_mode", "flag value conflicts with the scenario file");
  }
  const std::optional<double> p = p_override ? p_override : file.p;
  if (!p) throw ParseError("p", "missing");
  AdversaryMode mode = mode_override ? *mode_override : file.mode.value_or(AdversaryMode::NashPerGame());
  if (mode.kind == AdversaryMode::Kind::kFixed && mode.fixed->size() != file.games.front().cols()) {
    throw ParseError("adv_mode.fixed", "size does not match the games");
  }
  return AdversaryScenario(GameBelief(file.games, file.weights), *p, std::move(mode));
}

}  // namespace corrlab
