#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "corrlab/adversary.hpp"
#include "corrlab/corrigibility.hpp"
#include "corrlab/game.hpp"

namespace corrlab {

/// Malformed input file. `field()` names the offending JSON path.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Game files:
//   {"kind": "reduced",   "row": [a,b,c,d], "col": [a~,b~,c~,d~]}  (col optional: shared)
//   {"kind": "symmetric", "row": [a,b,c,d]}
//   {"kind": "bimatrix",  "payoffs": [[[u1,u2], ...], ...]}
Bimatrix parse_game_json(const std::string& text);
Bimatrix parse_game_file(const std::string& path);
std::string game_to_json(const Bimatrix& game);

/// no-conflict, battle-of-the-sexes and hero as symmetric 2x2 games.
std::optional<SymmetricGame> named_game(const std::string& name);

/// Named alias or path to a game file.
Bimatrix resolve_game(const std::string& name_or_path);

// Two-agent scenario:
//   {"belief": [{"game": <game>, "weight": w}, ...], "p1": x, "p2": y, "shared_p": bool}
struct CorrigibilityScenario {
  GameBelief belief;
  RationalityBelief rationality;
};

CorrigibilityScenario parse_corrigibility_scenario(const std::string& text);

// Adversary scenario:
//   {"belief": [...], "p": x, "adv_mode": "nash" | {"fixed": [..]}}
// "p" and "adv_mode" may be left out and supplied by the caller.
struct AdversaryScenarioFile {
  std::vector<Bimatrix> games;
  std::vector<double> weights;
  std::optional<double> p;
  std::optional<AdversaryMode> mode;
};

AdversaryScenarioFile parse_adversary_scenario(const std::string& text);

/// Builds the scenario, filling absent file values from the overrides and
/// throwing ParseError when an override disagrees with a value in the file.
AdversaryScenario make_adversary_scenario(const AdversaryScenarioFile& file,
                                          std::optional<double> p_override = std::nullopt,
                                          std::optional<AdversaryMode> mode_override = std::nullopt);

std::string read_text_file(const std::string& path);

}  // namespace corrlab
