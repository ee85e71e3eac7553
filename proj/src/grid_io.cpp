#include <cstdio>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "corrlab/sweep.hpp"

namespace corrlab {

namespace {

using nlohmann::json;

std::string sig9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

GridKind parse_kind(const std::string& s) {
  if (s == "corrigibility") return GridKind::kCorrigibility;
  if (s == "adversary") return GridKind::kAdversary;
  if (s == "ensemble") return GridKind::kEnsemble;
  throw std::invalid_argument("grid json: unknown kind '" + s + "'");
}

json cell_to_json(const CellRecord& cell) {
  json j;
  j["r"] = cell.r;
  j["p"] = cell.p;
  j["strategies"] = cell.strategies;
  json eqs = json::array();
  for (const auto& eq : cell.equilibria) {
    eqs.push_back({{"row", eq.row.probs()}, {"col", eq.col.probs()}});
  }
  j["equilibria"] = std::move(eqs);
  j["selected"] = cell.selected;
  j["n_equilibria"] = cell.n_equilibria;
  j["degenerate"] = cell.degenerate;
  j["corrigible"] = cell.corrigible;
  if (cell.incentive) {
    j["incentive"] = {{"direct", cell.incentive->direct}, {"omega", cell.incentive->omega}};
  } else {
    j["incentive"] = nullptr;
  }
  j["aggregate"] = cell.aggregate ? json(*cell.aggregate) : json(nullptr);
  return j;
}

CellRecord cell_from_json(const json& j) {
  CellRecord cell;
  cell.r = j.at("r").get<double>();
  cell.p = j.at("p").get<double>();
  cell.strategies = j.at("strategies").get<std::vector<std::vector<double>>>();
  for (const auto& eq : j.at("equilibria")) {
    cell.equilibria.push_back({MixedStrategy(eq.at("row").get<std::vector<double>>()),
                               MixedStrategy(eq.at("col").get<std::vector<double>>())});
  }
  cell.selected = j.at("selected").get<std::size_t>();
  cell.n_equilibria = j.at("n_equilibria").get<std::size_t>();
  cell.degenerate = j.at("degenerate").get<bool>();
  cell.corrigible = j.at("corrigible").get<bool>();
  if (!j.at("incentive").is_null()) {
    cell.incentive = IncentiveVector{j["incentive"].at("direct").get<std::vector<int>>(),
                                     j["incentive"].at("omega").get<int>()};
  }
  if (!j.at("aggregate").is_null()) cell.aggregate = j["aggregate"].get<double>();
  return cell;
}

}  // namespace

std::string write_grid(const PhaseGrid& grid, GridFormat format) {
  if (format == GridFormat::kJson) {
    json j;
    j["kind"] = to_string(grid.kind);
    j["r_axis"] = grid.r_axis;
    j["p_axis"] = grid.p_axis;
    j["agents"] = grid.agents;
    json cells = json::array();
    for (const auto& cell : grid.cells) cells.push_back(cell_to_json(cell));
    j["cells"] = std::move(cells);
    return j.dump(1) + "\n";
  }

  std::ostringstream csv;
  csv << "r,p,agent,P_alpha,P_beta,P_omega,n_equilibria,corrigible\n";
  for (const auto& cell : grid.cells) {
    for (std::size_t agent = 0; agent < cell.strategies.size(); ++agent) {
      const auto& s = cell.strategies[agent];
      // Extra direct actions fold into the P_beta column.
      double rest = 0.0;
      for (std::size_t k = 1; k + 1 < s.size(); ++k) rest += s[k];
      csv << sig9(cell.r) << ',' << sig9(cell.p) << ',' << agent + 1 << ',' << sig9(s.front())
          << ',' << sig9(rest) << ',' << sig9(s.back()) << ',' << cell.n_equilibria << ','
          << (cell.corrigible ? 1 : 0) << '\n';
    }
  }
  return csv.str();
}

PhaseGrid read_grid_json(const std::string& text) {
  const json j = json::parse(text);
  PhaseGrid grid;
  grid.kind = parse_kind(j.at("kind").get<std::string>());
  grid.r_axis = j.at("r_axis").get<std::vector<double>>();
  grid.p_axis = j.at("p_axis").get<std::vector<double>>();
  grid.agents = j.at("agents").get<std::size_t>();
  for (const auto& c : j.at("cells")) grid.cells.push_back(cell_from_json(c));
  if (grid.cells.size() != grid.r_axis.size() * grid.p_axis.size()) {
    throw std::invalid_argument("grid json: cell count does not match axes");
  }
  return grid;
}

}  // namespace corrlab
