#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "corrlab/adversary.hpp"
#include "corrlab/corrigibility.hpp"
#include "corrlab/game.hpp"
#include "corrlab/io.hpp"
#include "corrlab/nash.hpp"
#include "corrlab/offswitch.hpp"
#include "corrlab/sweep.hpp"

namespace py = pybind11;
using namespace corrlab;

namespace {

using Table = std::vector<std::vector<double>>;

Table row_table(const Bimatrix& g) {
  Table t(g.rows(), std::vector<double>(g.cols()));
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) t[i][j] = g(i, j).row;
  return t;
}

Table col_table(const Bimatrix& g) {
  Table t(g.rows(), std::vector<double>(g.cols()));
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) t[i][j] = g(i, j).col;
  return t;
}

py::dict equilibria_dict(const EquilibriumSet& set) {
  py::list eqs;
  for (const auto& eq : set.equilibria) eqs.append(py::make_tuple(eq.row.probs(), eq.col.probs()));
  py::dict d;
  d["equilibria"] = eqs;
  d["degenerate"] = set.degenerate;
  return d;
}

AdversaryMode mode_from(const std::optional<std::vector<double>>& adversary) {
  return adversary ? AdversaryMode::Fixed(MixedStrategy(*adversary)) : AdversaryMode::NashPerGame();
}

GridFormat grid_format(const std::string& name) {
  if (name == "csv") return GridFormat::kCsv;
  if (name == "json") return GridFormat::kJson;
  throw py::value_error("format must be 'csv' or 'json'");
}

RenderMode render_mode(const std::string& name) {
  if (name == "rgb") return RenderMode::kRgbStrategy;
  if (name == "binary") return RenderMode::kCorrigibleBinary;
  if (name == "aggregate") return RenderMode::kAggregateScalar;
  throw py::value_error("render must be 'rgb', 'binary' or 'aggregate'");
}

SweepOptions sweep_options(std::size_t threads, double tol, std::size_t max_pairs, std::uint64_t seed) {
  SweepOptions o;
  o.threads = threads;
  o.tol = tol;
  o.max_pairs = max_pairs;
  o.seed = seed;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Corrigibility games: equilibria, adversary checks, off-switch and phase sweeps.";

  py::register_exception<SizeLimitError>(m, "SizeLimitError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Bimatrix>(m, "Game")
      .def(py::init(&Bimatrix::FromTables), py::arg("row_payoffs"), py::arg("col_payoffs"))
      .def_static("symmetric", [](std::array<double, 4> abcd) { return expand_symmetric({abcd}); },
                  py::arg("abcd"))
      .def_static("reduced",
                  [](std::array<double, 4> row, std::optional<std::array<double, 4>> col) {
                    return expand(col ? ReducedGame::Split(row, *col) : ReducedGame::Shared(row));
                  },
                  py::arg("row"), py::arg("col") = py::none())
      .def_static("from_json", &parse_game_json)
      .def_static("named", [](const std::string& name) {
        auto g = named_game(name);
        if (!g) throw py::key_error(name);
        return expand_symmetric(*g);
      })
      .def("to_json", &game_to_json)
      .def_property_readonly("shape", [](const Bimatrix& g) { return py::make_tuple(g.rows(), g.cols()); })
      .def_property_readonly("row_payoffs", &row_table)
      .def_property_readonly("col_payoffs", &col_table)
      .def("is_symmetric", &Bimatrix::is_symmetric)
      .def(py::self == py::self)
      .def("__repr__", [](const Bimatrix& g) { return "Game(" + game_to_json(g) + ")"; });

  m.def("ordinal_games", [] {
    std::vector<Bimatrix> out;
    for (const auto& g : enumerate_symmetric_ordinals()) out.push_back(expand_symmetric(g));
    return out;
  });

  m.def("classify", [](const Bimatrix& g) { return to_string(classify(g)); });

  m.def("solve", [](const Bimatrix& g, double tol) { return equilibria_dict(support_enumeration(g, tol)); },
        py::arg("game"), py::arg("tol") = kDefaultTol);

  m.def("is_equilibrium",
        [](const Bimatrix& g, std::vector<double> row, std::vector<double> col, double tol) {
          return is_equilibrium(g, MixedStrategy(std::move(row)), MixedStrategy(std::move(col)), tol);
        },
        py::arg("game"), py::arg("row"), py::arg("col"), py::arg("tol") = kDefaultTol);

  m.def("expected_nfg",
        [](std::vector<Bimatrix> games, std::vector<double> weights, double p1, std::optional<double> p2) {
          const RationalityBelief rat = p2 ? RationalityBelief::Independent(p1, *p2) : RationalityBelief::Shared(p1);
          return expected_nfg(GameBelief(std::move(games), std::move(weights)), rat);
        },
        py::arg("games"), py::arg("weights"), py::arg("p1"), py::arg("p2") = py::none());

  m.def("corrigibility_verdict",
        [](const Bimatrix& gamma, double tol) {
          const CorrigibilityVerdict v = corrigibility_verdict(gamma, tol);
          py::dict d = equilibria_dict(v.equilibria);
          d["corrigible"] = v.corrigible;
          d["selected"] = v.selected;
          d["colour"] = equilibrium_colour(v);
          return d;
        },
        py::arg("gamma"), py::arg("tol") = kDefaultTol);

  m.def("adversary_check",
        [](std::vector<Bimatrix> games, std::vector<double> weights, double p,
           std::optional<std::vector<double>> adversary, double tol) {
          const AdversaryScenario s(GameBelief(std::move(games), std::move(weights)), p, mode_from(adversary));
          py::dict d;
          const AdversaryStrategy adv = adversary_strategy(s);
          const IncentiveVector m = incentive_vector(s, tol);
          d["adversary"] = adv.strategy.probs();
          d["incentive"] = std::make_pair(m.direct, m.omega);
          if (s.n_actions() == 2) {
            const Theorem1Result t = theorem1_check(s, tol);
            const DefenderUtilities u = expected_utilities(s);
            d["ineq1"] = t.ineq1;
            d["ineq2"] = t.ineq2;
            d["lhs"] = std::make_pair(t.lhs1, t.lhs2);
            d["utilities"] = std::vector<double>{u.alpha, u.beta, u.omega};
            d["ask"] = t.ask();
          } else {
            const auto checks = n_action_check(s.belief, s.p, adv.strategy, tol);
            d["checks"] = checks;
            d["ask"] = std::all_of(checks.begin(), checks.end(), [](bool b) { return b; });
          }
          return d;
        },
        py::arg("games"), py::arg("weights"), py::arg("p"), py::arg("adversary") = py::none(),
        py::arg("tol") = kDefaultTol);

  m.def("solve_offswitch",
        [](double mu, double sigma, double beta) {
          const OffSwitchSolution s = solve_offswitch({mu, sigma, beta});
          py::dict d;
          d["p_r"] = s.p_r;
          d["p_a"] = s.p_a;
          d["expected"] = s.expected_values;
          d["strategy"] = s.strategy.probs();
          return d;
        },
        py::arg("mu"), py::arg("sigma"), py::arg("beta") = 0.0);

  py::class_<PhaseGrid>(m, "PhaseGrid")
      .def_property_readonly("kind", [](const PhaseGrid& g) { return to_string(g.kind); })
      .def_readonly("r_axis", &PhaseGrid::r_axis)
      .def_readonly("p_axis", &PhaseGrid::p_axis)
      .def("corrigible", [](const PhaseGrid& g, std::size_t ir, std::size_t ip) { return g.at(ir, ip).corrigible; })
      .def("strategies", [](const PhaseGrid& g, std::size_t ir, std::size_t ip) { return g.at(ir, ip).strategies; })
      .def("aggregate", [](const PhaseGrid& g, std::size_t ir, std::size_t ip) { return g.at(ir, ip).aggregate; })
      .def("write", [](const PhaseGrid& g, const std::string& format) { return write_grid(g, grid_format(format)); },
           py::arg("format") = "csv")
      .def("render", [](const PhaseGrid& g, const std::string& mode) { return render_heatmap(g, render_mode(mode)); },
           py::arg("mode"))
      .def_static("from_json", &read_grid_json)
      .def(py::self == py::self);

  m.def("sweep_corrigibility",
        [](const Bimatrix& g1, const Bimatrix& g2, std::size_t resolution, std::size_t threads, double tol) {
          py::gil_scoped_release release;
          return sweep_corrigibility(g1, g2, resolution, sweep_options(threads, tol, 0, 0));
        },
        py::arg("game1"), py::arg("game2"), py::arg("resolution") = kDefaultResolution,
        py::arg("threads") = 1, py::arg("tol") = kDefaultTol);

  m.def("sweep_adversary",
        [](const Bimatrix& g1, const Bimatrix& g2, std::size_t resolution,
           std::optional<std::vector<double>> adversary, std::size_t threads, double tol) {
          const AdversaryMode mode = mode_from(adversary);
          py::gil_scoped_release release;
          return sweep_adversary(g1, g2, resolution, mode, sweep_options(threads, tol, 0, 0));
        },
        py::arg("game1"), py::arg("game2"), py::arg("resolution") = kDefaultResolution,
        py::arg("adversary") = py::none(), py::arg("threads") = 1, py::arg("tol") = kDefaultTol);

  m.def("sweep_ensemble",
        [](const std::vector<Bimatrix>& games, std::size_t resolution, std::optional<std::vector<double>> adversary,
           std::size_t max_pairs, std::uint64_t seed, std::size_t threads, double tol) {
          const AdversaryMode mode = mode_from(adversary);
          py::gil_scoped_release release;
          return sweep_ensemble(games, resolution, mode, sweep_options(threads, tol, max_pairs, seed));
        },
        py::arg("games"), py::arg("resolution") = kDefaultResolution, py::arg("adversary") = py::none(),
        py::arg("max_pairs") = 0, py::arg("seed") = 0, py::arg("threads") = 1, py::arg("tol") = kDefaultTol);
}
