#include <doctest.h>

#include <cmath>

#include "corrlab/adversary.hpp"
#include "corrlab/random.hpp"
#include "oracles.hpp"

using namespace corrlab;

namespace {

Bimatrix sym(double a, double b, double c, double d) { return expand_symmetric({{a, b, c, d}}); }

const Bimatrix kNoConflict = sym(4, 3, 2, 1);
const Bimatrix kBattle = sym(2, 4, 3, 1);
const Bimatrix kHero = sym(2, 3, 4, 1);

MixedStrategy two(double alpha) { return MixedStrategy({alpha, 1.0 - alpha}); }

std::vector<double> random_weights(Rng& rng, std::size_t n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (double& x : w) total += (x = rng.uniform(0.05, 1.0));
  for (double& x : w) x /= total;
  double rest = 1.0;
  for (std::size_t k = 0; k + 1 < n; ++k) rest -= w[k];
  w.back() = rest;
  return w;
}

// 2-5 symmetric games with small integer payoffs so ties occur.
AdversaryScenario random_scenario(Rng& rng, bool integer_payoffs) {
  const std::size_t n = 2 + rng.below(4);
  std::vector<Bimatrix> games;
  for (std::size_t k = 0; k < n; ++k) {
    std::array<double, 4> v{};
    for (double& x : v) x = integer_payoffs ? static_cast<double>(rng.below(4)) : rng.uniform(-5, 5);
    games.push_back(expand_symmetric({v}));
  }
  return AdversaryScenario(GameBelief(games, random_weights(rng, n)), rng.uniform(),
                           AdversaryMode::Fixed(two(rng.uniform())));
}

}  // namespace

TEST_SUITE("adversary") {

TEST_CASE("build_gamma branches") {
  const DefenderTable t = build_gamma({{4, 3, 2, 1}});
  CHECK(t.branch == 1);
  CHECK(t.entries[0][kOmega] == std::array<double, 3>{4, 4, 4});
  CHECK(t.entries[1][kOmega] == std::array<double, 3>{2, 3, 3});
  CHECK(t.entries[0][kBeta] == std::array<double, 3>{3, 2, 2});
  CHECK(build_gamma({{2, 3, 4, 1}}).branch == 3);
  CHECK(build_gamma({{2, 4, 3, 1}}).branch == 3);
  CHECK(build_gamma({{3, 1, 2, 4}}).branch == 2);
  CHECK(build_gamma({{1, 2, 3, 4}}).branch == 4);
  CHECK_THROWS_AS(build_gamma({{2, 1, 2, 3}}), std::invalid_argument);
}

TEST_CASE("build_gamma omega column mirrors the defender-best cell") {
  for (const auto& s : enumerate_symmetric_ordinals()) {
    if (s.a() == s.c() || s.b() == s.d()) continue;
    const DefenderTable t = build_gamma(s);
    for (int i = 0; i < 2; ++i) {
      const auto& best = t.entries[i][0][1] > t.entries[i][1][1] ? t.entries[i][0] : t.entries[i][1];
      CHECK(t.entries[i][kOmega] == best);
    }
  }
}

TEST_CASE("adversary strategy examples") {
  const AdversaryScenario delta(GameBelief::Delta(kNoConflict), 1.0, AdversaryMode::NashPerGame());
  CHECK(adversary_strategy(delta).strategy == two(1.0));

  const AdversaryScenario fixed(GameBelief::Bernoulli(0.3, kNoConflict, kHero), 0.4,
                                AdversaryMode::Fixed(two(0.3)));
  CHECK(adversary_strategy(fixed).strategy == two(0.3));

  const Bimatrix beta_game = sym(1, 2, 3, 4);
  CHECK(nash_adversary_strategy(beta_game).strategy == two(0.0));
  const AdversaryScenario half(GameBelief::Bernoulli(0.5, kNoConflict, beta_game), 1.0,
                               AdversaryMode::NashPerGame());
  CHECK(adversary_strategy(half).strategy == two(0.5));
}

TEST_CASE("Nash mode averages over every equilibrium of a game") {
  // Battle of the sexes: columns (1,0), (0.75,0.25), (0,1).
  const AdversaryStrategy s = nash_adversary_strategy(kBattle);
  CHECK(s.strategy[0] == doctest::Approx(1.75 / 3));
  CHECK_FALSE(s.degenerate);
}

TEST_CASE("expected utilities examples") {
  const GameBelief delta = GameBelief::Delta(kNoConflict);
  const auto u1 = expected_utilities(conditional_stats(delta), 1.0, two(1.0));
  CHECK(u1.alpha == 4);
  CHECK(u1.beta == 2);
  CHECK(u1.omega == 4);
  const auto u0 = expected_utilities(conditional_stats(delta), 0.0, two(1.0));
  CHECK(u0.omega == 2);
}

TEST_CASE("conditional stats partition the belief") {
  Rng rng(8);
  for (int k = 0; k < 200; ++k) {
    const AdversaryScenario s = random_scenario(rng, true);
    const ConditionalStats st = conditional_stats(s.belief);
    for (const PairStats* ps : {&st.ac, &st.bd}) {
      CHECK(ps->p_greater + ps->p_less + ps->p_tie == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(ps->x_given_greater.has_value() == (ps->p_greater > 0));
      CHECK(ps->x_given_less.has_value() == (ps->p_less > 0));
      if (ps->x_given_greater) CHECK(*ps->x_given_greater > *ps->y_given_greater);
      if (ps->x_given_less) CHECK(*ps->x_given_less < *ps->y_given_less);
    }
  }
}

TEST_CASE("inequality form equals direct enumeration, ties included") {
  Rng rng(1234);
  for (int k = 0; k < 1000; ++k) {
    const AdversaryScenario s = random_scenario(rng, k % 2 == 0);
    const MixedStrategy adv = adversary_strategy(s).strategy;
    const auto direct = oracle::enumerate_defender(s.belief, s.p, adv.probs());
    const DefenderUtilities u = expected_utilities(s);
    CHECK(std::abs(u.alpha - direct[0]) < 1e-9);
    CHECK(std::abs(u.beta - direct[1]) < 1e-9);
    CHECK(std::abs(u.omega - direct[2]) < 1e-9);

    const Theorem1Result t = theorem1_check(s);
    CHECK(std::abs(t.lhs1 - (direct[2] - direct[0])) < 1e-9);
    CHECK(std::abs(t.lhs2 - (direct[2] - direct[1])) < 1e-9);
  }
}

TEST_CASE("p = 1/2 puts asking at the midpoint") {
  Rng rng(55);
  for (int k = 0; k < 300; ++k) {
    const AdversaryScenario r = random_scenario(rng, k % 2 == 0);
    const AdversaryScenario s(r.belief, 0.5, r.mode);
    const DefenderUtilities u = expected_utilities(s);
    CHECK(std::abs(u.omega - (u.alpha + u.beta) / 2) < 1e-9);
    const Theorem1Result t = theorem1_check(s);
    CHECK(std::abs(t.lhs1 + t.lhs2) < 1e-9);
    CHECK_FALSE(t.ask());
  }
}

TEST_CASE("p = 0 never makes asking strictly best") {
  Rng rng(56);
  for (int k = 0; k < 300; ++k) {
    const AdversaryScenario r = random_scenario(rng, k % 2 == 0);
    const AdversaryScenario s(r.belief, 0.0, r.mode);
    const Theorem1Result t = theorem1_check(s);
    CHECK(t.lhs1 <= 1e-12);
    CHECK(t.lhs2 <= 1e-12);
    CHECK_FALSE(t.ask());
  }
}

TEST_CASE("p = 1 with two-sided uncertainty makes asking strictly best") {
  const AdversaryScenario s(GameBelief::Bernoulli(0.5, kNoConflict, sym(1, 2, 3, 4)), 1.0,
                            AdversaryMode::Fixed(two(0.4)));
  const Theorem1Result t = theorem1_check(s);
  CHECK(t.ineq1);
  CHECK(t.ineq2);
  CHECK(incentive_vector(s) == IncentiveVector{{0, 0}, 1});
}

TEST_CASE("incentive vector examples") {
  CHECK(incentive_vector(DefenderUtilities{4, 2, 4}) == IncentiveVector{{1, 0}, 1});
  CHECK(incentive_vector(DefenderUtilities{3, 2, 5}) == IncentiveVector{{0, 0}, 1});
  CHECK(incentive_vector(DefenderUtilities{1, 1, 1}) == IncentiveVector{{1, 1}, 1});
  CHECK(incentive_vector(DefenderUtilities{1, 1 + 1e-10, 0}) == IncentiveVector{{1, 1}, 0});
  CHECK(IncentiveVector{{0, 0}, 1}.ask_only());
  CHECK_FALSE(IncentiveVector{{1, 0}, 1}.ask_only());
}

TEST_CASE("aggregate examples") {
  const IncentiveVector ask{{0, 0}, 1}, act{{1, 0}, 0}, tie{{1, 0}, 1};
  CHECK(aggregate_corrigibility(std::vector<IncentiveVector>{ask, ask}) == 1.0);
  CHECK(aggregate_corrigibility(std::vector<IncentiveVector>{act, act, act}) == -1.0);
  CHECK(aggregate_corrigibility(std::vector<IncentiveVector>{ask, tie}) == 0.5);
  CHECK_THROWS_AS(aggregate_corrigibility(std::vector<IncentiveVector>{}), std::invalid_argument);

  const std::vector<AdversaryScenario> ensemble{
      AdversaryScenario(GameBelief::Delta(kNoConflict), 1.0, AdversaryMode::NashPerGame()),
      AdversaryScenario(GameBelief::Bernoulli(0.5, kNoConflict, sym(1, 2, 3, 4)), 1.0,
                        AdversaryMode::NashPerGame())};
  // Delta gives (1,0,1), the mixed belief (0,0,1).
  CHECK(aggregate_corrigibility(ensemble) == 0.5);
}

TEST_CASE("n-action check reduces to the 2x2 inequalities") {
  Rng rng(77);
  for (int k = 0; k < 300; ++k) {
    const AdversaryScenario s = random_scenario(rng, k % 2 == 0);
    const MixedStrategy adv = adversary_strategy(s).strategy;
    const Theorem1Result t = theorem1_check(s);
    CHECK(n_action_check(s.belief, s.p, adv) == std::vector<bool>{t.ineq1, t.ineq2});
  }
}

TEST_CASE("n-action check on 3x3 games") {
  Rng rng(91);
  int tested = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto games = sample_symmetric_games(3, 2 + seed % 3, seed);
    const GameBelief belief(games, random_weights(rng, games.size()));
    const MixedStrategy adv({0.2, 0.3, 0.5});
    // Asking can only beat action k if k misses some column maximum.
    bool uncertain = true;
    for (std::size_t k = 0; k < 3; ++k) {
      bool misses = false;
      for (const auto& g : games)
        for (std::size_t j = 0; j < 3; ++j)
          for (std::size_t i = 0; i < 3; ++i) misses = misses || g(i, j).row > g(k, j).row;
      uncertain = uncertain && misses;
    }
    if (uncertain) {
      ++tested;
      CHECK(n_action_check(belief, 1.0, adv) == std::vector<bool>{true, true, true});
    }
    const auto at_zero = n_action_check(belief, 0.0, adv);
    CHECK_FALSE((at_zero[0] && at_zero[1] && at_zero[2]));
    const auto direct = oracle::enumerate_defender(belief, 0.3, adv.probs());
    const NActionUtilities u = n_action_utilities(belief, 0.3, adv);
    for (std::size_t k = 0; k < 3; ++k) CHECK(u.direct[k] == doctest::Approx(direct[k]).epsilon(1e-12));
    CHECK(u.omega == doctest::Approx(direct[3]).epsilon(1e-12));
  }
  CHECK(tested > 50);
  const GameBelief three = GameBelief::Delta(sample_symmetric_games(3, 1, 0).front());
  CHECK_THROWS_AS(n_action_check(three, 1.0, two(0.5)), std::invalid_argument);
}

TEST_CASE("scenario validation") {
  CHECK_THROWS_AS(AdversaryScenario(GameBelief::Delta(expand(ReducedGame::Split({1, 2, 3, 4}, {1, 1, 1, 1}))),
                                    1.0, AdversaryMode::NashPerGame()),
                  std::invalid_argument);
  CHECK_THROWS_AS(AdversaryScenario(GameBelief::Delta(kHero), 1.5, AdversaryMode::NashPerGame()),
                  std::invalid_argument);
  CHECK_THROWS_AS(AdversaryScenario(GameBelief::Delta(kHero), 1.0,
                                    AdversaryMode::Fixed(MixedStrategy::Uniform(3))),
                  std::invalid_argument);
}

}  // TEST_SUITE
