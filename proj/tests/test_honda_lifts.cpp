#include "doctest.h"

#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "ltlab/errors.hpp"
#include "ltlab/honda_lifts.hpp"

using namespace ltlab;

namespace {

LiftScenario scenario(ScenarioKind kind, std::uint64_t p, int d) {
  LiftScenario s;
  s.kind = kind;
  s.p = p;
  s.d = d;
  return s;
}

Subspace graph(const FiniteField& k, const FqElem& a1, const FqElem& a2, const FqElem& b1, const FqElem& b2) {
  return Subspace::from_basis(k, 4, {{a1, a2, k.one(), k.zero()}, {b1, b2, k.zero(), k.one()}});
}

HondaSystem ordinary_system(const FiniteField& k, const Subspace& L2) {
  return HondaSystem{std::make_shared<const DieudonneModule>(build_ordinary_module(k, k.zero(), k.one())), L2, nullptr,
                     ScenarioKind::OrdinaryNoRM};
}

}  // namespace

TEST_CASE("Honda axioms on the ordinary module") {
  FiniteField k(make_field(3, 1));
  auto m = build_ordinary_module(k, k.zero(), k.one());
  auto e = [&](std::size_t i) { return unit_vector(k, 4, i); };
  CHECK(is_valid_honda(k, Subspace::from_basis(k, 4, {e(2), e(3)}), m, nullptr));
  CHECK_FALSE(is_valid_honda(k, Subspace::from_basis(k, 4, {e(0), e(1)}), m, nullptr));
  CHECK_FALSE(is_valid_honda(k, Subspace::from_basis(k, 4, {e(2)}), m, nullptr));
  CHECK_FALSE(is_valid_honda(k, Subspace::from_basis(k, 4, {e(0), e(2)}), m, nullptr));

  // Independent construction: every graph over span(e3, e4) is valid, and they are distinct.
  std::set<std::vector<FqVector>> graphs;
  for (const auto& a1 : k.elements())
    for (const auto& a2 : k.elements())
      for (const auto& b1 : k.elements())
        for (const auto& b2 : k.elements()) {
          Subspace s = graph(k, a1, a2, b1, b2);
          CHECK(is_valid_honda(k, s, m, nullptr));
          graphs.insert(s.basis());
        }
  CHECK(graphs.size() == 81);
}

TEST_CASE("lift totals") {
  CHECK(enumerate_lifts(scenario(ScenarioKind::OrdinaryNoRM, 3, 1)).size() == 81);
  CHECK(enumerate_lifts(scenario(ScenarioKind::OrdinaryRMSplit, 5, 1)).size() == 25);
  CHECK(enumerate_lifts(scenario(ScenarioKind::NonordinaryRMSplit, 3, 1)).size() == 9);
  CHECK(enumerate_lifts(scenario(ScenarioKind::OrdinaryRMInert, 3, 1)).size() == 9);
  CHECK(enumerate_lifts(scenario(ScenarioKind::OrdinaryRMInert, 5, 1)).size() == 25);
  CHECK(enumerate_lifts(scenario(ScenarioKind::OrdinaryRMSplit, 3, 2)).size() == 81);
  CHECK(enumerate_lifts(scenario(ScenarioKind::NonordinaryRMSplit, 3, 2)).size() == 81);
  for (auto kind : all_scenario_kinds())
    for (std::uint64_t p : {3u, 5u, 7u}) {
      auto s = scenario(kind, p, 1);
      CHECK(count_lifts(s, false).total == expected_total(s));
    }
  CHECK(count_lifts(scenario(ScenarioKind::OrdinaryNoRM, 3, 2), false).total == 6561);
}

TEST_CASE("guards and unavailable scenarios") {
  CHECK_THROWS_AS(count_lifts(scenario(ScenarioKind::OrdinaryNoRM, 11, 2), false), GuardExceeded);
  CHECK_THROWS_AS(count_lifts(scenario(ScenarioKind::OrdinaryRMInert, 3, 2), false), std::domain_error);
  CHECK_THROWS_AS(count_lifts(scenario(ScenarioKind::OrdinaryNoRM, 3, 3), true), GuardExceeded);
  FiniteField k(make_field(3, 3));
  CHECK_THROWS_AS(SplittingOracle(k, build_ordinary_module(k, k.zero(), k.one())), GuardExceeded);
  CHECK(parse_scenario_kind("ordinary-rm-inert") == ScenarioKind::OrdinaryRMInert);
  CHECK_THROWS_AS(parse_scenario_kind("bogus"), std::invalid_argument);
  // A non-diagonal character is not an RM endomorphism.
  auto s = scenario(ScenarioKind::OrdinaryRMSplit, 5, 1);
  s.mu = FqElem{{1}};
  CHECK_THROWS_AS(count_lifts(s, false), std::invalid_argument);
}

TEST_CASE("elevated counts with trivial character") {
  CHECK(count_elevated(scenario(ScenarioKind::OrdinaryNoRM, 3, 1)) == 33);
  CHECK(count_elevated(scenario(ScenarioKind::OrdinaryRMSplit, 5, 1)) == 9);
  CHECK(count_elevated(scenario(ScenarioKind::NonordinaryRMSplit, 7, 1)) == 7);
  CHECK(count_elevated(scenario(ScenarioKind::OrdinaryRMInert, 7, 1)) == 1);
  CHECK(count_elevated(scenario(ScenarioKind::OrdinaryRMSplit, 3, 2)) == 17);
  CHECK(count_elevated(scenario(ScenarioKind::NonordinaryRMSplit, 3, 2)) == 9);
  CHECK(count_elevated(scenario(ScenarioKind::OrdinaryNoRM, 3, 2)) == 801);
}

TEST_CASE("F_p-rational elevated counts") {
  CHECK(count_elevated_z_p2(scenario(ScenarioKind::OrdinaryRMSplit, 5, 2)) == 9);
  CHECK(count_elevated_z_p2(scenario(ScenarioKind::NonordinaryRMSplit, 3, 2)) == 3);
  for (std::uint64_t p : {3u, 5u, 7u}) CHECK(count_elevated_z_p2(scenario(ScenarioKind::OrdinaryRMInert, p, 1)) == 1);
  // For d = 1 every coordinate is rational.
  CHECK(count_elevated_z_p2(scenario(ScenarioKind::OrdinaryRMSplit, 7, 1)) == 13);
  // Without RM the rational count is p^3 + p^2 - p, above 2p - 1.
  CHECK(count_elevated_z_p2(scenario(ScenarioKind::OrdinaryNoRM, 3, 2)) == 33);
}

TEST_CASE("coordinate criterion agrees with the splitting search for d = 1") {
  for (auto kind : all_scenario_kinds())
    for (std::uint64_t p : {3u, 5u}) {
      CAPTURE(to_string(kind));
      CAPTURE(p);
      auto c = count_lifts(scenario(kind, p, 1), true);
      REQUIRE(c.mismatches.has_value());
      CHECK(*c.mismatches == 0);
    }
  auto c = count_lifts(scenario(ScenarioKind::OrdinaryRMSplit, 3, 2), true);
  CHECK(*c.mismatches == 0);
  c = count_lifts(scenario(ScenarioKind::NonordinaryRMSplit, 3, 2), true);
  CHECK(*c.mismatches == 0);
}

TEST_CASE("splitting search over F_9 without RM") {
  // Constant lines need a sigma-fixed generator, so only p + 1 of the p^2 + 1
  // etale lines qualify: the search finds (p + 1)(q^2 - 1) + 1 split lifts.
  FiniteField k(make_field(3, 2));
  auto m = build_ordinary_module(k, k.zero(), k.one());
  SplittingOracle oracle(k, m);
  CHECK(oracle.constant_lines() == 4);
  std::uint64_t split = 0;
  for_each_lift(k, scenario(ScenarioKind::OrdinaryNoRM, 3, 2),
                [&](const HondaSystem& h) { split += oracle.elevated(h.L2) ? 1 : 0; });
  CHECK(split == 4 * 80 + 1);
}

TEST_CASE("coordinate criterion examples") {
  FiniteField k(make_field(5, 1));
  auto z = k.zero();
  for (auto kind : all_scenario_kinds()) {
    auto s = scenario(kind, 5, 1);
    bool canonical_found = false;
    for_each_lift(k, s, [&](const HondaSystem& h) {
      auto c = lift_coordinates(k, h);
      bool zero = true;
      for (auto& row : c.coords)
        for (auto& e : row) zero = zero && k.is_zero(e);
      if (!zero) return;
      canonical_found = true;
      CHECK(elevated_coordinate(k, h));
      CHECK(elevated_bruteforce(k, h));
    });
    CHECK(canonical_found);
  }
  auto h = ordinary_system(k, graph(k, z, k.from_int(2), z, k.from_int(3)));
  CHECK(elevated_coordinate(k, h));
  CHECK(elevated_bruteforce(k, h));
  auto g = ordinary_system(k, graph(k, k.one(), z, z, k.one()));
  CHECK_FALSE(elevated_coordinate(k, g));
  CHECK_FALSE(elevated_bruteforce(k, g));
  // Dependent etale parts share a line after a basis change.
  auto dep = ordinary_system(k, graph(k, k.one(), k.from_int(2), k.from_int(2), k.from_int(4)));
  CHECK(elevated_coordinate(k, dep));
  CHECK(elevated_bruteforce(k, dep));

  std::uint64_t inert_elevated = 0;
  for_each_lift(k, scenario(ScenarioKind::OrdinaryRMInert, 5, 1),
                [&](const HondaSystem& x) { inert_elevated += elevated_coordinate(k, x) ? 1 : 0; });
  CHECK(inert_elevated == 1);

  auto twisted = HondaSystem{std::make_shared<const DieudonneModule>(build_ordinary_module(k, z, k.from_int(2))),
                             graph(k, z, z, z, z), nullptr, ScenarioKind::OrdinaryNoRM};
  CHECK_THROWS_AS(elevated_coordinate(k, twisted), std::domain_error);
}

TEST_CASE("normal form of ordinary lifts") {
  FiniteField k(make_field(3, 1));
  std::set<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t>> tuples;
  for_each_lift(k, scenario(ScenarioKind::OrdinaryNoRM, 3, 1), [&](const HondaSystem& h) {
    auto c = lift_coordinates(k, h);
    CHECK(subspace_from_coordinates(k, c) == h.L2);
    CHECK(h.L2 == graph(k, c.coords[0][0], c.coords[1][0], c.coords[0][1], c.coords[1][1]));
    tuples.emplace(k.index_of(c.coords[0][0]), k.index_of(c.coords[1][0]), k.index_of(c.coords[0][1]),
                   k.index_of(c.coords[1][1]));
  });
  CHECK(tuples.size() == 81);

  // RM lifts have the diagonal shape of the O (x) k-span.
  FiniteField k5(make_field(5, 1));
  for_each_lift(k5, scenario(ScenarioKind::OrdinaryRMSplit, 5, 1), [&](const HondaSystem& h) {
    auto c = lift_coordinates(k5, h);
    CHECK(k5.is_zero(c.coords[1][0]));
    CHECK(k5.is_zero(c.coords[0][1]));
  });
  for_each_lift(k5, scenario(ScenarioKind::NonordinaryRMSplit, 5, 1), [&](const HondaSystem& h) {
    auto c = lift_coordinates(k5, h);
    CHECK(k5.is_zero(c.coords[1][0]));
    CHECK(k5.is_zero(c.coords[0][1]));
  });
}

TEST_CASE("nontrivial characters never increase the count") {
  for (std::uint64_t p : {3u, 5u}) {
    FiniteField k(make_field(p, 1));
    auto base = scenario(ScenarioKind::OrdinaryNoRM, p, 1);
    const auto trivial = count_elevated(base);
    for (const auto& chi : k.elements()) {
      if (k.is_zero(chi)) continue;
      for (const auto& mu : k.elements()) {
        auto s = base;
        s.mu = mu;
        s.chi = chi;
        auto c = count_lifts(s, false);
        CHECK(c.total == expected_total(s));
        CHECK(c.elevated <= trivial);
        if (!s.trivial_character()) CHECK(c.elevated < trivial);
      }
    }
    auto split = scenario(ScenarioKind::OrdinaryRMSplit, p, 1);
    split.chi = k.from_int(2);
    CHECK(count_elevated(split) <= count_elevated(scenario(ScenarioKind::OrdinaryRMSplit, p, 1)));
  }
}

TEST_CASE("counts do not depend on the local-local representative") {
  // Rescaling V on the local-local block gives an isomorphic module.
  for (std::uint64_t p : {3u, 5u}) {
    FiniteField k(make_field(p, 1));
    auto base = build_nonordinary_module(k);
    for (std::int64_t lambda = 1; lambda < static_cast<std::int64_t>(p); ++lambda) {
      FqMatrix V = base.V_matrix;
      V.at(0, 1) = k.from_int(lambda);
      auto m = make_module(k, base.F_matrix, V, base.labels);
      auto rm = split_rm_nonordinary(k);
      REQUIRE(rm_commutes(k, m, rm));
      SplittingOracle oracle(k, m);
      std::uint64_t total = 0, elevated = 0;
      enumerate_subspaces(k, 4, 2, [&](const Subspace& s) {
        if (!is_valid_honda(k, s, m, &rm)) return;
        ++total;
        elevated += oracle.elevated(s) ? 1 : 0;
      });
      CHECK(total == p * p);
      CHECK(elevated == p);
    }
  }
}

TEST_CASE("sharded enumeration partitions the lifts") {
  auto s = scenario(ScenarioKind::OrdinaryNoRM, 3, 1);
  std::uint64_t total = 0, elevated = 0;
  for (std::uint64_t i = 0; i < 4; ++i) {
    auto c = count_lifts(s, false, Shard{i, 4});
    total += c.total;
    elevated += c.elevated;
  }
  CHECK(total == 81);
  CHECK(elevated == 33);
  CHECK_THROWS_AS(count_lifts(s, false, Shard{4, 4}), std::invalid_argument);
}

TEST_CASE("count table rows") {
  auto row = tabulate(scenario(ScenarioKind::OrdinaryRMSplit, 5, 1), true);
  CHECK(row.scenario == "ordinary-rm-split");
  CHECK(row.total == 25);
  CHECK(row.elevated == 9);
  CHECK(row.elevated_fp_rational == 9);
  CHECK(row.expected_fp_rational == std::optional<std::uint64_t>{9});
  CHECK(row.oracle_mismatches == std::optional<std::uint64_t>{0});
  CHECK(row.match);
  auto none = tabulate(scenario(ScenarioKind::OrdinaryNoRM, 3, 1), false);
  CHECK(none.match);
  CHECK_FALSE(none.expected_fp_rational.has_value());
  CHECK_FALSE(none.oracle_mismatches.has_value());
}
