#pragma once

// Restricted Honda systems (L2, M) over W_2 for the p-torsion Dieudonne modules
// of ordinary and nonordinary abelian surfaces, with two independent tests for
// elevated p-rank of the corresponding lift.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ltlab/dieudonne.hpp"

namespace ltlab {

enum class ScenarioKind { OrdinaryNoRM, OrdinaryRMSplit, OrdinaryRMInert, NonordinaryRMSplit };

std::string to_string(ScenarioKind kind);
/// Accepts the names produced by to_string; throws std::invalid_argument otherwise.
ScenarioKind parse_scenario_kind(const std::string& name);
std::vector<ScenarioKind> all_scenario_kinds();

struct LiftScenario {
  ScenarioKind kind = ScenarioKind::OrdinaryNoRM;
  std::uint64_t p = 3;
  int d = 1;
  FqElem mu{};           // off-diagonal of the etale character, ordinary only
  FqElem chi{{1}};       // diagonal character value
  bool trivial_character() const { return mu == FqElem{} && chi == FqElem{{1}}; }
};

struct HondaSystem {
  std::shared_ptr<const DieudonneModule> M;
  Subspace L2;
  std::shared_ptr<const RMStructure> rm;  // null without real multiplication
  ScenarioKind kind = ScenarioKind::OrdinaryNoRM;
};

/// Module and RM action for a scenario. Throws std::invalid_argument when the
/// character is incompatible with the RM action, std::domain_error when the
/// scenario does not exist over this field (inert with even d).
DieudonneModule scenario_module(const FiniteField& k, const LiftScenario& s);
std::optional<RMStructure> scenario_rm(const FiniteField& k, const LiftScenario& s);

bool is_valid_honda(const FiniteField& k, const Subspace& L2, const DieudonneModule& M, const RMStructure* rm);

/// Upper bound on p^{4d} for exhaustive enumeration.
inline constexpr std::uint64_t kLiftGuard = 10'000'000;
/// Upper bound on p^d for the splitting search.
inline constexpr std::uint64_t kBruteforceGuard = 25;

struct Shard {
  std::uint64_t index = 0;
  std::uint64_t count = 1;
};

/// Visits every valid L2 (the i-th candidate subspace goes to shard i mod count).
void for_each_lift(const FiniteField& k, const LiftScenario& s, const std::function<void(const HondaSystem&)>& visit,
                   Shard shard = {});
std::vector<HondaSystem> enumerate_lifts(const LiftScenario& s);

/// L2 written as a graph: basis vector j is e_{free[j]} + sum_i coords[i][j] e_{dep[i]}.
struct LiftCoordinates {
  std::size_t free[2];
  std::size_t dep[2];
  FqElem coords[2][2];
};

/// Graph coordinates in the scenario's normal form: for the ordinary module
/// free = (e3, e4), dep = (e1, e2), so alpha_i = coords[i][0], beta_i = coords[i][1].
LiftCoordinates lift_coordinates(const FiniteField& k, const HondaSystem& h);
/// Inverse of lift_coordinates.
Subspace subspace_from_coordinates(const FiniteField& k, const LiftCoordinates& c, std::size_t n = 4);

/// The coordinate criteria for elevated p-rank. Only defined for the trivial
/// character; throws std::domain_error otherwise.
bool elevated_coordinate(const FiniteField& k, const HondaSystem& h);

/// Exhaustive search for M = N + M' with N a constant etale line (F v = v,
/// V v = 0), M' an F,V-stable complement and L2 inside M'.
class SplittingOracle {
 public:
  SplittingOracle(const FiniteField& k, const DieudonneModule& M);
  bool elevated(const Subspace& L2) const;
  std::size_t constant_lines() const { return lines_; }
  std::size_t complements() const { return complements_.size(); }

 private:
  const FiniteField* k_;
  std::size_t lines_ = 0;
  std::vector<Subspace> complements_;  // stable hyperplanes complementary to some constant line
};

bool elevated_bruteforce(const FiniteField& k, const HondaSystem& h);

struct ElevatedCounts {
  std::uint64_t total = 0;
  std::uint64_t elevated = 0;
  std::uint64_t fp_total = 0;     // lifts with F_p-rational coordinates
  std::uint64_t fp_elevated = 0;
  std::optional<std::uint64_t> mismatches;  // coordinate vs splitting search
};

/// One pass over the lifts. The coordinate predicate is used for the trivial
/// character, the splitting search otherwise; with_oracle adds the cross-check.
ElevatedCounts count_lifts(const LiftScenario& s, bool with_oracle, Shard shard = {});
std::uint64_t count_elevated(const LiftScenario& s);
std::uint64_t count_elevated_z_p2(const LiftScenario& s);

std::uint64_t expected_total(const LiftScenario& s);
std::uint64_t expected_elevated(const LiftScenario& s);
/// Sharp value of the F_p-rational count where one is stated; the no-RM case has none.
std::optional<std::uint64_t> expected_elevated_z_p2(const LiftScenario& s);
bool rm_scenario(ScenarioKind kind);

struct LiftCountRow {
  std::string scenario;
  std::uint64_t p = 0;
  int d = 0;
  std::uint64_t total = 0;
  std::uint64_t elevated = 0;
  std::uint64_t elevated_fp_rational = 0;
  std::uint64_t expected_total = 0;
  std::uint64_t expected_elevated = 0;
  std::optional<std::uint64_t> expected_fp_rational;
  std::optional<std::uint64_t> oracle_mismatches;
  bool match = false;
};

LiftCountRow tabulate(const LiftScenario& s, bool with_oracle);

}  // namespace ltlab
