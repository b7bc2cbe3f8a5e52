#pragma once

// Prime sums of the nu bound, the assembly of the averaging estimate over
// S_B, and the elliptic-curve family average of local torsion primes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ltlab/curve_local.hpp"

namespace ltlab {

/// (2p - 1)(p^2 + p + 1). Does not depend on d.
std::uint64_t nu_bound(std::uint64_t p, int d);

struct SumRow {
  std::uint64_t x = 0;
  double S_a = 0;  // sum nu(p)
  double S_b = 0;  // sum nu(p) / p^2
  double S_c = 0;  // sum nu(p) / p^4
  double S_d = 0;  // sum nu(p) / p^6
};

struct SumLedger {
  std::string mode = "bound";
  int d = 1;
  std::vector<SumRow> ladder;
  double slope_a = 0, slope_b = 0, slope_c = 0, slope_d = 0;
  /// max of S_d(x') - S_d(x) over ladder steps with x >= tail_from.
  double tail_increment = 0;
  std::uint64_t tail_from = 100'000;
};

inline constexpr std::uint64_t kSumGuard = 1'000'000;

/// Doubling ladder 1000 * 2^k below x_max, closed by x_max itself.
std::vector<std::uint64_t> doubling_ladder(std::uint64_t x_min, std::uint64_t x_max);
/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Partial sums over odd primes p <= x for every x on the ladder.
SumLedger lemma56_sums(std::uint64_t x_max, int d, std::uint64_t x_min = 1000);

struct AssemblyReport {
  std::int64_t B = 0;
  std::uint64_t x = 0;
  int d = 1;
  std::uint64_t count_sb = 0;
  double T1 = 0;  // 8 B^3 sum nu/p^6 / #S_B
  double T2 = 0;  // 4 B^2 sum nu/p^4 / #S_B
  double T3 = 0;  // 2 B sum nu/p^2 / #S_B
  double T4 = 0;  // sum nu / #S_B
  double total = 0;
  /// B^3 fails to beat x^4 by a power margin: the last term is no longer dominated.
  bool boundary_flag = false;
};

/// Terms are summed over d0 <= d.
AssemblyReport theorem57_assembly(std::int64_t B, std::uint64_t x_max, int d);

/// ceil(x^(4/3 + eps)).
std::int64_t height_schedule(std::uint64_t x, double eps);

struct AssemblyLadder {
  double eps = 0.1;
  std::optional<std::int64_t> frozen_B;
  std::vector<AssemblyReport> rows;
  double spread = 0;  // max total / min total
  bool bounded = false;  // spread <= 3
};

AssemblyLadder assembly_ladder(const std::vector<std::uint64_t>& xs, int d, double eps = 0.1,
                               std::optional<std::int64_t> frozen_B = std::nullopt);

struct CurveCount {
  std::int64_t a = 0, b = 0;
  std::size_t pi_good = 0;
  std::size_t bad = 0;
  std::size_t unknown_ramified = 0;
  std::vector<std::uint64_t> torsion_primes;
};

struct AverageReport {
  std::int64_t A_max = 0, B_max = 0;
  std::uint64_t x_max = 0;
  int d = 1;
  double schedule_exponent = 7.0 / 4.0;
  std::size_t family_size = 0;  // nonsingular curves
  std::size_t singular_skipped = 0;
  std::vector<CurveCount> curves;
  std::uint64_t total_good = 0;
  std::uint64_t total_bad = 0;
  std::uint64_t total_unknown = 0;
  double mean = 0;  // total_good / family_size
  std::size_t spot_checked = 0;
  std::size_t spot_failures = 0;
  std::size_t spot_inconclusive = 0;
};

inline constexpr std::size_t kFamilyGuard = 100'000;

/// Curves y^2 = x^3 + a x + b with |a| <= A_max, |b| <= B_max.
/// spot_every = n re-verifies every n-th counted (curve, p) with rank_relation_check; 0 disables.
AverageReport ec_family_average(std::int64_t A_max, std::int64_t B_max, std::uint64_t x_max, int d,
                                std::size_t spot_every = 100);
/// Same over an explicit list of curves; A_max and B_max are left at 0.
AverageReport ec_family_average(const std::vector<CurveSpec>& family, std::uint64_t x_max, int d,
                                std::size_t spot_every = 100);

}  // namespace ltlab
