#pragma once

// Points of P^2(Q) of bounded height as primitive integer triples, exact
// counts of S_B, and fiber statistics of the reduction maps to P^2(Z/m).

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace ltlab {

inline constexpr double kZeta3 = 1.20205690315959;

/// Largest B for streaming enumeration.
inline constexpr std::int64_t kStreamGuard = 2000;
/// Largest B for which enumerate_sb materializes the full list.
inline constexpr std::int64_t kListGuard = 100;
/// Largest histogram size p^6 for fiber_counts.
inline constexpr std::uint64_t kHistogramGuard = 10'000'000;

struct ProjPoint {
  std::int64_t y1 = 0, y2 = 0, y3 = 1;
  std::int64_t height() const;
  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

/// Divides out the gcd and makes the first nonzero coordinate positive.
ProjPoint canonical(std::int64_t y1, std::int64_t y2, std::int64_t y3);

/// Streams S_B shell by shell (height 1, 2, ..., B).
void for_each_sb(std::int64_t B, const std::function<void(const ProjPoint&)>& visit);
std::vector<ProjPoint> enumerate_sb(std::int64_t B);
/// #S_B by streaming enumeration.
std::uint64_t count_sb_enumerated(std::int64_t B);
/// #S_B exactly via Moebius inversion over the cube [-B, B]^3.
std::uint64_t count_sb(std::int64_t B);

struct SchanuelResult {
  std::int64_t B = 0;
  std::uint64_t count = 0;
  double ratio = 0;             // count * zeta(3) / B^3
  double residual = 0;          // |count - B^3 / zeta(3)| / B^2
  double normalized_ratio = 0;  // count * zeta(3) / (4 B^3)
  double normalized_residual = 0;  // |count - 4 B^3 / zeta(3)| / B^2
};

SchanuelResult schanuel_ratio(std::int64_t B);

/// Canonical representative in P^2(Z/m): first unit coordinate scaled to 1.
std::array<std::uint64_t, 3> reduce_point(const ProjPoint& y, std::uint64_t p, std::uint64_t m);

struct FiberHistogram {
  std::int64_t B = 0;
  std::uint64_t p = 0;
  std::uint64_t modulus = 0;  // p or p^2
  std::map<std::array<std::uint64_t, 3>, std::uint64_t> counts;
  std::uint64_t bins_total = 0;  // #P^2(Z/modulus)
  std::uint64_t total() const;
  std::uint64_t max_count() const;
  std::uint64_t min_count() const;  // over all bins, 0 if some bin is empty
  /// Smallest C with every fiber <= (2B/m + C)^3.
  double envelope_constant() const;
  /// Same bound per affine residue class: every fiber <= phi(m)/2 * (2B/m + C)^3.
  double class_envelope_constant() const;
};

/// level = 1 gives P^2(Z/p), level = 2 gives P^2(Z/p^2).
FiberHistogram fiber_counts(std::int64_t B, std::uint64_t p, int level);

}  // namespace ltlab
