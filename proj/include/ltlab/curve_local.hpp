#pragma once

// Short Weierstrass curves y^2 = x^3 + a x + b over F_q and W_2(F_q): point
// groups, p-rank, a division-polynomial oracle for p-torsion over the
// unramified extension K of Q_p, and the local-torsion prime scanner.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ltlab/ring_core.hpp"

namespace ltlab {

struct CurveSpec {
  std::int64_t a = 0;
  std::int64_t b = 0;

  /// -16 (4a^3 + 27b^2)
  __int128 discriminant() const;
  bool is_singular() const { return discriminant() == 0; }
  /// p > 3 and p does not divide the discriminant.
  bool good_reduction(std::uint64_t p) const;
  friend bool operator==(const CurveSpec&, const CurveSpec&) = default;
};

/// Affine point (x : y : 1), or a point (X : 1 : 0) of the reduction kernel with
/// X in pW (X = 0 is the identity). Over F_q the only kernel point is the identity.
template <int N>
struct CurvePoint {
  bool kernel = true;
  WittVec<N> x{};
  WittVec<N> y{};
  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
  friend auto operator<=>(const CurvePoint&, const CurvePoint&) = default;
};

template <int N>
class LocalCurve {
 public:
  using Ring = GaloisRing<N>;
  using Elem = WittVec<N>;
  using Point = CurvePoint<N>;

  /// Throws std::invalid_argument for p <= 3 and std::domain_error("bad reduction").
  LocalCurve(const FieldParams& field, CurveSpec spec);

  const Ring& ring() const { return ring_; }
  const CurveSpec& spec() const { return spec_; }

  Point identity() const { return Point{}; }
  bool is_identity(const Point& p) const { return p.kernel && ring_.is_zero(p.x); }
  bool on_curve(const Point& p) const;
  Elem rhs(const Elem& x) const;  // x^3 + a x + b

  Point neg(const Point& p) const;
  Point add(const Point& p, const Point& q) const;
  Point multiply(const Point& p, std::uint64_t n) const;

  /// Projective coordinates (X, Y, Z).
  std::vector<Elem> projective(const Point& p) const;
  std::string to_string(const Point& p) const;

  /// Every point, sorted.
  std::vector<Point> points() const;
  /// W_2 only: the q points reducing to a given residue point.
  std::vector<Point> lifts(const CurvePoint<1>& base) const;
  CurvePoint<1> reduce(const Point& p) const;

 private:
  Ring ring_;
  CurveSpec spec_;
  Elem a_, b_;
};

extern template class LocalCurve<1>;
extern template class LocalCurve<2>;

enum class BaseRing { ResidueField, W2 };

struct LocalPointGroup {
  BaseRing ring = BaseRing::ResidueField;
  std::uint64_t p = 0;
  int d = 0;
  std::vector<std::vector<std::string>> points;  // projective coordinates, rendered
  std::uint64_t order = 0;
  int p_rank = 0;
};

/// Upper bound on the number of W_2 points enumerated in full (q^2).
inline constexpr std::uint64_t kPointGuard = 1'000'000;
/// Upper bound on q = p^d for the scanner.
inline constexpr std::uint64_t kScanGuard = 2'000'000;
/// Largest prime handled by the division-polynomial oracle.
inline constexpr std::uint64_t kOracleMaxPrime = 31;

LocalPointGroup point_group(const CurveSpec& curve, std::uint64_t p, int d, BaseRing ring);

/// p-rank of a finite group given the number of elements killed by p.
int p_rank_from_count(std::uint64_t killed, std::uint64_t p);

/// #E(F_q) by enumeration.
std::uint64_t residue_order(const CurveSpec& curve, std::uint64_t p, int d);

/// p-rank of E(W_2(F_q)) computed by lifting only the points of E(F_q)[p].
int w2_p_rank(const CurveSpec& curve, std::uint64_t p, int d);

struct KTorsionResult {
  bool has_K_torsion = false;
  std::size_t roots_in_W = 0;      // roots of psi_p in W(F_q)
  std::size_t square_roots = 0;    // of which f(x0) is a square
};

/// Division-polynomial oracle. Roots of psi_p in W(F_q) are found with
/// precision tracking at p^12; throws OracleInconclusive if that is not enough.
KTorsionResult k_torsion_search(const CurveSpec& curve, std::uint64_t p, int d);
bool k_torsion_oracle(const CurveSpec& curve, std::uint64_t p, int d);

/// Integer coefficients (low degree first) of Schoof's f_n, reduced mod m.
/// f_n = psi_n for odd n and psi_n / (2y) for even n.
std::vector<std::uint64_t> division_polynomial_mod(const CurveSpec& curve, unsigned n, std::uint64_t m);

struct TorsionVerdict {
  std::uint64_t p = 0;
  int d0 = 0;
  bool has_k_torsion = false;
  bool has_K_torsion = false;
  int rank_w2 = 0;
  bool holds = false;  // rank_w2 == d0 + has_K_torsion
};

TorsionVerdict rank_relation_check(const CurveSpec& curve, std::uint64_t p, int d0);

struct LocalTorsionScan {
  std::vector<std::uint64_t> torsion_primes;    // good p > max(3, d_max + 1) with elevated rank
  std::vector<std::uint64_t> checked_primes;    // all good primes tested
  std::vector<std::uint64_t> unknown_ramified;  // 3 < p <= d_max + 1
  std::vector<std::uint64_t> bad_primes;        // p > 3 dividing the discriminant
  std::vector<std::uint64_t> excluded_small;    // 2 and 3
};

LocalTorsionScan local_torsion_primes(const CurveSpec& curve, int d_max, std::uint64_t x_max);

}  // namespace ltlab
