#pragma once

// Exact arithmetic in the finite field k = F_{p^d} and in the truncated Witt
// rings W_N(k) = W(k)/p^N, realized as Galois rings (Z/p^N)[t]/(f) where f is
// the monic lift of the modulus of k.

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace ltlab {

inline constexpr int kMaxDegree = 8;

/// Working precision of the high-precision ring used for p-adic root finding.
inline constexpr int kHighPrecision = 12;

/// Description of F_{p^d}: odd prime p, degree d, and a monic irreducible
/// modulus stored low-degree first (size d + 1, last entry 1).
struct FieldParams {
  std::uint64_t p = 0;
  int d = 0;
  std::vector<std::uint64_t> modulus;

  std::uint64_t order() const;  ///< p^d
  friend bool operator==(const FieldParams&, const FieldParams&) = default;
};

/// Builds F_{p^d} with the lexicographically least monic irreducible modulus.
/// Coefficient vectors (c_0, ..., c_{d-1}) are compared with c_0 most
/// significant. For d = 1 this is the modulus x.
FieldParams make_field(std::uint64_t p, int d);

/// Ben-Or irreducibility test for a monic polynomial over F_p (low degree first).
bool is_irreducible_mod_p(const std::vector<std::uint64_t>& poly, std::uint64_t p);

/// Element of W_N(F_{p^d}): d coefficients in Z/p^N on the power basis.
template <int N>
struct WittVec {
  std::array<std::uint64_t, kMaxDegree> c{};
  friend bool operator==(const WittVec&, const WittVec&) = default;
  friend auto operator<=>(const WittVec&, const WittVec&) = default;
};

using FqElem = WittVec<1>;
using W2Elem = WittVec<2>;

template <int N>
class GaloisRing {
 public:
  using Elem = WittVec<N>;
  static constexpr int kPrecision = N;

  explicit GaloisRing(FieldParams params);

  const FieldParams& params() const { return params_; }
  std::uint64_t p() const { return params_.p; }
  int degree() const { return params_.d; }
  std::uint64_t residue_order() const { return q_; }  ///< q = p^d
  std::uint64_t coeff_modulus() const { return pn_; } ///< p^N
  std::uint64_t size() const;                         ///< q^N, throws if huge

  Elem zero() const { return Elem{}; }
  Elem one() const;
  Elem from_int(std::int64_t v) const;
  /// Power-basis generator t (requires d >= 2; for d = 1 returns from_int(-m_0)).
  Elem generator() const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scale(const Elem& a, std::uint64_t s) const;
  Elem pow(const Elem& a, std::uint64_t e) const;

  bool is_zero(const Elem& a) const { return a == Elem{}; }
  bool is_unit(const Elem& a) const;
  /// Multiplicative inverse; throws std::domain_error for non-units.
  Elem inverse(const Elem& a) const;
  /// p-adic valuation (N for zero).
  int valuation(const Elem& a) const;
  /// Exact division by p^k; every coefficient must be divisible.
  Elem divide_by_p_power(const Elem& a, int k) const;
  Elem times_p_power(const Elem& a, int k) const;

  /// Reduction to the residue field F_q.
  FqElem reduce(const Elem& a) const;
  /// Digit-wise lift of a residue element (coefficients in [0, p)).
  Elem lift(const FqElem& a) const;
  /// Truncation / digit-wise embedding between precisions.
  template <int M>
  WittVec<M> truncate(const Elem& a) const {
    WittVec<M> r;
    std::uint64_t pm = 1;
    for (int i = 0; i < M; ++i) pm *= params_.p;
    for (int i = 0; i < params_.d; ++i) r.c[i] = a.c[i] % pm;
    return r;
  }

  /// Teichmueller representative: lift(a)^(q^(N-1)).
  Elem teichmuller(const FqElem& a) const;

  /// Frobenius x -> x^p on F_q (N = 1) or its unique lift to W_2 (N = 2).
  Elem frobenius(const Elem& a) const;
  Elem frobenius_inverse(const Elem& a) const;

  /// True iff the element lies in Z/p^N (all non-constant coordinates zero).
  bool in_prime_ring(const Elem& a) const;

  /// Residue field only: Euler criterion (0 counts as a square).
  bool is_square(const Elem& a) const;

  /// Lexicographic enumeration (c_0 most significant).
  Elem element_at(std::uint64_t index) const;
  std::uint64_t index_of(const Elem& a) const;
  std::vector<Elem> elements() const;

  std::string to_string(const Elem& a) const;

 private:
  std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) const;

  FieldParams params_;
  std::uint64_t q_ = 0;
  std::uint64_t pn_ = 0;
};

using FiniteField = GaloisRing<1>;
using W2Ring = GaloisRing<2>;
using HighPrecisionRing = GaloisRing<kHighPrecision>;

extern template class GaloisRing<1>;
extern template class GaloisRing<2>;
extern template class GaloisRing<3>;
extern template class GaloisRing<kHighPrecision>;

}  // namespace ltlab
