#include "doctest.h"

#include <cmath>
#include <set>
#include <stdexcept>

#include "ltlab/curve_local.hpp"
#include "ltlab/errors.hpp"

using namespace ltlab;

namespace {

// Projective solutions of Y^2 Z = X^3 + a X Z^2 + b Z^3 over Z/m (m = p or p^2)
// with a unit coordinate, divided by the number of unit scalars.
std::uint64_t projective_count_bruteforce(std::int64_t a, std::int64_t b, std::uint64_t p, std::uint64_t m) {
  auto md = [&](std::int64_t v) {
    std::int64_t r = v % static_cast<std::int64_t>(m);
    return r < 0 ? r + static_cast<std::int64_t>(m) : r;
  };
  std::uint64_t sols = 0;
  for (std::int64_t X = 0; X < static_cast<std::int64_t>(m); ++X)
    for (std::int64_t Y = 0; Y < static_cast<std::int64_t>(m); ++Y)
      for (std::int64_t Z = 0; Z < static_cast<std::int64_t>(m); ++Z) {
        if (X % static_cast<std::int64_t>(p) == 0 && Y % static_cast<std::int64_t>(p) == 0 &&
            Z % static_cast<std::int64_t>(p) == 0)
          continue;
        std::int64_t lhs = md(md(Y * Y) * Z);
        std::int64_t rhs = md(md(md(X * X) * X) + md(md(a * X) * md(Z * Z)) + md(md(b * Z) * md(Z * Z)));
        if (lhs == rhs) ++sols;
      }
  return sols / (m - m / p);
}

std::vector<CurveSpec> sample_curves(std::uint64_t p, int count) {
  std::vector<CurveSpec> out;
  for (std::int64_t a = 0; a < static_cast<std::int64_t>(p) && static_cast<int>(out.size()) < count; ++a)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(p) && static_cast<int>(out.size()) < count; ++b) {
      CurveSpec c{a, b};
      if (c.good_reduction(p)) out.push_back(c);
    }
  return out;
}

}  // namespace

TEST_CASE("curve basics and errors") {
  CHECK(CurveSpec{0, 1}.discriminant() == -16 * 27);
  CHECK(CurveSpec{0, 0}.is_singular());
  CHECK(CurveSpec{3, 2}.good_reduction(5));
  CHECK_FALSE(CurveSpec{0, 1}.good_reduction(3));
  CHECK_THROWS_AS(point_group(CurveSpec{-3, 2}, 5, 1, BaseRing::ResidueField), std::domain_error);
  CHECK_THROWS_AS(point_group(CurveSpec{0, 1}, 3, 1, BaseRing::ResidueField), std::invalid_argument);
  CHECK_THROWS_AS(point_group(CurveSpec{0, 1}, 9, 1, BaseRing::ResidueField), std::invalid_argument);
  CHECK_THROWS_AS(point_group(CurveSpec{0, 1}, 37, 2, BaseRing::W2), GuardExceeded);
  CHECK_THROWS_AS(k_torsion_search(CurveSpec{0, 1}, 37, 1), GuardExceeded);
}

TEST_CASE("point group orders") {
  CHECK(point_group(CurveSpec{0, 1}, 5, 1, BaseRing::ResidueField).order == 6);
  CHECK(point_group(CurveSpec{3, 2}, 5, 1, BaseRing::ResidueField).order == 5);
  auto w2 = point_group(CurveSpec{0, 1}, 5, 1, BaseRing::W2);
  CHECK(w2.order == 30);
  CHECK(w2.p_rank == 1);
  CHECK(w2.points.front().size() == 3);
}

TEST_CASE("point counts match projective brute force over Z/p and Z/p^2") {
  for (std::uint64_t p : {5u, 7u, 11u, 13u}) {
    for (const auto& c : sample_curves(p, p <= 7 ? 40 : 6)) {
      CAPTURE(p);
      CAPTURE(c.a);
      CAPTURE(c.b);
      auto g1 = point_group(c, p, 1, BaseRing::ResidueField);
      auto g2 = point_group(c, p, 1, BaseRing::W2);
      CHECK(g1.order == projective_count_bruteforce(c.a, c.b, p, p));
      CHECK(g2.order == projective_count_bruteforce(c.a, c.b, p, p * p));
      CHECK(g2.order == p * g1.order);
    }
  }
}

TEST_CASE("W_2 points over F_25 match an affine brute force") {
  FieldParams field = make_field(5, 2);
  W2Ring R(field);
  for (const auto& c : {CurveSpec{0, 1}, CurveSpec{1, 1}, CurveSpec{2, 1}}) {
    LocalCurve<2> curve(field, c);
    const auto elems = R.elements();
    std::uint64_t affine = 0;
    for (const auto& x : elems) {
      auto r = curve.rhs(x);
      for (const auto& y : elems) affine += R.mul(y, y) == r ? 1 : 0;
    }
    auto pts = curve.points();
    CHECK(pts.size() == affine + 25);
    std::set<CurvePoint<2>> uniq(pts.begin(), pts.end());
    CHECK(uniq.size() == pts.size());
    for (const auto& pt : pts) CHECK(curve.on_curve(pt));
    CHECK(pts.size() == 25 * residue_order(c, 5, 2));
  }
}

TEST_CASE("Hasse bound") {
  for (std::uint64_t p : {5u, 7u, 11u, 13u})
    for (int d : {1, 2}) {
      const double q = std::pow(static_cast<double>(p), d);
      for (const auto& c : sample_curves(p, 12)) {
        const double n = static_cast<double>(residue_order(c, p, d));
        CHECK(std::abs(q + 1 - n) <= 2 * std::sqrt(q) + 1e-9);
      }
    }
}

TEST_CASE("group law axioms over W_2") {
  FieldParams field = make_field(5, 1);
  for (const auto& c : {CurveSpec{0, 1}, CurveSpec{3, 2}, CurveSpec{1, 1}, CurveSpec{2, 0}}) {
    LocalCurve<2> curve(field, c);
    auto pts = curve.points();
    REQUIRE(pts.size() <= 200);
    std::set<CurvePoint<2>> set(pts.begin(), pts.end());
    for (const auto& P : pts) {
      CHECK(curve.is_identity(curve.add(P, curve.neg(P))));
      CHECK(curve.add(P, curve.identity()) == P);
      CHECK(curve.multiply(P, pts.size()) == curve.identity());
      for (const auto& Q : pts) {
        auto s = curve.add(P, Q);
        CHECK(set.count(s) == 1);
        CHECK(s == curve.add(Q, P));
      }
    }
    std::size_t bad = 0;
    for (const auto& P : pts)
      for (const auto& Q : pts)
        for (const auto& S : pts)
          if (curve.add(curve.add(P, Q), S) != curve.add(P, curve.add(Q, S))) ++bad;
    CHECK(bad == 0);
  }
  FieldParams f9 = make_field(7, 1);
  LocalCurve<1> small(f9, CurveSpec{1, 3});
  auto pts = small.points();
  for (const auto& P : pts)
    for (const auto& Q : pts)
      for (const auto& S : pts) CHECK(small.add(small.add(P, Q), S) == small.add(P, small.add(Q, S)));
}

TEST_CASE("reduction is a homomorphism") {
  FieldParams field = make_field(7, 1);
  LocalCurve<2> w2(field, CurveSpec{2, 4});
  LocalCurve<1> k(field, CurveSpec{2, 4});
  auto pts = w2.points();
  for (std::size_t i = 0; i < pts.size(); i += 3)
    for (std::size_t j = 0; j < pts.size(); j += 5)
      CHECK(w2.reduce(w2.add(pts[i], pts[j])) == k.add(w2.reduce(pts[i]), w2.reduce(pts[j])));
}

TEST_CASE("shortcut p-rank agrees with full enumeration") {
  for (std::uint64_t p : {5u, 7u})
    for (int d : {1, 2})
      for (const auto& c : sample_curves(p, d == 1 ? 30 : 8)) {
        CAPTURE(p);
        CAPTURE(d);
        CAPTURE(c.a);
        CAPTURE(c.b);
        CHECK(w2_p_rank(c, p, d) == point_group(c, p, d, BaseRing::W2).p_rank);
      }
}

TEST_CASE("division polynomials vanish exactly on torsion x-coordinates") {
  for (std::uint64_t p : {11u, 13u})
    for (const auto& c : sample_curves(p, 10))
      for (unsigned ell : {3u, 5u, 7u}) {
        auto psi = division_polynomial_mod(c, ell, p);
        FieldParams field = make_field(p, 1);
        LocalCurve<1> curve(field, c);
        for (const auto& P : curve.points()) {
          if (P.kernel) continue;
          std::uint64_t acc = 0;
          for (std::size_t i = psi.size(); i-- > 0;) acc = (acc * P.x.c[0] + psi[i]) % p;
          bool torsion = curve.is_identity(curve.multiply(P, ell));
          CHECK((acc == 0) == torsion);
        }
      }
  // Degree (n^2 - 1)/2 and leading coefficient n for odd n over a large modulus.
  auto psi5 = division_polynomial_mod(CurveSpec{1, 1}, 5, 1'000'003);
  CHECK(psi5.size() == 13);
  CHECK(psi5.back() == 5);
  auto psi7 = division_polynomial_mod(CurveSpec{2, 3}, 7, 1'000'003);
  CHECK(psi7.size() == 25);
  CHECK(psi7.back() == 7);
  // Even index: f_4 / 2 is monic of degree 6.
  CHECK(division_polynomial_mod(CurveSpec{1, 1}, 4, 1'000'003).size() == 7);
}

TEST_CASE("torsion oracle") {
  auto v = rank_relation_check(CurveSpec{0, 1}, 5, 1);
  CHECK(v.rank_w2 == 1);
  CHECK_FALSE(v.has_K_torsion);
  CHECK_FALSE(v.has_k_torsion);
  CHECK(v.holds);
  CHECK_FALSE(k_torsion_oracle(CurveSpec{0, 1}, 5, 1));
  auto w = rank_relation_check(CurveSpec{3, 2}, 5, 1);
  CHECK(w.has_k_torsion);
  CHECK((w.rank_w2 == 1 || w.rank_w2 == 2));
  CHECK(w.rank_w2 == 1 + (w.has_K_torsion ? 1 : 0));
  CHECK(w.holds);
}

TEST_CASE("rank relation over a sweep of curves") {
  std::size_t with_torsion = 0, lifted = 0, inconclusive = 0;
  for (std::uint64_t p : {5u, 7u})
    for (int d : {1, 2})
      for (const auto& c : sample_curves(p, 49)) {
        CAPTURE(p);
        CAPTURE(d);
        CAPTURE(c.a);
        CAPTURE(c.b);
        KTorsionResult r;
        try {
          r = k_torsion_search(c, p, d);
        } catch (const OracleInconclusive&) {
          ++inconclusive;
          continue;
        }
        const int rank = w2_p_rank(c, p, d);
        CHECK(rank == d + (r.has_K_torsion ? 1 : 0));
        if (r.has_K_torsion) {
          CHECK(r.square_roots == (p - 1) / 2);
          ++lifted;
        }
        if (residue_order(c, p, d) % p == 0) ++with_torsion;
        else CHECK_FALSE(r.has_K_torsion);
      }
  MESSAGE("residual torsion: " << with_torsion << ", lifted: " << lifted << ", inconclusive: " << inconclusive);
  CHECK(with_torsion > 0);
  CHECK(lifted > 0);
  CHECK(inconclusive == 0);
}

TEST_CASE("scanner") {
  auto s = local_torsion_primes(CurveSpec{3, 2}, 1, 5);
  CHECK(s.excluded_small == std::vector<std::uint64_t>{2, 3});
  CHECK(s.checked_primes == std::vector<std::uint64_t>{5});
  bool in = !s.torsion_primes.empty();
  CHECK(in == (rank_relation_check(CurveSpec{3, 2}, 5, 1).rank_w2 >= 2));
  CHECK(local_torsion_primes(CurveSpec{0, 1}, 1, 4).checked_primes.empty());
  // disc(x^3 + x + 1) = -16 * 31
  CHECK(local_torsion_primes(CurveSpec{1, 1}, 4, 6).unknown_ramified == std::vector<std::uint64_t>{5});
  auto r = local_torsion_primes(CurveSpec{1, 1}, 1, 31);
  CHECK(r.bad_primes == std::vector<std::uint64_t>{31});
  CHECK(r.checked_primes.size() == 8);
  CHECK_THROWS_AS(local_torsion_primes(CurveSpec{-3, 2}, 1, 20), std::invalid_argument);
}

TEST_CASE("scanner depends only on the curve mod p^2") {
  for (std::uint64_t p : {5u, 7u, 11u}) {
    const std::int64_t shift = static_cast<std::int64_t>(p * p);
    for (const auto& c : sample_curves(p, 20)) {
      CurveSpec moved{c.a + shift, c.b - 3 * shift};
      for (int d : {1, 2}) CHECK(w2_p_rank(c, p, d) == w2_p_rank(moved, p, d));
      auto s1 = local_torsion_primes(c, 2, p);
      auto s2 = local_torsion_primes(moved, 2, p);
      bool in1 = !s1.torsion_primes.empty() && s1.torsion_primes.back() == p;
      bool in2 = !s2.torsion_primes.empty() && s2.torsion_primes.back() == p;
      CHECK(in1 == in2);
    }
  }
}
