#include "ltlab/curve_local.hpp"

#include <algorithm>
#include <stdexcept>

#include "ltlab/errors.hpp"
#include "ltlab/primes.hpp"

namespace ltlab {

__int128 CurveSpec::discriminant() const {
  const __int128 A = a, B = b;
  return -16 * (4 * A * A * A + 27 * B * B);
}

bool CurveSpec::good_reduction(std::uint64_t p) const {
  if (p <= 3) return false;
  __int128 core = discriminant() / -16;
  return core % static_cast<__int128>(p) != 0;
}

template <int N>
LocalCurve<N>::LocalCurve(const FieldParams& field, CurveSpec spec) : ring_(field), spec_(spec) {
  if (field.p <= 3) throw std::invalid_argument("p must be > 3");
  if (!spec.good_reduction(field.p)) throw std::domain_error("bad reduction");
  a_ = ring_.from_int(spec.a);
  b_ = ring_.from_int(spec.b);
}

template <int N>
typename LocalCurve<N>::Elem LocalCurve<N>::rhs(const Elem& x) const {
  return ring_.add(ring_.mul(ring_.add(ring_.mul(x, x), a_), x), b_);
}

template <int N>
bool LocalCurve<N>::on_curve(const Point& p) const {
  if (p.kernel) return !ring_.is_unit(p.x) && ring_.is_zero(p.y);
  return ring_.mul(p.y, p.y) == rhs(p.x);
}

template <int N>
typename LocalCurve<N>::Point LocalCurve<N>::neg(const Point& p) const {
  Point r = p;
  if (p.kernel) r.x = ring_.neg(p.x);
  else r.y = ring_.neg(p.y);
  return r;
}

template <int N>
typename LocalCurve<N>::Point LocalCurve<N>::add(const Point& p, const Point& q) const {
  const Ring& R = ring_;
  if (is_identity(p)) return q;
  if (is_identity(q)) return p;
  if (p.kernel && q.kernel) return Point{true, R.add(p.x, q.x), R.zero()};
  if (p.kernel || q.kernel) {
    // Translation by a kernel point with formal parameter t = -X (t^2 = 0).
    const Point& k = p.kernel ? p : q;
    const Point& s = p.kernel ? q : p;
    Elem t = R.neg(k.x);
    Elem dx = R.mul(t, R.scale(s.y, 2));
    Elem dy = R.mul(t, R.add(R.scale(R.mul(s.x, s.x), 3), a_));
    return Point{false, R.add(s.x, dx), R.add(s.y, dy)};
  }
  Elem lambda;
  Elem dx = R.sub(p.x, q.x);
  Elem sy = R.add(p.y, q.y);
  if (R.is_unit(dx)) {
    lambda = R.mul(R.sub(p.y, q.y), R.inverse(dx));
  } else if (R.is_unit(sy)) {
    Elem num = R.add(R.add(R.mul(p.x, p.x), R.mul(p.x, q.x)), R.add(R.mul(q.x, q.x), a_));
    lambda = R.mul(num, R.inverse(sy));
  } else {
    // q = -p + T with T in the kernel; the sum is T.
    Elem t = R.is_unit(p.y) ? R.mul(dx, R.inverse(R.scale(p.y, 2)))
                            : R.mul(sy, R.inverse(R.add(R.scale(R.mul(p.x, p.x), 3), a_)));
    return Point{true, R.neg(t), R.zero()};
  }
  Elem x3 = R.sub(R.sub(R.mul(lambda, lambda), p.x), q.x);
  Elem y3 = R.sub(R.mul(lambda, R.sub(p.x, x3)), p.y);
  return Point{false, x3, y3};
}

template <int N>
typename LocalCurve<N>::Point LocalCurve<N>::multiply(const Point& p, std::uint64_t n) const {
  Point acc = identity(), base = p;
  while (n) {
    if (n & 1) acc = add(acc, base);
    base = add(base, base);
    n >>= 1;
  }
  return acc;
}

template <int N>
std::vector<typename LocalCurve<N>::Elem> LocalCurve<N>::projective(const Point& p) const {
  if (p.kernel) return {p.x, ring_.one(), ring_.zero()};
  return {p.x, p.y, ring_.one()};
}

template <int N>
std::string LocalCurve<N>::to_string(const Point& p) const {
  auto c = projective(p);
  return "(" + ring_.to_string(c[0]) + ":" + ring_.to_string(c[1]) + ":" + ring_.to_string(c[2]) + ")";
}

template <int N>
CurvePoint<1> LocalCurve<N>::reduce(const Point& p) const {
  if (p.kernel) return CurvePoint<1>{};
  return CurvePoint<1>{false, ring_.reduce(p.x), ring_.reduce(p.y)};
}

template <int N>
std::vector<typename LocalCurve<N>::Point> LocalCurve<N>::lifts(const CurvePoint<1>& base) const {
  if constexpr (N != 2) {
    throw std::logic_error("lifts are only defined over W_2");
  } else {
    const Ring& R = ring_;
    FiniteField k(R.params());
    std::vector<Point> out;
    const auto residues = k.elements();
    if (base.kernel) {
      for (const auto& u : residues) out.push_back(Point{true, R.times_p_power(R.lift(u), 1), R.zero()});
      return out;
    }
    const FqElem a = k.from_int(spec_.a);
    if (!k.is_zero(base.y)) {
      Elem yh = R.lift(base.y);
      FqElem inv2y = k.inverse(k.scale(base.y, 2));
      for (const auto& t : residues) {
        Elem x = R.add(R.lift(base.x), R.times_p_power(R.lift(t), 1));
        FqElem s = k.mul(R.reduce(R.divide_by_p_power(R.sub(rhs(x), R.mul(yh, yh)), 1)), inv2y);
        out.push_back(Point{false, x, R.add(yh, R.times_p_power(R.lift(s), 1))});
      }
    } else {
      Elem xh = R.lift(base.x);
      FqElem deriv = k.add(k.scale(k.mul(base.x, base.x), 3), a);
      FqElem u = k.neg(k.mul(R.reduce(R.divide_by_p_power(rhs(xh), 1)), k.inverse(deriv)));
      Elem x = R.add(xh, R.times_p_power(R.lift(u), 1));
      for (const auto& t : residues) out.push_back(Point{false, x, R.times_p_power(R.lift(t), 1)});
    }
    return out;
  }
}

template <int N>
std::vector<typename LocalCurve<N>::Point> LocalCurve<N>::points() const {
  std::vector<Point> out;
  if constexpr (N == 1) {
    const std::uint64_t q = ring_.residue_order();
    std::vector<std::vector<Elem>> roots(q);
    for (std::uint64_t i = 0; i < q; ++i) {
      Elem y = ring_.element_at(i);
      roots[ring_.index_of(ring_.mul(y, y))].push_back(y);
    }
    out.push_back(identity());
    for (std::uint64_t i = 0; i < q; ++i) {
      Elem x = ring_.element_at(i);
      for (const auto& y : roots[ring_.index_of(rhs(x))]) out.push_back(Point{false, x, y});
    }
  } else {
    LocalCurve<1> residue(ring_.params(), spec_);
    for (const auto& base : residue.points()) {
      auto l = lifts(base);
      out.insert(out.end(), l.begin(), l.end());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

template class LocalCurve<1>;
template class LocalCurve<2>;

int p_rank_from_count(std::uint64_t killed, std::uint64_t p) {
  int r = 0;
  std::uint64_t v = 1;
  while (v < killed) {
    v *= p;
    ++r;
  }
  if (v != killed) throw std::logic_error("p-torsion count is not a power of p");
  return r;
}

namespace {

template <int N>
LocalPointGroup fill_group(const LocalCurve<N>& curve, BaseRing tag) {
  LocalPointGroup g;
  g.ring = tag;
  g.p = curve.ring().p();
  g.d = curve.ring().degree();
  std::uint64_t killed = 0;
  for (const auto& pt : curve.points()) {
    std::vector<std::string> coords;
    for (const auto& c : curve.projective(pt)) coords.push_back(curve.ring().to_string(c));
    g.points.push_back(std::move(coords));
    if (curve.is_identity(curve.multiply(pt, g.p))) ++killed;
  }
  g.order = g.points.size();
  g.p_rank = p_rank_from_count(killed, g.p);
  return g;
}

void check_prime(std::uint64_t p) {
  if (p % 2 == 0) throw std::invalid_argument("p must be odd");
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (p <= 3) throw std::invalid_argument("p must be > 3");
}

}  // namespace

LocalPointGroup point_group(const CurveSpec& curve, std::uint64_t p, int d, BaseRing ring) {
  check_prime(p);
  const std::uint64_t q = ipow(p, static_cast<unsigned>(d));
  if (q > kPointGuard / q) throw GuardExceeded("q^2 exceeds the point enumeration guard");
  FieldParams field = make_field(p, d);
  if (ring == BaseRing::ResidueField) return fill_group(LocalCurve<1>(field, curve), ring);
  return fill_group(LocalCurve<2>(field, curve), ring);
}

std::uint64_t residue_order(const CurveSpec& curve, std::uint64_t p, int d) {
  check_prime(p);
  if (ipow(p, static_cast<unsigned>(d)) > kScanGuard) throw GuardExceeded("q exceeds the scan guard");
  return LocalCurve<1>(make_field(p, d), curve).points().size();
}

int w2_p_rank(const CurveSpec& curve, std::uint64_t p, int d) {
  check_prime(p);
  const std::uint64_t q = ipow(p, static_cast<unsigned>(d));
  if (q > kScanGuard) throw GuardExceeded("q exceeds the scan guard");
  FieldParams field = make_field(p, d);
  LocalCurve<1> residue(field, curve);
  const auto pts = residue.points();
  if (pts.size() % p != 0) return d;
  LocalCurve<2> w2(field, curve);
  std::uint64_t killed = q;  // the reduction kernel is killed by p
  for (const auto& base : pts) {
    if (residue.is_identity(base) || !residue.is_identity(residue.multiply(base, p))) continue;
    for (const auto& pt : w2.lifts(base))
      if (w2.is_identity(w2.multiply(pt, p))) ++killed;
  }
  return p_rank_from_count(killed, p);
}

bool k_torsion_oracle(const CurveSpec& curve, std::uint64_t p, int d) {
  return k_torsion_search(curve, p, d).has_K_torsion;
}

TorsionVerdict rank_relation_check(const CurveSpec& curve, std::uint64_t p, int d0) {
  TorsionVerdict v;
  v.p = p;
  v.d0 = d0;
  LocalPointGroup g1 = point_group(curve, p, d0, BaseRing::ResidueField);
  LocalPointGroup g2 = point_group(curve, p, d0, BaseRing::W2);
  v.has_k_torsion = g1.p_rank > 0;
  v.rank_w2 = g2.p_rank;
  v.has_K_torsion = k_torsion_oracle(curve, p, d0);
  v.holds = v.rank_w2 == d0 + (v.has_K_torsion ? 1 : 0);
  return v;
}

LocalTorsionScan local_torsion_primes(const CurveSpec& curve, int d_max, std::uint64_t x_max) {
  if (d_max < 1) throw std::invalid_argument("d_max must be >= 1");
  if (curve.is_singular()) throw std::invalid_argument("singular curve");
  LocalTorsionScan out;
  for (std::uint64_t p : primes_between(2, x_max)) {
    if (p <= 3) {
      out.excluded_small.push_back(p);
    } else if (!curve.good_reduction(p)) {
      out.bad_primes.push_back(p);
    } else if (p <= static_cast<std::uint64_t>(d_max) + 1) {
      out.unknown_ramified.push_back(p);
    } else {
      out.checked_primes.push_back(p);
      for (int d0 = 1; d0 <= d_max; ++d0)
        if (w2_p_rank(curve, p, d0) >= d0 + 1) {
          out.torsion_primes.push_back(p);
          break;
        }
    }
  }
  return out;
}

}  // namespace ltlab
