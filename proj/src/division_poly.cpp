#include <map>
#include <stdexcept>

#include "ltlab/curve_local.hpp"
#include "ltlab/errors.hpp"
#include "ltlab/primes.hpp"

namespace ltlab {

namespace {

// Integer polynomials mod m, low degree first.
using ZPoly = std::vector<std::uint64_t>;

struct ZMod {
  std::uint64_t m;
  std::uint64_t norm(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
  }
  void trim(ZPoly& f) const {
    while (!f.empty() && f.back() == 0) f.pop_back();
  }
  ZPoly mul(const ZPoly& f, const ZPoly& g) const {
    if (f.empty() || g.empty()) return {};
    std::vector<unsigned __int128> acc(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] == 0) continue;
      for (std::size_t j = 0; j < g.size(); ++j) {
        acc[i + j] += static_cast<unsigned __int128>(f[i]) * g[j] % m;
      }
    }
    ZPoly r(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<std::uint64_t>(acc[i] % m);
    trim(r);
    return r;
  }
  ZPoly sub(const ZPoly& f, const ZPoly& g) const {
    ZPoly r(std::max(f.size(), g.size()), 0);
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
    for (std::size_t i = 0; i < g.size(); ++i) r[i] = (r[i] + m - g[i]) % m;
    trim(r);
    return r;
  }
};

class DivisionPolys {
 public:
  DivisionPolys(const CurveSpec& c, std::uint64_t m) : z_{m} {
    const std::uint64_t a = z_.norm(c.a), b = z_.norm(c.b);
    auto mul = [&](std::uint64_t x, std::uint64_t y) { return z_.mul(x, y); };
    auto neg = [&](std::uint64_t x) { return (m - x % m) % m; };
    auto k = [&](std::uint64_t v) { return v % m; };
    const std::uint64_t a2 = mul(a, a), a3 = mul(a2, a), ab = mul(a, b), b2 = mul(b, b);
    memo_[0] = {};
    memo_[1] = {k(1)};
    memo_[2] = {k(1)};
    // 3x^4 + 6a x^2 + 12b x - a^2
    memo_[3] = {neg(a2), mul(k(12), b), mul(k(6), a), 0, k(3)};
    // 2(x^6 + 5a x^4 + 20b x^3 - 5a^2 x^2 - 4ab x - 8b^2 - a^3)
    ZPoly f4 = {neg((mul(k(8), b2) + a3) % m), neg(mul(k(4), ab)), neg(mul(k(5), a2)), mul(k(20), b), mul(k(5), a), 0,
                k(1)};
    for (auto& e : f4) e = mul(e, k(2));
    memo_[4] = f4;
    for (auto& [idx, poly] : memo_) z_.trim(poly);
    ZPoly cubic = {mul(k(4), b), mul(k(4), a), 0, k(4)};
    z_.trim(cubic);
    F2_ = z_.mul(cubic, cubic);
  }

  const ZPoly& f(unsigned k) {
    auto it = memo_.find(k);
    if (it != memo_.end()) return it->second;
    ZPoly r;
    if (k % 2 == 1) {
      const unsigned m = (k - 1) / 2;
      ZPoly fm = f(m), fm1 = f(m + 1), fm2 = f(m + 2), fmm = f(m - 1);
      ZPoly t1 = z_.mul(fm2, z_.mul(fm, z_.mul(fm, fm)));
      ZPoly t2 = z_.mul(fmm, z_.mul(fm1, z_.mul(fm1, fm1)));
      if (m % 2 == 0) t1 = z_.mul(F2_, t1);
      else t2 = z_.mul(F2_, t2);
      r = z_.sub(t1, t2);
    } else {
      const unsigned m = k / 2;
      ZPoly fm = f(m), fm1 = f(m + 1), fm2 = f(m + 2), fmm = f(m - 1), fmm2 = f(m - 2);
      ZPoly inner = z_.sub(z_.mul(fm2, z_.mul(fmm, fmm)), z_.mul(fmm2, z_.mul(fm1, fm1)));
      r = z_.mul(fm, inner);
    }
    return memo_[k] = r;
  }

 private:
  ZMod z_;
  ZPoly F2_;
  std::map<unsigned, ZPoly> memo_;
};

using HElem = WittVec<kHighPrecision>;
using HPoly = std::vector<HElem>;

class RootSearch {
 public:
  RootSearch(const HighPrecisionRing& R, const FiniteField& k) : R_(R), k_(k) {}

  struct Root {
    HElem x;
    int prec;  // x is known mod p^prec
  };

  std::vector<Root> roots(const HPoly& f) {
    out_.clear();
    search(f, kHighPrecision, R_.zero(), 0);
    return out_;
  }

  HElem truncate(const HElem& e, int prec) const {
    if (prec >= kHighPrecision) return e;
    HElem r = e;
    const std::uint64_t pm = ipow(R_.p(), static_cast<unsigned>(prec));
    for (int i = 0; i < R_.degree(); ++i) r.c[i] %= pm;
    return r;
  }

  HElem eval(const HPoly& f, const HElem& x) const {
    HElem acc = R_.zero();
    for (std::size_t i = f.size(); i-- > 0;) acc = R_.add(R_.mul(acc, x), f[i]);
    return acc;
  }

 private:
  HPoly derivative(const HPoly& f) const {
    HPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(R_.scale(f[i], i));
    return d;
  }

  FqElem eval_residue(const HPoly& f, const FqElem& x) const {
    FqElem acc = k_.zero();
    for (std::size_t i = f.size(); i-- > 0;) acc = k_.add(k_.mul(acc, x), R_.reduce(f[i]));
    return acc;
  }

  // f(r + p y) as a polynomial in y.
  HPoly shift(const HPoly& f, const HElem& r) const {
    const HElem pp = R_.from_int(static_cast<std::int64_t>(R_.p()));
    HPoly q;
    for (std::size_t i = f.size(); i-- > 0;) {
      HPoly next(q.size() + 1, R_.zero());
      for (std::size_t j = 0; j < q.size(); ++j) {
        next[j] = R_.add(next[j], R_.mul(q[j], r));
        next[j + 1] = R_.add(next[j + 1], R_.mul(q[j], pp));
      }
      next[0] = R_.add(next[0], f[i]);
      q = std::move(next);
    }
    return q;
  }

  void search(HPoly f, int prec, const HElem& base, int s) {
    if (prec <= 0) throw OracleInconclusive("oracle inconclusive, raise precision");
    int content = prec;
    for (auto& c : f) {
      c = truncate(c, prec);
      content = std::min(content, R_.valuation(c));
    }
    if (content >= prec) throw OracleInconclusive("oracle inconclusive, raise precision");
    for (auto& c : f) c = R_.divide_by_p_power(c, content);
    prec -= content;
    bool nonconstant = false;
    for (std::size_t i = 1; i < f.size(); ++i) nonconstant = nonconstant || !k_.is_zero(R_.reduce(f[i]));
    if (!nonconstant) return;
    const HPoly df = derivative(f);
    const HElem ps = R_.times_p_power(R_.one(), s);
    for (const auto& r : k_.elements()) {
      if (!k_.is_zero(eval_residue(f, r))) continue;
      if (!k_.is_zero(eval_residue(df, r))) {
        HElem y = R_.lift(r);
        for (int it = 0; it < 8; ++it) {
          HElem step = R_.mul(eval(f, y), R_.inverse(eval(df, y)));
          y = truncate(R_.sub(y, step), prec);
        }
        int px = std::min(kHighPrecision, s + prec);
        out_.push_back(Root{truncate(R_.add(base, R_.mul(ps, y)), px), px});
      } else {
        HElem rl = R_.lift(r);
        search(shift(f, rl), prec, R_.add(base, R_.mul(ps, rl)), s + 1);
      }
    }
  }

  const HighPrecisionRing& R_;
  const FiniteField& k_;
  std::vector<Root> out_;
};

}  // namespace

std::vector<std::uint64_t> division_polynomial_mod(const CurveSpec& curve, unsigned n, std::uint64_t m) {
  if (m < 2 || m >= (std::uint64_t{1} << 62)) throw std::invalid_argument("modulus out of range");
  DivisionPolys polys(curve, m);
  return polys.f(n);
}

KTorsionResult k_torsion_search(const CurveSpec& curve, std::uint64_t p, int d) {
  if (p <= 3 || !is_prime(p)) throw std::invalid_argument("p must be a prime > 3");
  if (p > kOracleMaxPrime) throw GuardExceeded("division-polynomial oracle limited to p <= 31");
  if (!curve.good_reduction(p)) throw std::domain_error("bad reduction");
  const FieldParams field = make_field(p, d);
  HighPrecisionRing R(field);
  FiniteField k(field);
  const auto coeffs = division_polynomial_mod(curve, static_cast<unsigned>(p), R.coeff_modulus());
  HPoly f;
  for (auto c : coeffs) f.push_back(R.from_int(static_cast<std::int64_t>(c)));

  RootSearch search(R, k);
  KTorsionResult result;
  const HElem a = R.from_int(curve.a), b = R.from_int(curve.b);
  for (const auto& root : search.roots(f)) {
    ++result.roots_in_W;
    HElem fx = R.add(R.mul(R.add(R.mul(root.x, root.x), a), root.x), b);
    fx = search.truncate(fx, root.prec);
    const int v = R.valuation(fx);
    if (v >= root.prec) throw OracleInconclusive("oracle inconclusive, raise precision");
    if (v % 2 == 0 && k.is_square(R.reduce(R.divide_by_p_power(fx, v)))) ++result.square_roots;
  }
  result.has_K_torsion = result.square_roots > 0;
  return result;
}

}  // namespace ltlab
