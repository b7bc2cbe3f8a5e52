#include "ltlab/ring_core.hpp"

#include <sstream>
#include <stdexcept>

#include "ltlab/primes.hpp"

namespace ltlab {

namespace {

using Poly = std::vector<std::uint64_t>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint64_t inv_mod_prime(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = static_cast<std::uint64_t>((unsigned __int128)r * b % p);
    b = static_cast<std::uint64_t>((unsigned __int128)b * b % p);
    e >>= 1;
  }
  return r;
}

// Remainder of a by monic-or-not b over F_p.
Poly poly_rem(Poly a, const Poly& b, std::uint64_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint64_t lead_inv = inv_mod_prime(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t t = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j <= db; ++j) {
      a[shift + j] = (a[shift + j] + p - t * b[j] % p) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
  }
  return poly_rem(std::move(r), f, p);
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

std::uint64_t FieldParams::order() const { return ipow(p, static_cast<unsigned>(d)); }

bool is_irreducible_mod_p(const std::vector<std::uint64_t>& poly, std::uint64_t p) {
  Poly f = poly;
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t n = f.size() - 1;
  if (n == 1) return true;
  // x^(p^i) mod f for i = 1 .. n/2; gcd(x^(p^i) - x, f) must be 1.
  Poly xpow = {0, 1};
  for (std::size_t i = 1; i <= n / 2; ++i) {
    Poly base = xpow, acc = {1};
    std::uint64_t e = p;
    while (e) {
      if (e & 1) acc = poly_mulmod(acc, base, f, p);
      base = poly_mulmod(base, base, f, p);
      e >>= 1;
    }
    xpow = acc;
    Poly diff = xpow;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    Poly g = poly_gcd(f, diff, p);
    if (g.size() != 1) return false;
  }
  return true;
}

FieldParams make_field(std::uint64_t p, int d) {
  if (p == 2) throw std::invalid_argument("p must be odd");
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (d < 1 || d > kMaxDegree) throw std::invalid_argument("degree out of range");
  FieldParams fp{p, d, {}};
  const std::uint64_t count = ipow(p, static_cast<unsigned>(d));
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Poly f(static_cast<std::size_t>(d) + 1, 0);
    std::uint64_t rest = idx;
    for (int i = d - 1; i >= 0; --i) {
      f[static_cast<std::size_t>(i)] = rest % p;
      rest /= p;
    }
    f[static_cast<std::size_t>(d)] = 1;
    if (is_irreducible_mod_p(f, p)) {
      fp.modulus = f;
      return fp;
    }
  }
  throw std::logic_error("no irreducible polynomial found");
}

template <int N>
GaloisRing<N>::GaloisRing(FieldParams params) : params_(std::move(params)) {
  if (params_.d < 1 || params_.d > kMaxDegree ||
      params_.modulus.size() != static_cast<std::size_t>(params_.d) + 1) {
    throw std::invalid_argument("malformed field parameters");
  }
  q_ = params_.order();
  pn_ = 1;
  for (int i = 0; i < N; ++i) {
    if (pn_ > (std::uint64_t{1} << 62) / params_.p) {
      throw std::invalid_argument("coefficient modulus p^N exceeds 62 bits");
    }
    pn_ *= params_.p;
  }
}

template <int N>
std::uint64_t GaloisRing<N>::size() const {
  return ipow(q_, N);
}

template <int N>
std::uint64_t GaloisRing<N>::mulmod(std::uint64_t a, std::uint64_t b) const {
  return static_cast<std::uint64_t>((unsigned __int128)a * b % pn_);
}

template <int N>
typename GaloisRing<N>::Elem GaloisRing<N>::one() const {
  Elem r;
  r.c[0] = 1 % pn_;
  return r;
}

template <int N>
typename GaloisRing<N>::Elem GaloisRing<N>::from_int(std::int64_t v) const {
  Elem r;
  const auto m = static_cast<std::int64_t>(pn_);
  std::int64_t x = v % m;
  if (x < 0) x += m;
  r.c[0] = static_cast<std::uint64_t>(x);
  return r;
}

template <int N>
typename GaloisRing<N>::Elem GaloisRing<N>::generator() const {
  if (params_.d >= 2) {
    Elem r;
    r.c[1] = 1;
    return r;
  }
  return neg(from_int(static_cast<std::int64_t>(params_.modulus[0])));
}

template <int N>
typename GaloisRing<N>::Elem GaloisRing<N>::add(const Elem& a, const Elem& b) const {
  Elem r;
  for (int i = 0; i < params_.d; ++i) {
    std::uint64_t s = a.c[i] + b.c[i];
    r.c[i] = s >= pn_ ? s - pn_ : s;
  }
  return r;
}

template <int N>
typename GaloisRing<N>::Elem GaloisRing<N>::sub(const Elem& a, const Elem& b) const {
  Elem r;
  for (int i = 0; i < params_.d; ++i) {
    r.c[i] = a.c[i] >= b.c[i] ? a.c[i] - b.c[i] : a.c[i] + pn_ - b.c[i];
  }
  return r;
}

template <int N>
typename GaloisRing<N>::Elem GaloisRing<N>::neg(const Elem& a) const {
  return sub(Elem{}, a);
}

template <int N>
typename GaloisRing<N>::Elem GaloisRing<N>::scale(const Elem& a, std::uint64_t s) const {
  Elem r;
  s %= pn_;
  for (int i = 0; i < params_.d; ++i) r.c[i] = mulmod(a.c[i], s);
  return r;
}

template <int N>
typename GaloisRing<N>::Elem GaloisRing<N>::mul(const Elem& a, const Elem& b) const {
  const int d = params_.d;
  if (d == 1) {
    Elem r;
    r.c[0] = mulmod(a.c[0], b.c[0]);
    return r;
  }
  std::array<std::uint64_t, 2 * kMaxDegree> prod{};
  for (int i = 0; i < d; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      std::uint64_t s = prod[i + j] + mulmod(a.c[i], b.c[j]);
      prod[i + j] = s >= pn_ ? s - pn_ : s;
    }
  }
  // Reduce by the monic lifted modulus from the top down.
  for (int k = 2 * d - 2; k >= d; --k) {
    const std::uint64_t t = prod[k];
    if (t == 0) continue;
    prod[k] = 0;
    for (int j = 0; j < d; ++j) {
      const std::uint64_t sub_v = mulmod(t, params_.modulus[j] % pn_);
      std::uint64_t& slot = prod[k - d + j];
      slot = slot >= sub_v ? slot - sub_v : slot + pn_ - sub_v;
    }
  }
  Elem r;
  for (int i = 0; i < d; ++i) r.c[i] = prod[i];
  return r;
}

template <int N>
typename GaloisRing<N>::Elem GaloisRing<N>::pow(const Elem& a, std::uint64_t e) const {
  Elem result = one(), base = a;
  while (e) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

template <int N>
bool GaloisRing<N>::is_unit(const Elem& a) const {
  for (int i = 0; i < params_.d; ++i) {
    if (a.c[i] % params_.p != 0) return true;
  }
  return false;
}

template <int N>
typename GaloisRing<N>::Elem GaloisRing<N>::inverse(const Elem& a) const {
  if (!is_unit(a)) throw std::domain_error("element is not a unit");
  // Inverse of the residue via a^(q-2), then Newton steps v <- v(2 - av).
  GaloisRing<1> k(params_);
  Elem v = lift(k.pow(reduce(a), q_ - 2));
  const Elem two = from_int(2);
  for (int i = 1; i < N; i *= 2) v = mul(v, sub(two, mul(a, v)));
  return v;
}

template <int N>
int GaloisRing<N>::valuation(const Elem& a) const {
  int best = N;
  for (int i = 0; i < params_.d; ++i) {
    std::uint64_t x = a.c[i];
    if (x == 0) continue;
    int v = 0;
    while (x % params_.p == 0) {
      x /= params_.p;
      ++v;
    }
    if (v < best) best = v;
  }
  return best;
}

template <int N>
typename GaloisRing<N>::Elem GaloisRing<N>::divide_by_p_power(const Elem& a, int k) const {
  const std::uint64_t pk = ipow(params_.p, static_cast<unsigned>(k));
  Elem r;
  for (int i = 0; i < params_.d; ++i) {
    if (a.c[i] % pk != 0) throw std::domain_error("element not divisible by p^k");
    r.c[i] = a.c[i] / pk;
  }
  return r;
}

template <int N>
typename GaloisRing<N>::Elem GaloisRing<N>::times_p_power(const Elem& a, int k) const {
  if (k >= N) return Elem{};
  return scale(a, ipow(params_.p, static_cast<unsigned>(k)));
}

template <int N>
FqElem GaloisRing<N>::reduce(const Elem& a) const {
  FqElem r;
  for (int i = 0; i < params_.d; ++i) r.c[i] = a.c[i] % params_.p;
  return r;
}

template <int N>
typename GaloisRing<N>::Elem GaloisRing<N>::lift(const FqElem& a) const {
  Elem r;
  for (int i = 0; i < params_.d; ++i) r.c[i] = a.c[i];
  return r;
}

template <int N>
typename GaloisRing<N>::Elem GaloisRing<N>::teichmuller(const FqElem& a) const {
  Elem r = lift(a);
  for (int i = 1; i < N; ++i) r = pow(r, q_);
  return r;
}

template <int N>
typename GaloisRing<N>::Elem GaloisRing<N>::frobenius(const Elem& a) const {
  if constexpr (N == 1) {
    return pow(a, params_.p);
  } else if constexpr (N == 2) {
    // a = w(x) + p * lift(y) with x, y in k; sigma(a) = w(x^p) + p * lift(y^p).
    GaloisRing<1> k(params_);
    const FqElem x = reduce(a);
    const Elem rest = sub(a, teichmuller(x));
    const FqElem y = reduce(divide_by_p_power(rest, 1));
    return add(teichmuller(k.frobenius(x)), times_p_power(lift(k.frobenius(y)), 1));
  } else {
    (void)a;
    throw std::logic_error("Frobenius is provided for precision <= 2");
  }
}

template <int N>
typename GaloisRing<N>::Elem GaloisRing<N>::frobenius_inverse(const Elem& a) const {
  Elem r = a;
  for (int i = 1; i < params_.d; ++i) r = frobenius(r);
  return r;
}

template <int N>
bool GaloisRing<N>::in_prime_ring(const Elem& a) const {
  for (int i = 1; i < params_.d; ++i) {
    if (a.c[i] != 0) return false;
  }
  return true;
}

template <int N>
bool GaloisRing<N>::is_square(const Elem& a) const {
  if constexpr (N != 1) throw std::logic_error("is_square is defined on the residue field only");
  if (is_zero(a)) return true;
  return pow(a, (q_ - 1) / 2) == one();
}

template <int N>
typename GaloisRing<N>::Elem GaloisRing<N>::element_at(std::uint64_t index) const {
  Elem r;
  for (int i = params_.d - 1; i >= 0; --i) {
    r.c[i] = index % pn_;
    index /= pn_;
  }
  return r;
}

template <int N>
std::uint64_t GaloisRing<N>::index_of(const Elem& a) const {
  std::uint64_t idx = 0;
  for (int i = 0; i < params_.d; ++i) idx = idx * pn_ + a.c[i];
  return idx;
}

template <int N>
std::vector<typename GaloisRing<N>::Elem> GaloisRing<N>::elements() const {
  const std::uint64_t n = size();
  std::vector<Elem> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(element_at(i));
  return out;
}

template <int N>
std::string GaloisRing<N>::to_string(const Elem& a) const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < params_.d; ++i) {
    if (i) os << ',';
    os << a.c[i];
  }
  os << ']';
  return os.str();
}

template class GaloisRing<1>;
template class GaloisRing<2>;
template class GaloisRing<3>;
template class GaloisRing<kHighPrecision>;

}  // namespace ltlab
