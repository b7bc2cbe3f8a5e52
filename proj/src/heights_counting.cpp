#include "ltlab/heights_counting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "ltlab/errors.hpp"
#include "ltlab/primes.hpp"

namespace ltlab {

std::int64_t ProjPoint::height() const { return std::max({std::llabs(y1), std::llabs(y2), std::llabs(y3)}); }

ProjPoint canonical(std::int64_t y1, std::int64_t y2, std::int64_t y3) {
  std::int64_t g = std::gcd(std::gcd(y1, y2), y3);
  if (g == 0) throw std::invalid_argument("the zero vector is not a projective point");
  y1 /= g, y2 /= g, y3 /= g;
  std::int64_t lead = y1 != 0 ? y1 : (y2 != 0 ? y2 : y3);
  if (lead < 0) y1 = -y1, y2 = -y2, y3 = -y3;
  return ProjPoint{y1, y2, y3};
}

void for_each_sb(std::int64_t B, const std::function<void(const ProjPoint&)>& visit) {
  if (B < 1) throw std::invalid_argument("B must be >= 1");
  if (B > kStreamGuard) throw GuardExceeded("B exceeds the enumeration guard of 2000");
  auto emit = [&](std::int64_t y1, std::int64_t y2, std::int64_t y3) {
    if (std::gcd(std::gcd(y1, y2), y3) == 1) visit(ProjPoint{y1, y2, y3});
  };
  for (std::int64_t h = 1; h <= B; ++h) {
    for (std::int64_t y1 = 0; y1 <= h; ++y1)
      for (std::int64_t y2 = (y1 == 0 ? 0 : -h); y2 <= h; ++y2) {
        const bool positive_only = y1 == 0 && y2 == 0;
        if (y1 == h || std::llabs(y2) == h) {
          for (std::int64_t y3 = positive_only ? 1 : -h; y3 <= h; ++y3) emit(y1, y2, y3);
        } else {
          if (!positive_only) emit(y1, y2, -h);
          emit(y1, y2, h);
        }
      }
  }
}

std::vector<ProjPoint> enumerate_sb(std::int64_t B) {
  if (B > kListGuard) throw GuardExceeded("B exceeds the list guard; stream with for_each_sb");
  std::vector<ProjPoint> out;
  for_each_sb(B, [&](const ProjPoint& y) { out.push_back(y); });
  return out;
}

std::uint64_t count_sb_enumerated(std::int64_t B) {
  std::uint64_t n = 0;
  for_each_sb(B, [&](const ProjPoint&) { ++n; });
  return n;
}

std::uint64_t count_sb(std::int64_t B) {
  if (B < 1) throw std::invalid_argument("B must be >= 1");
  if (B > 1'000'000) throw GuardExceeded("B exceeds 10^6");
  // Moebius function by a linear sieve.
  std::vector<int> mu(B + 1, 1);
  std::vector<bool> composite(B + 1, false);
  std::vector<std::int64_t> primes;
  mu[0] = 0;
  for (std::int64_t i = 2; i <= B; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (std::int64_t p : primes) {
      if (i * p > B) break;
      composite[i * p] = true;
      if (i % p == 0) {
        mu[i * p] = 0;
        break;
      }
      mu[i * p] = -mu[i];
    }
  }
  __int128 total = 0;
  for (std::int64_t d = 1; d <= B; ++d) {
    if (mu[d] == 0) continue;
    __int128 side = 2 * (B / d) + 1;
    total += mu[d] * (side * side * side - 1);
  }
  return static_cast<std::uint64_t>(total / 2);
}

SchanuelResult schanuel_ratio(std::int64_t B) {
  if (B > kStreamGuard) throw GuardExceeded("B exceeds the enumeration guard of 2000");
  SchanuelResult r;
  r.B = B;
  r.count = count_sb(B);
  const double b3 = std::pow(static_cast<double>(B), 3), b2 = static_cast<double>(B) * static_cast<double>(B);
  const double n = static_cast<double>(r.count);
  r.ratio = n * kZeta3 / b3;
  r.residual = std::abs(n - b3 / kZeta3) / b2;
  r.normalized_ratio = r.ratio / 4;
  r.normalized_residual = std::abs(n - 4 * b3 / kZeta3) / b2;
  return r;
}

std::array<std::uint64_t, 3> reduce_point(const ProjPoint& y, std::uint64_t p, std::uint64_t m) {
  const std::int64_t sm = static_cast<std::int64_t>(m);
  std::array<std::uint64_t, 3> v;
  const std::int64_t c[3] = {y.y1, y.y2, y.y3};
  for (int i = 0; i < 3; ++i) v[i] = static_cast<std::uint64_t>(((c[i] % sm) + sm) % sm);
  int lead = 0;
  while (lead < 3 && v[lead] % p == 0) ++lead;
  if (lead == 3) throw std::invalid_argument("point reduces to zero");
  // Inverse of the unit v[lead] modulo m by extended Euclid.
  std::int64_t a = static_cast<std::int64_t>(v[lead]), b = sm, x0 = 1, x1 = 0;
  while (b) {
    std::int64_t t = a / b;
    std::tie(a, b) = std::make_pair(b, a - t * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - t * x1);
  }
  const std::uint64_t inv = static_cast<std::uint64_t>(((x0 % sm) + sm) % sm);
  for (auto& e : v) e = static_cast<std::uint64_t>(static_cast<unsigned __int128>(e) * inv % m);
  return v;
}

std::uint64_t FiberHistogram::total() const {
  std::uint64_t t = 0;
  for (const auto& [k, v] : counts) t += v;
  return t;
}

std::uint64_t FiberHistogram::max_count() const {
  std::uint64_t m = 0;
  for (const auto& [k, v] : counts) m = std::max(m, v);
  return m;
}

std::uint64_t FiberHistogram::min_count() const {
  if (counts.size() < bins_total) return 0;
  std::uint64_t m = UINT64_MAX;
  for (const auto& [k, v] : counts) m = std::min(m, v);
  return counts.empty() ? 0 : m;
}

double FiberHistogram::envelope_constant() const {
  const double scale = 2.0 * static_cast<double>(B) / static_cast<double>(modulus);
  return std::max(0.0, std::cbrt(static_cast<double>(max_count())) - scale);
}

double FiberHistogram::class_envelope_constant() const {
  // A point of P^2(Z/m) has phi(m) affine lifts, paired by sign.
  const double classes = static_cast<double>(modulus - modulus / p) / 2.0;
  const double scale = 2.0 * static_cast<double>(B) / static_cast<double>(modulus);
  return std::max(0.0, std::cbrt(static_cast<double>(max_count()) / classes) - scale);
}

FiberHistogram fiber_counts(std::int64_t B, std::uint64_t p, int level) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  if (level != 1 && level != 2) throw std::invalid_argument("level must be 1 or 2");
  if (p > 100 || ipow(p, 6) > kHistogramGuard) throw GuardExceeded("histogram guard p^6 <= 10^7 exceeded");
  FiberHistogram h;
  h.B = B;
  h.p = p;
  h.modulus = level == 1 ? p : p * p;
  h.bins_total = level == 1 ? p * p + p + 1 : p * p * (p * p + p + 1);
  const std::uint64_t m = h.modulus;
  const std::int64_t sm = static_cast<std::int64_t>(m);
  std::vector<std::uint64_t> inv(m, 0);
  for (std::uint64_t u = 1; u < m; ++u)
    for (std::uint64_t w = 1; w < m && u % p != 0; ++w)
      if (u * w % m == 1) {
        inv[u] = w;
        break;
      }
  std::vector<std::uint64_t> dense(m * m * m, 0);
  for_each_sb(B, [&](const ProjPoint& y) {
    std::uint64_t v[3] = {static_cast<std::uint64_t>(((y.y1 % sm) + sm) % sm),
                          static_cast<std::uint64_t>(((y.y2 % sm) + sm) % sm),
                          static_cast<std::uint64_t>(((y.y3 % sm) + sm) % sm)};
    int lead = v[0] % p ? 0 : (v[1] % p ? 1 : 2);
    const std::uint64_t s = inv[v[lead]];
    ++dense[((v[0] * s % m) * m + v[1] * s % m) * m + v[2] * s % m];
  });
  for (std::uint64_t idx = 0; idx < dense.size(); ++idx)
    if (dense[idx]) h.counts[{idx / (m * m), idx / m % m, idx % m}] = dense[idx];
  return h;
}

}  // namespace ltlab
