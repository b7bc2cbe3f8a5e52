#include "ltlab/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ltlab/errors.hpp"
#include "ltlab/heights_counting.hpp"
#include "ltlab/primes.hpp"

namespace ltlab {

std::uint64_t nu_bound(std::uint64_t p, int d) {
  (void)d;
  if (p % 2 == 0 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  return (2 * p - 1) * (p * p + p + 1);
}

std::vector<std::uint64_t> doubling_ladder(std::uint64_t x_min, std::uint64_t x_max) {
  if (x_min < 3 || x_min > x_max) throw std::invalid_argument("need 3 <= x_min <= x_max");
  std::vector<std::uint64_t> xs;
  for (std::uint64_t x = x_min; x < x_max; x *= 2) xs.push_back(x);
  xs.push_back(x_max);
  return xs;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("need at least two points");
  double mx = 0, my = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]) / n;
    my += std::log(y[i]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

namespace {

SumRow sums_up_to(std::uint64_t x) {
  SumRow r;
  r.x = x;
  for (std::uint64_t p : primes_between(3, x)) {
    const double nu = static_cast<double>(nu_bound(p, 1));
    const double p2 = static_cast<double>(p) * static_cast<double>(p);
    r.S_a += nu;
    r.S_b += nu / p2;
    r.S_c += nu / (p2 * p2);
    r.S_d += nu / (p2 * p2 * p2);
  }
  return r;
}

}  // namespace

SumLedger lemma56_sums(std::uint64_t x_max, int d, std::uint64_t x_min) {
  if (x_max > kSumGuard) throw GuardExceeded("x_max exceeds 10^6");
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  SumLedger L;
  L.d = d;
  // One pass over the primes, cut at each ladder point.
  const auto xs = doubling_ladder(x_min, x_max);
  SumRow acc;
  std::size_t next = 0;
  for (std::uint64_t p : primes_between(3, x_max)) {
    while (next < xs.size() && p > xs[next]) {
      acc.x = xs[next++];
      L.ladder.push_back(acc);
    }
    const double nu = static_cast<double>(nu_bound(p, d));
    const double p2 = static_cast<double>(p) * static_cast<double>(p);
    acc.S_a += nu;
    acc.S_b += nu / p2;
    acc.S_c += nu / (p2 * p2);
    acc.S_d += nu / (p2 * p2 * p2);
  }
  while (next < xs.size()) {
    acc.x = xs[next++];
    L.ladder.push_back(acc);
  }
  std::vector<double> lx, a, b, c, dd;
  for (const auto& r : L.ladder) {
    lx.push_back(static_cast<double>(r.x));
    a.push_back(r.S_a);
    b.push_back(r.S_b);
    c.push_back(r.S_c);
    dd.push_back(r.S_d);
  }
  if (L.ladder.size() >= 2) {
    L.slope_a = loglog_slope(lx, a);
    L.slope_b = loglog_slope(lx, b);
    L.slope_c = loglog_slope(lx, c);
    L.slope_d = loglog_slope(lx, dd);
  }
  for (std::size_t i = 1; i < L.ladder.size(); ++i)
    if (L.ladder[i - 1].x >= L.tail_from)
      L.tail_increment = std::max(L.tail_increment, L.ladder[i].S_d - L.ladder[i - 1].S_d);
  return L;
}

AssemblyReport theorem57_assembly(std::int64_t B, std::uint64_t x_max, int d) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (x_max < 3) throw std::invalid_argument("x_max must be >= 3");
  if (x_max > kSumGuard) throw GuardExceeded("x_max exceeds 10^6");
  if (B > kStreamGuard) throw GuardExceeded("B exceeds the enumeration guard of 2000");
  AssemblyReport r;
  r.B = B;
  r.x = x_max;
  r.d = d;
  r.count_sb = count_sb(B);
  const SumRow s = sums_up_to(x_max);
  const double b = static_cast<double>(B), n = static_cast<double>(r.count_sb), dd = d;
  r.T1 = dd * 8 * b * b * b * s.S_d / n;
  r.T2 = dd * 4 * b * b * s.S_c / n;
  r.T3 = dd * 2 * b * s.S_b / n;
  r.T4 = dd * s.S_a / n;
  r.total = r.T1 + r.T2 + r.T3 + r.T4;
  r.boundary_flag = 3 * std::log(b) < 4.05 * std::log(static_cast<double>(x_max));
  return r;
}

std::int64_t height_schedule(std::uint64_t x, double eps) {
  const double e = std::pow(static_cast<double>(x), 4.0 / 3.0 + eps);
  // Guard against x^(4/3) landing a hair above an integer.
  return static_cast<std::int64_t>(std::ceil(e - 1e-9));
}

AssemblyLadder assembly_ladder(const std::vector<std::uint64_t>& xs, int d, double eps,
                               std::optional<std::int64_t> frozen_B) {
  if (xs.empty()) throw std::invalid_argument("empty ladder");
  AssemblyLadder L;
  L.eps = eps;
  L.frozen_B = frozen_B;
  double lo = 0, hi = 0;
  for (std::uint64_t x : xs) {
    const std::int64_t B = frozen_B ? *frozen_B : height_schedule(x, eps);
    L.rows.push_back(theorem57_assembly(B, x, d));
    const double t = L.rows.back().total;
    lo = L.rows.size() == 1 ? t : std::min(lo, t);
    hi = std::max(hi, t);
  }
  L.spread = hi / lo;
  L.bounded = L.spread <= 3;
  return L;
}

AverageReport ec_family_average(const std::vector<CurveSpec>& family, std::uint64_t x_max, int d,
                                std::size_t spot_every) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (family.size() > kFamilyGuard) throw GuardExceeded("family exceeds 10^5 curves");
  AverageReport R;
  R.x_max = x_max;
  R.d = d;
  std::size_t counted = 0;
  for (const CurveSpec& E : family) {
    if (E.is_singular()) {
      ++R.singular_skipped;
      continue;
    }
    const LocalTorsionScan scan = local_torsion_primes(E, d, x_max);
    CurveCount c{E.a, E.b, scan.torsion_primes.size(), scan.bad_primes.size(), scan.unknown_ramified.size(),
                 scan.torsion_primes};
    R.total_good += c.pi_good;
    R.total_bad += c.bad;
    R.total_unknown += c.unknown_ramified;
    for (std::uint64_t p : scan.torsion_primes) {
      if (spot_every == 0 || counted++ % spot_every != 0 || p > kOracleMaxPrime) continue;
      ++R.spot_checked;
      try {
        bool ok = false;
        for (int d0 = 1; d0 <= d && !ok; ++d0) {
          const TorsionVerdict v = rank_relation_check(E, p, d0);
          ok = v.holds && v.has_K_torsion;
        }
        if (!ok) ++R.spot_failures;
      } catch (const OracleInconclusive&) {
        ++R.spot_inconclusive;
      }
    }
    R.curves.push_back(std::move(c));
  }
  R.family_size = R.curves.size();
  if (R.family_size == 0) throw std::invalid_argument("empty family");
  R.mean = static_cast<double>(R.total_good) / static_cast<double>(R.family_size);
  return R;
}

AverageReport ec_family_average(std::int64_t A_max, std::int64_t B_max, std::uint64_t x_max, int d,
                                std::size_t spot_every) {
  if (A_max < 0 || B_max < 0) throw std::invalid_argument("family bounds must be >= 0");
  const std::uint64_t size = static_cast<std::uint64_t>(2 * A_max + 1) * static_cast<std::uint64_t>(2 * B_max + 1);
  if (size > kFamilyGuard) throw GuardExceeded("family exceeds 10^5 curves");
  std::vector<CurveSpec> family;
  for (std::int64_t a = -A_max; a <= A_max; ++a)
    for (std::int64_t b = -B_max; b <= B_max; ++b) family.push_back(CurveSpec{a, b});
  AverageReport R = ec_family_average(family, x_max, d, spot_every);
  R.A_max = A_max;
  R.B_max = B_max;
  return R;
}

}  // namespace ltlab
