// Prints one PASS/FAIL line per acceptance criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "ltlab/averaging.hpp"
#include "ltlab/curve_local.hpp"
#include "ltlab/errors.hpp"
#include "ltlab/heights_counting.hpp"
#include "ltlab/honda_lifts.hpp"
#include "ltlab/primes.hpp"

using namespace ltlab;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::printf("Criterion %d: %s  %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::uint64_t pw(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

struct GridPoint {
  std::uint64_t p;
  int d;
};

const std::vector<GridPoint> kGrid = {{3, 1}, {5, 1}, {7, 1}, {3, 2}};

std::vector<LiftScenario> grid_scenarios() {
  std::vector<LiftScenario> out;
  for (auto g : kGrid)
    for (auto k : all_scenario_kinds()) {
      // Q(sqrt D) cannot stay inert in F_{p^d} for even d.
      if (k == ScenarioKind::OrdinaryRMInert && g.d % 2 == 0) continue;
      out.push_back(LiftScenario{k, g.p, g.d});
    }
  return out;
}

std::string tag(const LiftScenario& s) {
  return to_string(s.kind) + "(" + std::to_string(s.p) + "," + std::to_string(s.d) + ")";
}

void lifts_criteria() {
  bool ok1 = true, ok2 = true, ok3 = true;
  std::string bad1, bad2, bad3, info;
  std::uint64_t lifts_checked = 0, mismatches = 0;
  for (const auto& s : grid_scenarios()) {
    const std::uint64_t q = pw(s.p, s.d);
    const std::uint64_t want_total = s.kind == ScenarioKind::OrdinaryNoRM ? q * q * q * q : q * q;
    const std::uint64_t got_total = enumerate_lifts(s).size();
    if (got_total != want_total) {
      ok1 = false;
      bad1 += " " + tag(s) + "=" + std::to_string(got_total);
    }
    const ElevatedCounts c = count_lifts(s, q <= 25);
    std::uint64_t want = 0, sharp = 0;
    switch (s.kind) {
      case ScenarioKind::OrdinaryNoRM: want = q * q * q + q * q - q; break;
      case ScenarioKind::OrdinaryRMSplit: want = 2 * q - 1, sharp = 2 * s.p - 1; break;
      case ScenarioKind::OrdinaryRMInert: want = 1, sharp = 1; break;
      case ScenarioKind::NonordinaryRMSplit: want = q, sharp = s.p; break;
    }
    if (c.elevated != want) {
      ok2 = false;
      bad2 += " " + tag(s) + " elevated=" + std::to_string(c.elevated);
    }
    if (s.kind == ScenarioKind::OrdinaryNoRM) {
      info += " " + tag(s) + " fp=" + std::to_string(c.fp_elevated);
    } else if (c.fp_elevated > 2 * s.p - 1 || c.fp_elevated != sharp) {
      ok2 = false;
      bad2 += " " + tag(s) + " fp=" + std::to_string(c.fp_elevated);
    }
    if (c.mismatches) {
      lifts_checked += c.total;
      mismatches += *c.mismatches;
      if (*c.mismatches) {
        ok3 = false;
        bad3 += " " + tag(s) + "=" + std::to_string(*c.mismatches);
      }
    }
  }
  report(1, ok1, "lift totals on " + std::to_string(grid_scenarios().size()) + " scenarios" + (ok1 ? "" : ";" + bad1));
  report(2, ok2,
         "elevated counts and F_p-rational bound 2p-1 for RM scenarios" + (ok2 ? "" : ";" + bad2) +
             "; no-RM F_p-rational counts (no bound claimed):" + info);
  report(3, ok3,
         std::to_string(lifts_checked) + " lifts checked, " + std::to_string(mismatches) + " mismatches" +
             (ok3 ? "" : " at" + bad3));
}

void curve_criteria() {
  const std::vector<std::uint64_t> ps = {5, 7, 11, 13};
  std::set<std::pair<std::int64_t, std::int64_t>> curves;
  for (std::int64_t a = -3; a <= 3; ++a)
    for (std::int64_t b = -3; b <= 3; ++b) curves.insert({a, b});
  // Anomalous reductions are where the W_2 rank can jump; add them from a wider box.
  for (std::int64_t a = -12; a <= 12; ++a)
    for (std::int64_t b = -12; b <= 12; ++b) {
      CurveSpec E{a, b};
      if (E.is_singular()) continue;
      for (auto p : ps)
        if (E.good_reduction(p) && residue_order(E, p, 1) % p == 0) curves.insert({a, b});
    }
  std::size_t configs = 0, conclusive = 0, inconclusive = 0, fails = 0, with_torsion = 0;
  std::size_t order_checked = 0, order_fails = 0;
  for (auto [a, b] : curves) {
    CurveSpec E{a, b};
    if (E.is_singular()) continue;
    for (auto p : ps) {
      if (!E.good_reduction(p)) continue;
      for (int d0 = 1; d0 <= 2; ++d0) {
        ++configs;
        const std::uint64_t q = pw(p, d0);
        const auto g1 = point_group(E, p, d0, BaseRing::ResidueField);
        const auto g2 = point_group(E, p, d0, BaseRing::W2);
        ++order_checked;
        if (g2.order != q * g1.order) ++order_fails;
        try {
          const bool K = k_torsion_oracle(E, p, d0);
          ++conclusive;
          with_torsion += K;
          if (g2.p_rank != d0 + (K ? 1 : 0)) ++fails;
        } catch (const OracleInconclusive&) {
          ++inconclusive;
        }
      }
    }
  }
  const double frac = configs ? static_cast<double>(inconclusive) / static_cast<double>(configs) : 1.0;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%zu configurations, %zu conclusive (%zu with K-torsion), %zu failures, %zu inconclusive (%.2f%%)",
                configs, conclusive, with_torsion, fails, inconclusive, 100 * frac);
  report(4, configs >= 200 && fails == 0 && frac < 0.05, buf);
  std::snprintf(buf, sizeof buf, "%zu configurations, %zu violations", order_checked, order_fails);
  report(5, order_checked > 0 && order_fails == 0, buf);
}

void schanuel_criterion() {
  const auto top = schanuel_ratio(400);
  double lo = 1e300, hi = 0, nlo = 1e300, nhi = 0;
  for (std::int64_t B : {50, 100, 200, 400}) {
    const auto s = schanuel_ratio(B);
    lo = std::min(lo, s.residual), hi = std::max(hi, s.residual);
    nlo = std::min(nlo, s.normalized_residual), nhi = std::max(nhi, s.normalized_residual);
  }
  const bool ok = top.ratio >= 0.95 && top.ratio <= 1.05 && hi / lo <= 3;
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "#S_400=%llu ratio=%.4f residual spread=%.2f; with the constant 4/zeta(3): ratio=%.4f residual "
                "spread=%.2f",
                static_cast<unsigned long long>(top.count), top.ratio, hi / lo, top.normalized_ratio, nhi / nlo);
  report(6, ok, buf);
}

void sums_criterion() {
  const SumLedger L = lemma56_sums(1'000'000, 1);
  const bool ok = L.mode == "bound" && L.slope_a <= 4.15 && L.slope_b <= 2.15 && L.slope_c <= 1.15 &&
                  L.tail_increment < 1e-3 && L.ladder.size() >= 10;
  char buf[256];
  std::snprintf(buf, sizeof buf, "slopes %.3f / %.3f / %.3f, S_d tail increment %.2e on %zu ladder points",
                L.slope_a, L.slope_b, L.slope_c, L.tail_increment, L.ladder.size());
  report(7, ok, buf);
}

void averaging_criterion() {
  const AssemblyLadder L = assembly_ladder({25, 50, 100, 200}, 1, 0.1);
  const AverageReport r25 = ec_family_average(20, 20, 25, 1);
  const AverageReport r50 = ec_family_average(20, 20, 50, 1);
  const double ratio = r50.mean / r25.mean;
  const bool stable = r25.mean > 0 && ratio >= 0.5 && ratio <= 2;
  const bool spot = r25.spot_failures == 0 && r50.spot_failures == 0;
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "assembly spread %.3f (B up to %lld); family of %zu curves: mean %.4f at x=25, %.4f at x=50 "
                "(ratio %.3f), spot checks %zu/%zu clean",
                L.spread, static_cast<long long>(L.rows.back().B), r50.family_size, r25.mean, r50.mean, ratio,
                r25.spot_checked + r50.spot_checked - r25.spot_failures - r50.spot_failures,
                r25.spot_checked + r50.spot_checked);
  report(8, L.bounded && stable && spot, buf);
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  lifts_criteria();
  curve_criteria();
  schanuel_criterion();
  sums_criterion();
  averaging_criterion();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d of 8 criteria failed (%.1f s)\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
