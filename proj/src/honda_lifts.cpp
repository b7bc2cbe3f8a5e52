#include "ltlab/honda_lifts.hpp"

#include <stdexcept>

#include "ltlab/errors.hpp"
#include "ltlab/primes.hpp"

namespace ltlab {

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::OrdinaryNoRM: return "ordinary-no-rm";
    case ScenarioKind::OrdinaryRMSplit: return "ordinary-rm-split";
    case ScenarioKind::OrdinaryRMInert: return "ordinary-rm-inert";
    case ScenarioKind::NonordinaryRMSplit: return "nonordinary-rm-split";
  }
  return "?";
}

std::vector<ScenarioKind> all_scenario_kinds() {
  return {ScenarioKind::OrdinaryNoRM, ScenarioKind::OrdinaryRMSplit, ScenarioKind::OrdinaryRMInert,
          ScenarioKind::NonordinaryRMSplit};
}

ScenarioKind parse_scenario_kind(const std::string& name) {
  for (ScenarioKind k : all_scenario_kinds())
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown scenario: " + name);
}

bool rm_scenario(ScenarioKind kind) { return kind != ScenarioKind::OrdinaryNoRM; }

DieudonneModule scenario_module(const FiniteField& k, const LiftScenario& s) {
  if (s.kind == ScenarioKind::NonordinaryRMSplit) {
    if (!s.trivial_character()) throw std::invalid_argument("nonordinary scenario takes no character");
    return build_nonordinary_module(k);
  }
  return build_ordinary_module(k, s.mu, s.chi);
}

std::optional<RMStructure> scenario_rm(const FiniteField& k, const LiftScenario& s) {
  switch (s.kind) {
    case ScenarioKind::OrdinaryNoRM: return std::nullopt;
    case ScenarioKind::OrdinaryRMSplit: return split_rm_ordinary(k);
    case ScenarioKind::OrdinaryRMInert: return inert_rm(k);
    case ScenarioKind::NonordinaryRMSplit: return split_rm_nonordinary(k);
  }
  return std::nullopt;
}

bool is_valid_honda(const FiniteField& k, const Subspace& L2, const DieudonneModule& M, const RMStructure* rm) {
  if (L2.ambient_dim() != M.dim) return false;
  const Subspace fm = image_F(k, M);
  if (L2.dim() + fm.dim() != M.dim) return false;
  // L2 -> M/F(M) injective, hence an isomorphism by dimension.
  if (sum_dim(k, L2, fm) != M.dim) return false;
  std::vector<FqVector> images;
  for (const auto& v : L2.basis()) images.push_back(M.apply_V(k, v));
  if (rank(k, images) != L2.dim()) return false;
  if (rm != nullptr && !is_rm_stable(k, *rm, L2)) return false;
  return true;
}

void for_each_lift(const FiniteField& k, const LiftScenario& s, const std::function<void(const HondaSystem&)>& visit,
                   Shard shard) {
  if (shard.count == 0 || shard.index >= shard.count) throw std::invalid_argument("bad shard");
  if (s.p != k.p() || s.d != k.degree()) throw std::invalid_argument("scenario and field disagree");
  const std::uint64_t q = k.residue_order();
  if (q > 1000 || ipow(q, 4) > kLiftGuard)
    throw GuardExceeded("p^(4d) exceeds the enumeration guard of 10^7");
  auto module = std::make_shared<const DieudonneModule>(scenario_module(k, s));
  std::shared_ptr<const RMStructure> rm;
  if (auto r = scenario_rm(k, s)) {
    if (!rm_commutes(k, *module, *r)) throw std::invalid_argument("character is not compatible with the RM action");
    rm = std::make_shared<const RMStructure>(*r);
  }
  const std::size_t r = module->dim - rank(k, module->F_matrix);
  std::uint64_t index = 0;
  enumerate_subspaces(k, module->dim, r, [&](const Subspace& cand) {
    if (index++ % shard.count != shard.index) return;
    if (!is_valid_honda(k, cand, *module, rm.get())) return;
    visit(HondaSystem{module, cand, rm, s.kind});
  });
}

std::vector<HondaSystem> enumerate_lifts(const LiftScenario& s) {
  FiniteField k(make_field(s.p, s.d));
  std::vector<HondaSystem> out;
  for_each_lift(k, s, [&](const HondaSystem& h) { out.push_back(h); });
  return out;
}

namespace {

void layout(ScenarioKind kind, std::size_t free[2], std::size_t dep[2]) {
  if (kind == ScenarioKind::NonordinaryRMSplit) {
    free[0] = 1, free[1] = 2, dep[0] = 0, dep[1] = 3;
  } else {
    free[0] = 2, free[1] = 3, dep[0] = 0, dep[1] = 1;
  }
}

bool trivial_etale_character(const FiniteField& k, const HondaSystem& h) {
  if (h.kind == ScenarioKind::NonordinaryRMSplit) return true;
  return k.is_zero(h.M->F_matrix.at(0, 1)) && h.M->F_matrix.at(1, 1) == k.one();
}

}  // namespace

LiftCoordinates lift_coordinates(const FiniteField& k, const HondaSystem& h) {
  if (h.L2.dim() != 2) throw std::invalid_argument("L2 must be two-dimensional");
  LiftCoordinates c{};
  layout(h.kind, c.free, c.dep);
  const auto& b = h.L2.basis();
  // S[m][j]: coordinate free[j] of basis vector m.
  FqElem s00 = b[0][c.free[0]], s01 = b[0][c.free[1]], s10 = b[1][c.free[0]], s11 = b[1][c.free[1]];
  FqElem det = k.sub(k.mul(s00, s11), k.mul(s01, s10));
  if (k.is_zero(det)) throw std::invalid_argument("L2 is not a graph over the free coordinates");
  FqElem inv = k.inverse(det);
  // Rows of S^-1 give the combinations hitting e_free[0], e_free[1].
  FqElem t[2][2] = {{k.mul(s11, inv), k.neg(k.mul(s01, inv))}, {k.neg(k.mul(s10, inv)), k.mul(s00, inv)}};
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t i = 0; i < 2; ++i) {
      std::size_t col = c.dep[i];
      c.coords[i][j] = k.add(k.mul(t[j][0], b[0][col]), k.mul(t[j][1], b[1][col]));
    }
  return c;
}

Subspace subspace_from_coordinates(const FiniteField& k, const LiftCoordinates& c, std::size_t n) {
  std::vector<FqVector> basis;
  for (std::size_t j = 0; j < 2; ++j) {
    FqVector v(n);
    v.at(c.free[j]) = k.one();
    for (std::size_t i = 0; i < 2; ++i) v.at(c.dep[i]) = c.coords[i][j];
    basis.push_back(v);
  }
  return Subspace::from_basis(k, n, basis);
}

bool elevated_coordinate(const FiniteField& k, const HondaSystem& h) {
  if (!trivial_etale_character(k, h))
    throw std::domain_error("coordinate criterion is only available for the trivial character");
  const LiftCoordinates c = lift_coordinates(k, h);
  switch (h.kind) {
    case ScenarioKind::OrdinaryNoRM: {
      // alpha = etale part of the e3 vector, beta = that of the e4 vector; elevated
      // when a single etale line carries both, i.e. alpha_1 = beta_1 = 0 after the
      // basis change attached to one of the p^d + 1 lines.
      FqVector alpha = {c.coords[0][0], c.coords[1][0]};
      FqVector beta = {c.coords[0][1], c.coords[1][1]};
      bool found = false;
      enumerate_subspaces(k, 2, 1, [&](const Subspace& line) {
        found = found || (line.contains(k, alpha) && line.contains(k, beta));
      });
      return found;
    }
    case ScenarioKind::OrdinaryRMSplit:
      return k.is_zero(c.coords[0][0]) || k.is_zero(c.coords[1][1]);
    case ScenarioKind::OrdinaryRMInert:
      return k.is_zero(c.coords[0][0]) && k.is_zero(c.coords[1][0]) && k.is_zero(c.coords[0][1]) &&
             k.is_zero(c.coords[1][1]);
    case ScenarioKind::NonordinaryRMSplit:
      return k.is_zero(c.coords[1][1]);
  }
  return false;
}

SplittingOracle::SplittingOracle(const FiniteField& k, const DieudonneModule& M) : k_(&k) {
  const std::uint64_t q = k.residue_order();
  if (q > kBruteforceGuard) throw GuardExceeded("splitting search needs p^d <= 25");
  const std::size_t n = M.dim;
  // Constant etale lines: spans of nonzero v with F v = v and V v = 0.
  std::vector<Subspace> lines;
  std::uint64_t total = ipow(q, static_cast<unsigned>(n));
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    FqVector v(n);
    std::uint64_t r = idx;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = k.element_at(r % q);
      r /= q;
    }
    if (M.apply_F(k, v) != v || !is_zero(M.apply_V(k, v))) continue;
    Subspace line = Subspace::span(k, n, {v});
    bool dup = false;
    for (const auto& l : lines) dup = dup || l == line;
    if (!dup) lines.push_back(line);
  }
  lines_ = lines.size();
  if (lines.empty()) return;
  enumerate_subspaces(k, n, n - 1, [&](const Subspace& h) {
    if (!is_sub_dieudonne(k, M, h)) return;
    for (const auto& l : lines)
      if (!h.contains(k, l.basis().front())) {
        complements_.push_back(h);
        return;
      }
  });
}

bool SplittingOracle::elevated(const Subspace& L2) const {
  for (const auto& h : complements_)
    if (h.contains(*k_, L2)) return true;
  return false;
}

bool elevated_bruteforce(const FiniteField& k, const HondaSystem& h) {
  return SplittingOracle(k, *h.M).elevated(h.L2);
}

ElevatedCounts count_lifts(const LiftScenario& s, bool with_oracle, Shard shard) {
  FiniteField k(make_field(s.p, s.d));
  const bool trivial = s.trivial_character();
  std::optional<SplittingOracle> oracle;
  if (with_oracle || !trivial) oracle.emplace(k, scenario_module(k, s));
  ElevatedCounts out;
  if (with_oracle) out.mismatches = 0;
  for_each_lift(
      k, s,
      [&](const HondaSystem& h) {
        bool coord = trivial ? elevated_coordinate(k, h) : false;
        bool brute = oracle ? oracle->elevated(h.L2) : false;
        bool elevated = trivial ? coord : brute;
        if (with_oracle && trivial && coord != brute) ++*out.mismatches;
        ++out.total;
        if (elevated) ++out.elevated;
        const LiftCoordinates c = lift_coordinates(k, h);
        bool rational = true;
        for (const auto& row : c.coords)
          for (const auto& e : row) rational = rational && k.in_prime_ring(e);
        if (rational) {
          ++out.fp_total;
          if (elevated) ++out.fp_elevated;
        }
      },
      shard);
  return out;
}

std::uint64_t count_elevated(const LiftScenario& s) { return count_lifts(s, false).elevated; }

std::uint64_t count_elevated_z_p2(const LiftScenario& s) { return count_lifts(s, false).fp_elevated; }

std::uint64_t expected_total(const LiftScenario& s) {
  const std::uint64_t q = ipow(s.p, static_cast<unsigned>(s.d));
  return s.kind == ScenarioKind::OrdinaryNoRM ? q * q * q * q : q * q;
}

std::uint64_t expected_elevated(const LiftScenario& s) {
  const std::uint64_t q = ipow(s.p, static_cast<unsigned>(s.d));
  switch (s.kind) {
    case ScenarioKind::OrdinaryNoRM: return q * q * q + q * q - q;
    case ScenarioKind::OrdinaryRMSplit: return 2 * q - 1;
    case ScenarioKind::OrdinaryRMInert: return 1;
    case ScenarioKind::NonordinaryRMSplit: return q;
  }
  return 0;
}

std::optional<std::uint64_t> expected_elevated_z_p2(const LiftScenario& s) {
  switch (s.kind) {
    case ScenarioKind::OrdinaryNoRM: return std::nullopt;
    case ScenarioKind::OrdinaryRMSplit: return 2 * s.p - 1;
    case ScenarioKind::OrdinaryRMInert: return 1;
    case ScenarioKind::NonordinaryRMSplit: return s.p;
  }
  return std::nullopt;
}

LiftCountRow tabulate(const LiftScenario& s, bool with_oracle) {
  LiftCountRow row;
  row.scenario = to_string(s.kind);
  row.p = s.p;
  row.d = s.d;
  ElevatedCounts c = count_lifts(s, with_oracle);
  row.total = c.total;
  row.elevated = c.elevated;
  row.elevated_fp_rational = c.fp_elevated;
  row.expected_total = expected_total(s);
  row.expected_elevated = expected_elevated(s);
  row.expected_fp_rational = expected_elevated_z_p2(s);
  row.oracle_mismatches = c.mismatches;
  bool ok = row.total == row.expected_total;
  ok = ok && (s.trivial_character() ? row.elevated == row.expected_elevated : row.elevated <= row.expected_elevated);
  if (rm_scenario(s.kind)) {
    ok = ok && row.elevated_fp_rational <= 2 * s.p - 1;
    if (s.trivial_character() && row.expected_fp_rational) ok = ok && row.elevated_fp_rational == *row.expected_fp_rational;
  }
  if (row.oracle_mismatches) ok = ok && *row.oracle_mismatches == 0;
  row.match = ok;
  return row;
}

}  // namespace ltlab
