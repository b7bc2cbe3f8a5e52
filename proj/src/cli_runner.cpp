#include "ltlab/cli_runner.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "ltlab/averaging.hpp"
#include "ltlab/curve_local.hpp"
#include "ltlab/errors.hpp"
#include "ltlab/heights_counting.hpp"
#include "ltlab/honda_lifts.hpp"
#include "ltlab/primes.hpp"

namespace ltlab {

namespace {

using Json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Outcome {
  std::vector<Json> records;
  Json summary = Json::object();
  std::vector<Json> failures;
};

Json optional_json(const std::optional<std::uint64_t>& v) { return v ? Json(*v) : Json(nullptr); }

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

void check_odd_prime(std::uint64_t p) {
  require(p % 2 == 1, "p must be odd");
  require(is_prime(p), "p must be prime");
}

/// Elliptic-curve subcommands need p > 3.
void check_curve_prime(std::uint64_t p) {
  check_odd_prime(p);
  require(p > 3, "p must be > 3");
}

std::vector<CurveSpec> family_box(std::int64_t A_max, std::int64_t B_max) {
  require(A_max >= 0 && B_max >= 0, "family bounds must be >= 0");
  require((2 * A_max + 1) * (2 * B_max + 1) <= static_cast<std::int64_t>(kFamilyGuard), "family exceeds 10^5 curves");
  std::vector<CurveSpec> out;
  for (std::int64_t a = -A_max; a <= A_max; ++a)
    for (std::int64_t b = -B_max; b <= B_max; ++b) out.push_back(CurveSpec{a, b});
  return out;
}

// verify-lifts

Outcome verify_lifts(const RunConfig& c) {
  std::vector<std::uint64_t> ps = c.p_list.empty() ? std::vector<std::uint64_t>{3, 5, 7} : c.p_list;
  std::vector<ScenarioKind> kinds;
  if (c.scenarios.empty()) {
    for (auto k : all_scenario_kinds())
      if (!(k == ScenarioKind::OrdinaryRMInert && c.d % 2 == 0)) kinds.push_back(k);
  } else {
    for (const auto& name : c.scenarios) {
      ScenarioKind k;
      try {
        k = parse_scenario_kind(name);
      } catch (const std::exception&) {
        throw ConfigError("unknown scenario: " + name);
      }
      require(!(k == ScenarioKind::OrdinaryRMInert && c.d % 2 == 0), "inert RM needs odd d");
      kinds.push_back(k);
    }
  }
  for (auto p : ps) {
    check_odd_prime(p);
    const std::uint64_t q = ipow(p, static_cast<unsigned>(c.d));
    require(q <= 1000 && ipow(q, 4) <= kLiftGuard, "p^(4d) exceeds the enumeration guard of 10^7");
    require(!c.oracle || q <= kBruteforceGuard, "the splitting oracle needs p^d <= 25");
  }
  Outcome o;
  std::uint64_t unit = 0;
  for (auto kind : kinds)
    for (auto p : ps) {
      if (!c.shard.selects(unit++)) continue;
      LiftScenario s{kind, p, c.d};
      const LiftCountRow row = tabulate(s, c.oracle);
      Json r;
      r["scenario"] = row.scenario;
      r["p"] = row.p;
      r["d"] = row.d;
      r["total"] = row.total;
      r["elevated"] = row.elevated;
      r["elevated_fp_rational"] = row.elevated_fp_rational;
      r["paper_expected"] = Json{{"total", row.expected_total},
                                 {"elevated", row.expected_elevated},
                                 {"elevated_fp_rational", optional_json(row.expected_fp_rational)}};
      r["oracle_mismatches"] = optional_json(row.oracle_mismatches);
      r["match"] = row.match;
      if (!row.match) o.failures.push_back(Json{{"unit", r}, {"reason", "count table does not match"}});
      o.records.push_back(std::move(r));
    }
  return o;
}

// rank-check

Outcome rank_check(const RunConfig& c) {
  std::vector<std::uint64_t> ps = c.p_list.empty() ? std::vector<std::uint64_t>{5, 7, 11, 13} : c.p_list;
  for (auto p : ps) {
    check_curve_prime(p);
    require(p <= kOracleMaxPrime, "the division-polynomial oracle needs p <= 31");
    const std::uint64_t q = ipow(p, static_cast<unsigned>(c.d));
    require(q <= kPointGuard / q, "q^2 exceeds the point enumeration guard");
  }
  Outcome o;
  std::uint64_t unit = 0, conclusive = 0, inconclusive = 0, failed = 0;
  for (const auto& E : family_box(c.A_max, c.B_max)) {
    if (E.is_singular()) continue;
    for (auto p : ps) {
      if (!E.good_reduction(p)) continue;
      for (int d0 = 1; d0 <= c.d; ++d0) {
        if (!c.shard.selects(unit++)) continue;
        const auto g1 = point_group(E, p, d0, BaseRing::ResidueField);
        const auto g2 = point_group(E, p, d0, BaseRing::W2);
        const std::uint64_t q = ipow(p, static_cast<unsigned>(d0));
        Json r;
        r["a"] = E.a;
        r["b"] = E.b;
        r["p"] = p;
        r["d0"] = d0;
        r["order_k"] = g1.order;
        r["order_w2"] = g2.order;
        r["order_relation"] = g2.order == q * g1.order;
        r["rank_w2"] = g2.p_rank;
        std::string verdict;
        try {
          const bool K = k_torsion_oracle(E, p, d0);
          r["K_torsion"] = K;
          verdict = g2.p_rank == d0 + (K ? 1 : 0) ? "holds" : "fails";
          ++conclusive;
        } catch (const OracleInconclusive&) {
          r["K_torsion"] = nullptr;
          verdict = "inconclusive";
          ++inconclusive;
        }
        r["verdict"] = verdict;
        if (verdict == "fails" || g2.order != q * g1.order) {
          ++failed;
          o.failures.push_back(Json{{"unit", r}, {"reason", "rank or order relation violated"}});
        }
        o.records.push_back(std::move(r));
      }
    }
  }
  const std::uint64_t n = conclusive + inconclusive;
  const double frac = n ? static_cast<double>(inconclusive) / static_cast<double>(n) : 0.0;
  o.summary = Json{{"configurations", n}, {"conclusive", conclusive}, {"inconclusive", inconclusive},
                   {"inconclusive_fraction", frac}, {"failures", failed}};
  if (frac >= 0.05) o.failures.push_back(Json{{"reason", "inconclusive oracle runs reach 5%"}});
  return o;
}

// ec-scan

Outcome ec_scan(const RunConfig& c) {
  const std::uint64_t x_max = c.x_max ? c.x_max : 50;
  require(std::pow(static_cast<double>(x_max), c.d) <= static_cast<double>(kScanGuard),
          "x_max^d exceeds the scan guard");
  const auto primes = primes_between(2, x_max);
  Outcome o;
  std::uint64_t unit = 0, torsion = 0;
  for (const auto& E : family_box(c.A_max, c.B_max)) {
    if (E.is_singular()) continue;
    for (auto p : primes) {
      if (!c.shard.selects(unit++)) continue;
      Json r;
      r["a"] = E.a;
      r["b"] = E.b;
      r["p"] = p;
      r["d0"] = nullptr;
      r["rank_w2"] = nullptr;
      if (p <= 3) {
        r["verdict"] = "excluded";
        r["flags"] = "small-prime";
      } else if (!E.good_reduction(p)) {
        r["verdict"] = "bad-reduction";
        r["flags"] = "bad";
      } else if (p <= static_cast<std::uint64_t>(c.d) + 1) {
        r["verdict"] = "unknown";
        r["flags"] = "ramified-undecided";
      } else {
        int d0 = 1, rank = 0;
        bool hit = false;
        for (; d0 <= c.d; ++d0) {
          rank = w2_p_rank(E, p, d0);
          if (rank < d0 || rank > d0 + 1)
            o.failures.push_back(Json{{"a", E.a}, {"b", E.b}, {"p", p}, {"d0", d0}, {"reason", "rank out of range"}});
          if (rank >= d0 + 1) {
            hit = true;
            break;
          }
        }
        if (!hit) d0 = c.d;
        torsion += hit;
        r["d0"] = d0;
        r["rank_w2"] = rank;
        r["verdict"] = hit ? "torsion" : "none";
        r["flags"] = "";
      }
      o.records.push_back(std::move(r));
    }
  }
  o.summary = Json{{"torsion_records", torsion}};
  return o;
}

// schanuel

Outcome schanuel(const RunConfig& c) {
  std::vector<std::int64_t> Bs = c.B_list.empty() ? std::vector<std::int64_t>{1} : c.B_list;
  for (auto B : Bs) {
    require(B >= 1, "B must be >= 1");
    require(B <= kStreamGuard, "B exceeds the enumeration guard of 2000");
  }
  for (auto p : c.p_list) {
    check_odd_prime(p);
    require(ipow(p, 6) <= kHistogramGuard, "histogram guard p^6 <= 10^7 exceeded");
  }
  Outcome o;
  std::uint64_t unit = 0;
  for (auto B : Bs) {
    if (c.shard.selects(unit++)) {
      const auto s = schanuel_ratio(B);
      Json r{{"kind", "count"},  {"B", B},  {"count", s.count}, {"ratio", s.ratio}, {"residual", s.residual},
             {"normalized_ratio", s.normalized_ratio}, {"normalized_residual", s.normalized_residual}};
      if (B <= 150 && count_sb_enumerated(B) != s.count)
        o.failures.push_back(Json{{"unit", r}, {"reason", "Moebius count disagrees with enumeration"}});
      o.records.push_back(std::move(r));
    }
    for (auto p : c.p_list)
      for (int level : {1, 2}) {
        if (!c.shard.selects(unit++)) continue;
        const auto h = fiber_counts(B, p, level);
        Json r{{"kind", "fiber"},
               {"B", B},
               {"p", p},
               {"level", level},
               {"bins_total", h.bins_total},
               {"bins_hit", h.counts.size()},
               {"max_count", h.max_count()},
               {"min_count", h.min_count()},
               {"envelope_constant", h.envelope_constant()},
               {"class_envelope_constant", h.class_envelope_constant()}};
        if (h.total() != count_sb(B))
          o.failures.push_back(Json{{"unit", r}, {"reason", "fibers do not partition S_B"}});
        o.records.push_back(std::move(r));
      }
  }
  return o;
}

// sums

Outcome sums(const RunConfig& c) {
  const std::uint64_t x_max = c.x_max ? c.x_max : 1'000'000;
  require(x_max >= 3, "x_max must be >= 3");
  require(x_max <= kSumGuard, "x_max exceeds 10^6");
  const SumLedger L = lemma56_sums(x_max, c.d, std::min<std::uint64_t>(1000, x_max));
  Outcome o;
  for (std::uint64_t i = 0; i < L.ladder.size(); ++i) {
    if (!c.shard.selects(i)) continue;
    const auto& r = L.ladder[i];
    o.records.push_back(Json{{"x", r.x}, {"S_a", r.S_a}, {"S_b", r.S_b}, {"S_c", r.S_c}, {"S_d", r.S_d}});
  }
  const bool ok_a = L.slope_a <= 4.15, ok_b = L.slope_b <= 2.15, ok_c = L.slope_c <= 1.15;
  const bool has_tail = L.ladder.size() >= 2 && L.ladder[L.ladder.size() - 2].x >= L.tail_from;
  const bool ok_d = !has_tail || L.tail_increment < 1e-3;
  o.summary = Json{{"mode", L.mode},
                   {"d", L.d},
                   {"slopes", Json{{"a", L.slope_a}, {"b", L.slope_b}, {"c", L.slope_c}, {"d", L.slope_d}}},
                   {"tail_increment", has_tail ? Json(L.tail_increment) : Json(nullptr)},
                   {"verdicts", Json{{"a", ok_a}, {"b", ok_b}, {"c", ok_c}, {"d", ok_d}}}};
  if (!(ok_a && ok_b && ok_c && ok_d)) o.failures.push_back(Json{{"reason", "growth exponent exceeded"}});
  return o;
}

// average

Json curve_record(const CurveCount& k) {
  return Json{{"a", k.a},           {"b", k.b},
              {"singular", false},  {"pi_good", k.pi_good},
              {"bad", k.bad},       {"unknown_ramified", k.unknown_ramified},
              {"torsion_primes", k.torsion_primes}};
}

Outcome average(const RunConfig& c) {
  Outcome o;
  if (c.mode == "assembly") {
    std::vector<std::uint64_t> xs = c.x_list.empty() ? std::vector<std::uint64_t>{25, 50, 100, 200} : c.x_list;
    for (auto x : xs) {
      require(x >= 3 && x <= kSumGuard, "x must lie in [3, 10^6]");
      const std::int64_t B = c.frozen_B ? *c.frozen_B : height_schedule(x, c.eps);
      require(B >= 1 && B <= kStreamGuard, "B exceeds the enumeration guard of 2000");
    }
    const AssemblyLadder L = assembly_ladder(xs, c.d, c.eps, c.frozen_B);
    for (std::uint64_t i = 0; i < L.rows.size(); ++i) {
      if (!c.shard.selects(i)) continue;
      const auto& r = L.rows[i];
      o.records.push_back(Json{{"x", r.x},   {"B", r.B},   {"count_sb", r.count_sb}, {"T1", r.T1},
                               {"T2", r.T2}, {"T3", r.T3}, {"T4", r.T4},             {"total", r.total},
                               {"boundary_flag", r.boundary_flag}});
    }
    o.summary = Json{{"mode", "bound"},
                     {"eps", c.eps},
                     {"frozen_B", c.frozen_B ? Json(*c.frozen_B) : Json(nullptr)},
                     {"spread", L.spread},
                     {"bounded", L.bounded}};
    if (!c.frozen_B && !L.bounded) o.failures.push_back(Json{{"reason", "assembly total not bounded on the ladder"}});
    return o;
  }
  require(c.mode == "family", "mode must be family or assembly");
  const std::uint64_t x_max = c.x_max ? c.x_max : 25;
  require(std::pow(static_cast<double>(x_max), c.d) <= static_cast<double>(kScanGuard),
          "x_max^d exceeds the scan guard");
  const auto box = family_box(c.A_max, c.B_max);
  std::vector<CurveSpec> selected;
  for (std::uint64_t i = 0; i < box.size(); ++i)
    if (c.shard.selects(i)) selected.push_back(box[i]);
  std::vector<CurveSpec> nonsingular;
  for (const auto& E : selected)
    if (!E.is_singular()) nonsingular.push_back(E);
  std::map<std::pair<std::int64_t, std::int64_t>, CurveCount> counts;
  Json summary{{"schedule_exponent", 7.0 / 4.0}, {"x_max", x_max}, {"d", c.d}};
  if (!nonsingular.empty()) {
    const AverageReport R = ec_family_average(nonsingular, x_max, c.d);
    for (const auto& k : R.curves) counts[{k.a, k.b}] = k;
    summary["family_size"] = R.family_size;
    summary["mean"] = R.mean;
    summary["total_good"] = R.total_good;
    summary["total_bad"] = R.total_bad;
    summary["total_unknown"] = R.total_unknown;
    summary["spot_checked"] = R.spot_checked;
    summary["spot_failures"] = R.spot_failures;
    summary["spot_inconclusive"] = R.spot_inconclusive;
    if (R.spot_failures) o.failures.push_back(Json{{"reason", "spot check disagrees with rank_relation_check"}});
  } else {
    summary["family_size"] = 0;
    summary["mean"] = nullptr;
  }
  summary["singular_skipped"] = selected.size() - nonsingular.size();
  for (const auto& E : selected) {
    if (E.is_singular()) {
      o.records.push_back(Json{{"a", E.a},
                               {"b", E.b},
                               {"singular", true},
                               {"pi_good", nullptr},
                               {"bad", nullptr},
                               {"unknown_ramified", nullptr},
                               {"torsion_primes", nullptr}});
    } else {
      o.records.push_back(curve_record(counts.at({E.a, E.b})));
    }
  }
  o.summary = std::move(summary);
  return o;
}

// Emission

std::string scalar_text(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + scalar_text(v[i]);
    return s;
  }
  return v.dump();
}

void flatten(const Json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  for (auto it = v.begin(); it != v.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) flatten(*it, key, out);
    else out.emplace_back(key, scalar_text(*it));
  }
}

void write_csv(const std::vector<Json>& records, std::ostream& os) {
  std::vector<std::string> header;
  std::vector<std::map<std::string, std::string>> rows;
  for (const auto& r : records) {
    std::vector<std::pair<std::string, std::string>> cells;
    flatten(r, "", cells);
    std::map<std::string, std::string> row;
    for (auto& [k, v] : cells) {
      if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
      row[k] = v;
    }
    rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << csv_field(header[i]);
  os << "\r\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      auto it = row.find(header[i]);
      os << (i ? "," : "") << csv_field(it == row.end() ? "" : it->second);
    }
    os << "\r\n";
  }
}

Json config_json(const RunConfig& c) {
  Json j;
  j["p"] = c.p_list;
  j["d"] = c.d;
  j["B"] = c.B_list;
  j["x_max"] = c.x_max;
  j["x"] = c.x_list;
  j["a_max"] = c.A_max;
  j["b_max"] = c.B_max;
  j["scenario"] = c.scenarios;
  j["oracle"] = c.oracle;
  j["mode"] = c.mode;
  j["eps"] = c.eps;
  j["frozen_B"] = c.frozen_B ? Json(*c.frozen_B) : Json(nullptr);
  return j;
}

int config_error(std::ostream& err, const std::string& msg) {
  err << Json{{"schema", 1}, {"error", msg}}.dump() << "\n";
  return kExitConfig;
}

}  // namespace

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

ShardSpec parse_shard(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) throw std::invalid_argument("shard must look like i/n");
  std::size_t used = 0;
  const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
  ShardSpec s;
  try {
    s.index = std::stoull(a, &used);
    if (used != a.size()) throw std::invalid_argument("");
    s.count = std::stoull(b, &used);
    if (used != b.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("shard must look like i/n");
  }
  if (s.count == 0 || s.index >= s.count) throw std::invalid_argument("shard index must satisfy 0 <= i < n");
  return s;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  static const std::map<std::string, std::function<Outcome(const RunConfig&)>> table = {
      {"verify-lifts", verify_lifts}, {"rank-check", rank_check}, {"ec-scan", ec_scan},
      {"schanuel", schanuel},         {"sums", sums},             {"average", average}};
  auto it = table.find(config.subcommand);
  if (it == table.end()) return config_error(err, "unknown subcommand: " + config.subcommand);
  if (config.d < 1) return config_error(err, "d must be >= 1");
  if (config.shard.count == 0 || config.shard.index >= config.shard.count)
    return config_error(err, "shard index must satisfy 0 <= i < n");
  Outcome o;
  try {
    o = it->second(config);
  } catch (const ConfigError& e) {
    return config_error(err, e.what());
  } catch (const GuardExceeded& e) {
    return config_error(err, e.what());
  } catch (const std::invalid_argument& e) {
    return config_error(err, e.what());
  } catch (const std::domain_error& e) {
    return config_error(err, e.what());
  } catch (const std::exception& e) {
    o.failures.push_back(Json{{"reason", std::string("internal error: ") + e.what()}});
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (config.output) {
    file.open(*config.output, std::ios::binary);
    if (!file) return config_error(err, "cannot open output file " + *config.output);
    sink = &file;
  }
  const bool ok = o.failures.empty();
  if (config.format == OutputFormat::Csv) {
    write_csv(o.records, *sink);
  } else {
    Json doc;
    doc["schema"] = 1;
    doc["subcommand"] = config.subcommand;
    doc["config"] = config_json(config);
    doc["shard"] = std::to_string(config.shard.index) + "/" + std::to_string(config.shard.count);
    doc["records"] = o.records;
    doc["summary"] = o.summary;
    doc["failures"] = o.failures;
    doc["ok"] = ok;
    *sink << doc.dump(2) << "\n";
  }
  for (const auto& f : o.failures) err << Json{{"schema", 1}, {"failure", f}}.dump() << "\n";
  return ok ? kExitOk : kExitInvariant;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local torsion experiments"};
  app.require_subcommand(1);
  RunConfig c;
  std::string format = "json", shard = "0/1";
  std::optional<std::string> output;
  std::optional<std::int64_t> frozen;
  for (const auto& name : kSubcommands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--p", c.p_list, "primes")->delimiter(',');
    sub->add_option("--d", c.d, "extension degree");
    sub->add_option("--B", c.B_list, "heights")->delimiter(',');
    sub->add_option("--x-max", c.x_max, "prime bound");
    sub->add_option("--x", c.x_list, "ladder of prime bounds")->delimiter(',');
    sub->add_option("--a-max", c.A_max, "|a| bound of the curve family");
    sub->add_option("--b-max", c.B_max, "|b| bound of the curve family");
    sub->add_option("--scenario", c.scenarios, "lift scenarios")->delimiter(',');
    sub->add_flag("--oracle", c.oracle, "cross-check with the splitting oracle");
    sub->add_option("--mode", c.mode, "family or assembly");
    sub->add_option("--eps", c.eps, "height schedule exponent offset");
    sub->add_option("--frozen-B", frozen, "fixed height for the assembly ladder");
    sub->add_option("--out", output, "output path");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--shard", shard, "i/n");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  c.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  c.output = output;
  c.frozen_B = frozen;
  try {
    c.shard = parse_shard(shard);
  } catch (const std::invalid_argument& e) {
    return config_error(err, e.what());
  }
  return run(c, out, err);
}

}  // namespace ltlab
