#pragma once

// Subcommand dispatch for the experiment CLI: config validation, sharding,
// JSON and CSV emission, exit codes.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ltlab {

enum class OutputFormat { Json, Csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitConfig = 2;

struct ShardSpec {
  std::uint64_t index = 0;
  std::uint64_t count = 1;
  bool selects(std::uint64_t unit) const { return unit % count == index; }
};

/// Parses "i/n" with 0 <= i < n.
ShardSpec parse_shard(const std::string& text);

struct RunConfig {
  std::string subcommand;
  std::vector<std::uint64_t> p_list;  // empty: subcommand default
  int d = 1;
  std::vector<std::int64_t> B_list;   // schanuel heights
  std::uint64_t x_max = 0;            // 0: subcommand default
  std::vector<std::uint64_t> x_list;  // assembly ladder
  std::int64_t A_max = 2, B_max = 2;  // curve family box
  std::vector<std::string> scenarios; // verify-lifts; empty: all
  bool oracle = false;
  std::string mode = "family";        // average: family | assembly
  double eps = 0.1;
  std::optional<std::int64_t> frozen_B;
  std::optional<std::string> output;
  OutputFormat format = OutputFormat::Json;
  ShardSpec shard;
};

inline const std::vector<std::string> kSubcommands = {"verify-lifts", "rank-check", "ec-scan",
                                                      "schanuel",     "sums",       "average"};

/// Runs one subcommand. The document goes to config.output or to out;
/// diagnostics and failure records go to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and runs.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

/// RFC-4180 field quoting.
std::string csv_field(const std::string& s);

}  // namespace ltlab
