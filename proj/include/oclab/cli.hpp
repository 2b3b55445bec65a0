#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace oclab {

// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitNumeric = 3;

inline constexpr std::uint64_t kDefaultSeed = 42;

// Everything a run depends on. Rendered as key=value lines (flag names as
// keys); the same format is accepted by --config.
struct RunConfig {
  std::string subcommand;
  std::string symbol;
  std::string psi;
  std::string h_grid;
  std::size_t samples = 0;  // 0: the subcommand's default
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  std::map<std::string, std::string> extra;  // remaining flags

  bool operator==(const RunConfig&) const = default;
};

std::string render(const RunConfig& cfg);
RunConfig parse_run_config(std::string_view text);

// "a:b:step", "log:a:b:count" or a comma list.
std::vector<double> parse_h_grid(std::string_view spec);

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace oclab
