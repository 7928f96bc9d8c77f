#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace dcd {

enum class ExperimentKind { kSolve, kProperties, kGnCheck, kPeriodicDecay, kSandwich, kExample1, kExtremal };

std::optional<ExperimentKind> parse_kind(std::string_view name);
std::string_view kind_name(ExperimentKind kind);

// Exit statuses of run_experiment.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitInternal = 3;

struct RunOptions {
  ExperimentKind kind = ExperimentKind::kSolve;
  std::filesystem::path config;
  std::filesystem::path out = "out";
  std::optional<std::uint64_t> seed;  // overrides the config seed
  bool quiet = false;
};

// Reads the JSON config (schema 1, unknown keys rejected), runs the
// experiment, writes its artifacts and manifest.json into options.out and
// returns one of the exit statuses above. Progress goes to `log` unless
// quiet; errors go to `err`.
int run_experiment(const RunOptions& options, std::ostream& log, std::ostream& err);

}  // namespace dcd
