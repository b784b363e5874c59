#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pwla::cli {

enum class Command { Classify, Halfmap, Displacement, Portrait, Sweep };
enum class Format { Csv, Json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitMalformed = 1;
inline constexpr int kExitPrecondition = 2;

/// Prefix of the environment variables mirroring the flags (PWLA_INPUT, PWLA_TOL, ...).
inline constexpr const char* kEnvPrefix = "PWLA_";

struct RunConfig {
    std::string input;
    Command command = Command::Classify;
    /// Named tolerance overrides: classify, annulus, zero, bisection, residual.
    std::map<std::string, double> tolerances;
    Format format = Format::Json;
    int grid = 64;
    /// Unset means the command default (10 for scans, 0.1 for sweeps).
    std::optional<double> span;
    std::uint64_t seed = 0;
    /// Starting ordinates for the portrait command.
    std::vector<double> y0;
    int passages = 4;
};

/// Executes one command. Returns 0 on success (any verdict), 1 on malformed
/// input, 2 when a precondition of the command fails.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses flags and environment overrides, then runs.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace pwla::cli
