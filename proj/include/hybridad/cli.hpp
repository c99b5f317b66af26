#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hybridad/errors.hpp"

namespace hybridad::cli {

// Exit codes shared by every command:
//   0 success, 2 parse error, 3 validation error, 4 I/O error.
// The binary itself returns 1 for command-line usage errors.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitIo = 4;

int exit_code_for(Errc code);

struct GenerateOptions {
    std::string out_dir;
    std::string spec_path; // empty: built-in default cycle
    int cycles = 200;
    std::uint64_t seed = 0;
};

struct TrainOptions {
    std::string data_dir;
    std::string model_path;
    std::string config_path; // empty: defaults
    std::optional<double> window_seconds;
    std::optional<double> overlap;
    std::optional<std::vector<int>> layers;
    std::optional<int> cd_steps;
    std::optional<int> epochs;
    std::optional<double> learning_rate;
    std::optional<std::uint64_t> seed;
};

struct DetectOptions {
    std::string model_path;
    std::string data_dir;
    std::string report_path;
    double timing_tolerance = 0.0;
};

struct InspectOptions {
    std::string model_path;
    std::string dot_path; // empty: no DOT output
};

// Each command prints its human-readable output to stdout, errors to
// stderr, and returns one of the exit codes above.
int cmd_generate(const GenerateOptions& options);
int cmd_train(const TrainOptions& options);
int cmd_detect(const DetectOptions& options);
int cmd_inspect(const InspectOptions& options);

} // namespace hybridad::cli
