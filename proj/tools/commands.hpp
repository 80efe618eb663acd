#pragma once

#include "cbdiff/market.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace cbd::cli {

struct CommandOptions {
    std::vector<std::filesystem::path> configs;
    std::optional<Period> horizon;
    bool no_fast_forward = false;
    std::optional<EvaluationMode> mode;
    std::filesystem::path out = ".";
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
};

/// Each returns the process exit code: 0 ok, 1 invalid input, 2 I/O failure.
int run_command(const CommandOptions& options, std::ostream& out, std::ostream& err);
int compare_command(const CommandOptions& options, std::ostream& out, std::ostream& err);
int sweep_command(const CommandOptions& options, std::ostream& out, std::ostream& err);
int validate_command(const CommandOptions& options, std::ostream& out, std::ostream& err);

}  // namespace cbd::cli
