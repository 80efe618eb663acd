#pragma once

#include "cbdiff/dynamics.hpp"
#include "cbdiff/generator.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cbd::cli {

/// Malformed or inconsistent configuration (exit code 1).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File could not be read or written (exit code 2).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SweepSpec {
    std::string axis;
    std::vector<Rational> values;
};

struct RunConfig {
    /// Explicit instance; empty when the generator is used.
    std::optional<RawInstance> instance;
    std::optional<GeneratorSettings> generator;
    SimulationOptions run;
    std::optional<SweepSpec> sweep;

    /// The validated instance, generated on demand.
    [[nodiscard]] Instance build() const;
};

/// Parses YAML text. `source` names the input in diagnostics.
RunConfig parse_config(const std::string& text, const std::string& source = "config");
RunConfig load_config(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace cbd::cli
