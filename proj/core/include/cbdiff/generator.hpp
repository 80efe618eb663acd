#pragma once

#include "cbdiff/model.hpp"

#include <cstdint>
#include <optional>
#include <random>

namespace cbd {

/// Seeded source with platform-independent integer draws (the standard
/// distributions are not portable across library implementations).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform on [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi);
    /// True with probability num/den.
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

private:
    std::mt19937_64 engine_;
};

enum class NetworkKind { kUniform, kHomophily, kGroupTies };

struct GeneratorSettings {
    std::uint64_t seed = 1;
    std::size_t min_groups = 1;
    std::size_t max_groups = 6;
    std::size_t max_individuals = 50;
    /// Drawn at random when unset.
    std::optional<NetworkKind> network;
    /// Allow per-individual new-product payoffs.
    bool heterogeneous_payoffs = true;
};

struct RawInstance {
    Population population;
    ProductSpec product;
    NetworkSpec network;
};

/// Aspirations on a 0.5 grid in [0, 100], v_L on a 0.25 grid inside its
/// admissible range, similarities on a 0.05 grid. Always valid.
RawInstance random_raw_instance(Rng& rng, const GeneratorSettings& settings);

Instance random_instance(const GeneratorSettings& settings);

/// Draws a network of the given kind for `population`.
NetworkSpec random_network(Rng& rng, NetworkKind kind, const Population& population);

}  // namespace cbd
