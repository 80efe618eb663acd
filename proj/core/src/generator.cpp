#include "cbdiff/generator.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace cbd {

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below needs a positive bound");
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("Rng::between with empty range");
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

NetworkSpec random_network(Rng& rng, NetworkKind kind, const Population& population) {
    switch (kind) {
        case NetworkKind::kUniform:
            return UniformNetwork{make_rational(rng.between(0, 20), 20)};
        case NetworkKind::kHomophily: {
            const std::int64_t k = rng.between(1, 20);
            // gamma * s < 1  <=>  m * k < 400
            const std::int64_t m = rng.between(1, (400 - 1) / k);
            return HomophilyNetwork{make_rational(k, 20), make_rational(m, 20)};
        }
        case NetworkKind::kGroupTies: {
            GroupTiesNetwork ties;
            for (std::size_t g = 0; g < population.group_count(); ++g) {
                ties.ties.push_back(make_rational(rng.between(0, 20), 20));
            }
            return ties;
        }
    }
    throw std::invalid_argument("unknown network kind");
}

RawInstance random_raw_instance(Rng& rng, const GeneratorSettings& settings) {
    if (settings.min_groups == 0 || settings.min_groups > settings.max_groups) {
        throw std::invalid_argument("invalid group count range");
    }
    const NetworkKind kind = settings.network ? *settings.network
                                              : static_cast<NetworkKind>(rng.below(3));
    const std::size_t groups = static_cast<std::size_t>(rng.between(
        static_cast<std::int64_t>(settings.min_groups),
        static_cast<std::int64_t>(std::min(settings.max_groups, std::min<std::size_t>(settings.max_individuals, 200)))));
    const std::size_t per_group = settings.max_individuals / groups;

    // Distinct aspirations on the half-unit grid, highest first.
    std::set<std::int64_t, std::greater<>> halves;
    while (halves.size() < groups) halves.insert(rng.between(0, 200));

    RawInstance raw;
    const std::size_t equal_size = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(per_group)));
    for (const std::int64_t h : halves) {
        const std::size_t size = kind == NetworkKind::kHomophily
                                     ? equal_size
                                     : static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(per_group)));
        raw.population.groups.push_back(AspirationGroup{size, make_rational(h, 2)});
    }

    const auto& g = raw.population.groups;
    const Rational& h1 = g.front().aspiration;
    Rational v_l;
    if (rng.chance(1, 8)) {
        v_l = h1;
    } else if (groups >= 2) {
        // H_2 < v_L <= H_1 on the quarter grid.
        const Rational gap = (h1 - g[1].aspiration) * 4;
        v_l = g[1].aspiration + make_rational(rng.between(1, gap.get_num().get_si()), 4);
    } else {
        v_l = h1 - make_rational(rng.between(0, 200), 4);
    }

    const std::size_t total = raw.population.total();
    std::vector<Rational> payoffs;
    const Rational base = h1 + make_rational(rng.between(0, 200), 2);
    const bool varied = settings.heterogeneous_payoffs && rng.chance(1, 4);
    for (std::size_t i = 0; i < total; ++i) {
        payoffs.push_back(varied ? Rational{h1 + make_rational(rng.between(0, 200), 2)} : base);
    }
    raw.product = ProductSpec{v_l, std::move(payoffs), make_rational(rng.between(1, 19), 20)};
    raw.network = random_network(rng, kind, raw.population);
    return raw;
}

Instance random_instance(const GeneratorSettings& settings) {
    Rng rng(settings.seed);
    RawInstance raw = random_raw_instance(rng, settings);
    return validate_instance(std::move(raw.population), std::move(raw.product), std::move(raw.network));
}

}  // namespace cbd
