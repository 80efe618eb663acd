#include "corpus.hpp"

#include <algorithm>

namespace cbd::testing {

namespace {

constexpr std::uint64_t kCorpusSeed = 0x5eed'0000;
constexpr std::size_t kLargeGroupFactor = 100;

ProductSpec constant_product(const Rational& v_l, const Rational& v_h, const Rational& s_p, const Population& pop) {
    return ProductSpec::group_constant(v_l, v_h, s_p, pop.total());
}

RawInstance raw_draw(Rng& rng, NetworkKind kind, bool heterogeneous, std::size_t max_individuals = 50) {
    GeneratorSettings settings;
    settings.network = kind;
    settings.heterogeneous_payoffs = heterogeneous;
    settings.max_individuals = max_individuals;
    return random_raw_instance(rng, settings);
}

}  // namespace

Population two_group_population() {
    return Population{{AspirationGroup{2, Rational{95}}, AspirationGroup{8, Rational{50}}}};
}

Instance instance_a() {
    const Population pop = two_group_population();
    return validate_instance(pop, constant_product(Rational{90}, Rational{100}, make_rational(1, 2), pop),
                             UniformNetwork{make_rational(1, 2)});
}

Instance instance_b() {
    const Population pop = two_group_population();
    return validate_instance(pop, constant_product(Rational{90}, Rational{200}, make_rational(1, 2), pop),
                             UniformNetwork{make_rational(1, 2)});
}

Instance instance_c() {
    const Population pop{{AspirationGroup{10, Rational{90}}}};
    return validate_instance(pop, constant_product(Rational{90}, Rational{100}, make_rational(1, 2), pop),
                             UniformNetwork{make_rational(1, 2)});
}

RawInstance corpus_raw(std::uint64_t index, std::optional<NetworkKind> kind) {
    Rng rng(kCorpusSeed + index);
    return raw_draw(rng, kind ? *kind : static_cast<NetworkKind>(index % 3), true);
}

Instance corpus_instance(std::uint64_t index, std::optional<NetworkKind> kind) {
    RawInstance raw = corpus_raw(index, kind);
    return validate_instance(std::move(raw.population), std::move(raw.product), std::move(raw.network));
}

SpecPair ranked_pair(Rng& rng) {
    RawInstance raw = raw_draw(rng, NetworkKind::kUniform, true);
    SpecPair pair{raw.population, raw.product, raw.product, raw.network};
    bool strict = false;
    while (!strict) {
        if (rng.chance(1, 2)) {
            const Rational bump = make_rational(rng.between(0, 40), 2);
            const bool everyone = rng.chance(1, 2);
            for (auto& v : pair.b.new_payoffs) {
                if (everyone || rng.chance(1, 2)) v += bump;
            }
        }
        const auto sp = Rational{pair.b.product_similarity * 20}.get_num().get_si();
        if (sp < 19 && rng.chance(1, 2)) pair.b.product_similarity = make_rational(rng.between(sp + 1, 19), 20);
        strict = pair.b.product_similarity != pair.a.product_similarity || pair.b.new_payoffs != pair.a.new_payoffs;
    }
    if (rng.chance(1, 2)) std::swap(pair.a, pair.b);
    return pair;
}

SpecPair crossing_pair(Rng& rng) {
    RawInstance raw = raw_draw(rng, NetworkKind::kUniform, false);
    const Rational& h1 = raw.population.groups.front().aspiration;
    const Rational& v_l = raw.product.incumbent_payoff;
    // Two distinct payoffs >= H_1 and two distinct similarities.
    const auto low_k = rng.between(0, 100);
    const auto high_k = rng.between(low_k + 1, 220);
    const auto sp_low = rng.between(1, 18);
    const auto sp_high = rng.between(sp_low + 1, 19);
    const Population& pop = raw.population;
    SpecPair pair{pop,
                  constant_product(v_l, h1 + make_rational(high_k, 2), make_rational(sp_low, 20), pop),
                  constant_product(v_l, h1 + make_rational(low_k, 2), make_rational(sp_high, 20), pop),
                  raw.network};
    if (rng.chance(1, 2)) std::swap(pair.a, pair.b);
    return pair;
}

HomophilyCase homophily_case(Rng& rng) {
    RawInstance raw = raw_draw(rng, NetworkKind::kHomophily, true);
    const Rational s = make_rational(rng.between(1, 19), 20);
    const auto k = Rational{s * 20}.get_num().get_si();
    const std::int64_t max_m = (400 - 1) / k;  // gamma * s < 1
    std::vector<std::int64_t> grid{20};
    while (grid.size() < 5) {
        const auto m = rng.between(1, max_m);
        if (std::find(grid.begin(), grid.end(), m) == grid.end()) grid.push_back(m);
    }
    std::sort(grid.begin(), grid.end());
    HomophilyCase c{raw.population, raw.product, s, {}};
    for (const auto m : grid) c.gammas.push_back(make_rational(m, 20));
    return c;
}

TiePair scaled_ties(Rng& rng) {
    RawInstance raw = raw_draw(rng, NetworkKind::kGroupTies, true);
    const auto& ties = std::get<GroupTiesNetwork>(raw.network);
    const Rational max_tie = *std::max_element(ties.ties.begin(), ties.ties.end());
    Rational z{1};
    if (max_tie > 0) {
        // z = m/20 with 20 <= m <= 20 / max_tie.
        const auto limit = Rational{Rational{20} / max_tie};
        const auto top = Integer{limit.get_num() / limit.get_den()}.get_si();
        z = make_rational(rng.between(20, top), 20);
    }
    GroupTiesNetwork scaled;
    for (const auto& t : ties.ties) scaled.ties.push_back(z * t);
    return TiePair{raw.population, raw.product, ties, scaled};
}

TiePair shifted_ties(Rng& rng) {
    while (true) {
        GeneratorSettings settings;
        settings.network = NetworkKind::kGroupTies;
        settings.heterogeneous_payoffs = false;
        settings.min_groups = 2;
        RawInstance raw = random_raw_instance(rng, settings);
        // Large groups: the shift argument neglects each observer's own tie.
        for (auto& group : raw.population.groups) group.size *= kLargeGroupFactor;
        raw.product = constant_product(raw.product.incumbent_payoff, raw.product.new_payoffs.front(),
                                       raw.product.product_similarity, raw.population);
        const std::size_t g = raw.population.group_count();
        const auto to = static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(g) - 2));
        const auto from = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(to) + 1,
                                                               static_cast<std::int64_t>(g) - 1));
        auto ties = std::get<GroupTiesNetwork>(raw.network);
        // Gain d' = j/20 on `to`; loss d = N_to d' / N_from on `from`.
        const Rational room = Rational{1} - ties.ties[to];
        if (room == 0 || ties.ties[from] == 0) continue;
        const Rational gain = make_rational(rng.between(1, Rational{room * 20}.get_num().get_si()), 20);
        const Rational loss = gain * static_cast<unsigned long>(raw.population.groups[to].size) /
                              static_cast<unsigned long>(raw.population.groups[from].size);
        if (loss > ties.ties[from]) continue;
        GroupTiesNetwork shifted = ties;
        shifted.ties[to] += gain;
        shifted.ties[from] -= loss;
        return TiePair{raw.population, raw.product, ties, shifted};
    }
}

Instance stall_heavy_instance() {
    // Tuned so the ten groups adopt at t = 1, 165, 201, 301, ..., 901 with a
    // frozen market in between.
    const char* aspirations[] = {"100", "6179/64", "6145/64", "3005/32", "2927/32",
                                 "5661/64", "1353/16", "5073/64", "573/8", "3813/64"};
    Population pop;
    for (const char* h : aspirations) pop.groups.push_back(AspirationGroup{1000, parse_rational(h)});
    return validate_instance(pop, constant_product(Rational{99}, Rational{120}, make_rational(1, 2), pop),
                             UniformNetwork{make_rational(1, 10000)});
}

}  // namespace cbd::testing
