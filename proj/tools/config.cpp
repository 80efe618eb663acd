#include "config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

namespace cbd::cli {

namespace {

[[noreturn]] void fail(const std::string& source, const std::string& message) {
    throw ConfigError(source + ": " + message);
}

YAML::Node require(const YAML::Node& parent, const char* key, const std::string& path, const std::string& source) {
    const YAML::Node node = parent[key];
    if (!node) fail(source, "missing field '" + path + key + "'");
    return node;
}

Rational rational_of(const YAML::Node& node, const std::string& field, const std::string& source) {
    if (!node.IsScalar()) fail(source, "'" + field + "' must be a number");
    try {
        return parse_rational(node.Scalar());
    } catch (const std::invalid_argument&) {
        fail(source, "'" + field + "' is not an exact decimal or fraction: " + node.Scalar());
    }
}

std::uint64_t unsigned_of(const YAML::Node& node, const std::string& field, const std::string& source) {
    const Rational value = rational_of(node, field, source);
    if (value.get_den() != 1 || value < 0 || !value.get_num().fits_ulong_p()) {
        fail(source, "'" + field + "' must be a non-negative integer");
    }
    return value.get_num().get_ui();
}

bool bool_of(const YAML::Node& node, const std::string& field, const std::string& source) {
    try {
        return node.as<bool>();
    } catch (const YAML::Exception&) {
        fail(source, "'" + field + "' must be true or false");
    }
}

std::vector<Rational> rational_list(const YAML::Node& node, const std::string& field, const std::string& source) {
    if (!node.IsSequence()) fail(source, "'" + field + "' must be a list");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
        out.push_back(rational_of(node[i], field + "[" + std::to_string(i) + "]", source));
    }
    return out;
}

NetworkKind network_kind(const std::string& name, const std::string& source) {
    if (name == "uniform") return NetworkKind::kUniform;
    if (name == "homophily") return NetworkKind::kHomophily;
    if (name == "group_ties") return NetworkKind::kGroupTies;
    fail(source, "unknown network type '" + name + "' (uniform, homophily, group_ties)");
}

Population parse_population(const YAML::Node& root, const std::string& source) {
    const YAML::Node groups = require(require(root, "population", "", source), "groups", "population.", source);
    if (!groups.IsSequence() || groups.size() == 0) fail(source, "'population.groups' must be a non-empty list");
    Population population;
    for (std::size_t k = 0; k < groups.size(); ++k) {
        const std::string path = "population.groups[" + std::to_string(k) + "].";
        const auto size = unsigned_of(require(groups[k], "size", path, source), path + "size", source);
        const Rational h = rational_of(require(groups[k], "aspiration", path, source), path + "aspiration", source);
        population.groups.push_back(AspirationGroup{static_cast<std::size_t>(size), h});
    }
    return population;
}

ProductSpec parse_product(const YAML::Node& root, const Population& population, const std::string& source) {
    const YAML::Node node = require(root, "product", "", source);
    const Rational v_l = rational_of(require(node, "v_L", "product.", source), "product.v_L", source);
    const Rational s_p = rational_of(require(node, "s_p", "product.", source), "product.s_p", source);

    const int forms = (node["v_H"] ? 1 : 0) + (node["v_H_groups"] ? 1 : 0) + (node["v_H_individuals"] ? 1 : 0);
    if (forms == 0) fail(source, "missing field 'product.v_H' (or v_H_groups / v_H_individuals)");
    if (forms > 1) fail(source, "give exactly one of product.v_H, v_H_groups, v_H_individuals");

    if (node["v_H"]) {
        return ProductSpec::group_constant(v_l, rational_of(node["v_H"], "product.v_H", source), s_p,
                                           population.total());
    }
    if (node["v_H_groups"]) {
        auto payoffs = rational_list(node["v_H_groups"], "product.v_H_groups", source);
        if (payoffs.size() != population.group_count()) fail(source, "'product.v_H_groups' needs one value per group");
        return ProductSpec::per_group(population, v_l, payoffs, s_p);
    }
    auto payoffs = rational_list(node["v_H_individuals"], "product.v_H_individuals", source);
    if (payoffs.size() != population.total()) fail(source, "'product.v_H_individuals' needs one value per individual");
    return ProductSpec{v_l, std::move(payoffs), s_p};
}

NetworkSpec parse_network(const YAML::Node& root, const std::string& source) {
    const YAML::Node node = require(root, "network", "", source);
    const YAML::Node type = require(node, "type", "network.", source);
    switch (network_kind(type.Scalar(), source)) {
        case NetworkKind::kUniform:
            return UniformNetwork{rational_of(require(node, "s", "network.", source), "network.s", source)};
        case NetworkKind::kHomophily:
            return HomophilyNetwork{rational_of(require(node, "s", "network.", source), "network.s", source),
                                    rational_of(require(node, "gamma", "network.", source), "network.gamma", source)};
        case NetworkKind::kGroupTies:
            return GroupTiesNetwork{rational_list(require(node, "ties", "network.", source), "network.ties", source)};
    }
    fail(source, "unreachable network type");
}

GeneratorSettings parse_generator(const YAML::Node& node, const std::string& source) {
    GeneratorSettings g;
    if (node["seed"]) g.seed = unsigned_of(node["seed"], "generator.seed", source);
    if (const YAML::Node groups = node["groups"]) {
        if (!groups.IsSequence() || groups.size() != 2) fail(source, "'generator.groups' must be [min, max]");
        g.min_groups = unsigned_of(groups[0], "generator.groups[0]", source);
        g.max_groups = unsigned_of(groups[1], "generator.groups[1]", source);
        if (g.min_groups == 0 || g.min_groups > g.max_groups) fail(source, "'generator.groups' range is empty");
    }
    if (node["max_individuals"]) {
        g.max_individuals = unsigned_of(node["max_individuals"], "generator.max_individuals", source);
        if (g.max_individuals < g.max_groups) fail(source, "'generator.max_individuals' below the group count");
    }
    if (node["network"]) g.network = network_kind(node["network"].Scalar(), source);
    if (node["heterogeneous_payoffs"]) {
        g.heterogeneous_payoffs = bool_of(node["heterogeneous_payoffs"], "generator.heterogeneous_payoffs", source);
    }
    return g;
}

}  // namespace

Instance RunConfig::build() const {
    if (instance) return validate_instance(instance->population, instance->product, instance->network);
    return random_instance(*generator);
}

RunConfig parse_config(const std::string& text, const std::string& source) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        fail(source, std::string("YAML parse error: ") + e.what());
    }
    if (!root.IsMap()) fail(source, "top level must be a mapping");

    RunConfig config;
    const bool explicit_instance = root["population"] || root["product"] || root["network"];
    if (explicit_instance && root["generator"]) {
        fail(source, "give either an explicit instance or 'generator', not both");
    }
    if (root["generator"]) {
        config.generator = parse_generator(root["generator"], source);
    } else {
        Population population = parse_population(root, source);
        ProductSpec product = parse_product(root, population, source);
        NetworkSpec network = parse_network(root, source);
        config.instance = RawInstance{std::move(population), std::move(product), std::move(network)};
    }

    if (const YAML::Node run = root["run"]) {
        if (run["horizon"]) config.run.horizon = unsigned_of(run["horizon"], "run.horizon", source);
        if (run["fast_forward"]) config.run.fast_forward = bool_of(run["fast_forward"], "run.fast_forward", source);
        if (const YAML::Node mode = run["mode"]) {
            if (mode.Scalar() == "sum") {
                config.run.mode = EvaluationMode::kSum;
            } else if (mode.Scalar() == "average") {
                config.run.mode = EvaluationMode::kAverage;
            } else {
                fail(source, "'run.mode' must be sum or average");
            }
        }
    }
    if (const YAML::Node sweep = root["sweep"]) {
        SweepSpec spec;
        spec.axis = require(sweep, "axis", "sweep.", source).Scalar();
        spec.values = rational_list(require(sweep, "values", "sweep.", source), "sweep.values", source);
        if (spec.values.empty()) fail(source, "'sweep.values' is empty");
        config.sweep = std::move(spec);
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path) { return parse_config(read_file(path), path.string()); }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out.flush()) throw IoError("write failed for " + path.string());
}

}  // namespace cbd::cli
