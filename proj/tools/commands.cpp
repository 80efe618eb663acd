#include "commands.hpp"

#include "config.hpp"

#include "cbdiff/comparative.hpp"
#include "cbdiff/errors.hpp"
#include "cbdiff/export.hpp"

#include <atomic>
#include <exception>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

namespace cbd::cli {

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ModelInconsistencyError& e) {
        err << "model inconsistency: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

RunConfig load(const CommandOptions& options, std::size_t index) {
    RunConfig config;
    if (index < options.configs.size()) {
        config = load_config(options.configs[index]);
    } else if (options.seed) {
        config.generator = GeneratorSettings{};
    } else {
        throw ConfigError("--config is required");
    }
    if (options.seed) {
        if (!config.generator) throw ConfigError("--seed applies only to generator configs");
        config.generator->seed = *options.seed;
    }
    if (options.horizon) config.run.horizon = *options.horizon;
    if (options.no_fast_forward) config.run.fast_forward = false;
    if (options.mode) config.run.mode = *options.mode;
    if (config.run.horizon == 0) throw ConfigError("horizon must be at least 1");
    return config;
}

RawInstance raw_instance(const RunConfig& config) {
    if (config.instance) return *config.instance;
    Rng rng(config.generator->seed);
    return random_raw_instance(rng, *config.generator);
}

std::optional<ThresholdSequence> thresholds_if_defined(const DiffusionTrace& trace, const Instance& instance) {
    try {
        return threshold_sequence(trace, instance);
    } catch (const ThresholdsUndefinedError&) {
        return std::nullopt;
    }
}

std::string trace_csv(const DiffusionTrace& trace, const std::optional<ThresholdSequence>& thresholds) {
    std::ostringstream csv;
    write_trace_csv(csv, trace, thresholds ? &*thresholds : nullptr);
    return csv.str();
}

bool same_population(const Population& a, const Population& b) {
    if (a.group_count() != b.group_count()) return false;
    for (std::size_t k = 0; k < a.group_count(); ++k) {
        if (a.groups[k].size != b.groups[k].size || a.groups[k].aspiration != b.groups[k].aspiration) return false;
    }
    return true;
}

bool same_product(const ProductSpec& a, const ProductSpec& b) {
    return a.incumbent_payoff == b.incumbent_payoff && a.product_similarity == b.product_similarity &&
           a.new_payoffs == b.new_payoffs;
}

void apply_axis(RawInstance& raw, const std::string& axis, const Rational& value) {
    if (axis == "gamma") {
        auto* h = std::get_if<HomophilyNetwork>(&raw.network);
        if (!h) throw ConfigError("sweep axis 'gamma' needs a homophily network");
        h->gamma = value;
    } else if (axis == "s") {
        if (auto* u = std::get_if<UniformNetwork>(&raw.network)) {
            u->s = value;
        } else if (auto* h = std::get_if<HomophilyNetwork>(&raw.network)) {
            h->s = value;
        } else {
            throw ConfigError("sweep axis 's' needs a uniform or homophily network");
        }
    } else if (axis == "s_p") {
        raw.product.product_similarity = value;
    } else if (axis == "v_H") {
        for (auto& v : raw.product.new_payoffs) v = value;
    } else if (axis.size() > 5 && axis.rfind("v_H[", 0) == 0 && axis.back() == ']') {
        std::size_t k = 0;
        try {
            k = std::stoul(axis.substr(4, axis.size() - 5));
        } catch (const std::exception&) {
            throw ConfigError("unknown sweep axis '" + axis + "'");
        }
        if (k == 0 || k > raw.population.group_count()) throw ConfigError("sweep axis '" + axis + "': no such group");
        std::size_t begin = 0;
        for (std::size_t g = 0; g + 1 < k; ++g) begin += raw.population.groups[g].size;
        for (std::size_t i = begin; i < begin + raw.population.groups[k - 1].size; ++i) {
            raw.product.new_payoffs[i] = value;
        }
    } else {
        throw ConfigError("unknown sweep axis '" + axis + "' (gamma, s, s_p, v_H, v_H[k])");
    }
}

struct SweepOutcome {
    DiffusionTrace trace;
    std::string csv;
    std::string summary;
};

/// Runs jobs(0..count) on up to `workers` threads; results land by index.
template <typename Result, typename Job>
std::vector<Result> run_indexed(std::size_t count, unsigned workers, const Job& job) {
    std::vector<Result> results(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                results[i] = job(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

}  // namespace

int run_command(const CommandOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfig config = load(options, 0);
        const Instance instance = config.build();
        const DiffusionTrace trace = simulate(instance, config.run);
        const auto thresholds = thresholds_if_defined(trace, instance);
        write_file(options.out / "trace.csv", trace_csv(trace, thresholds));
        write_file(options.out / "summary.json", summary_json(trace));
        out << summary_line(trace) << '\n';
        return 0;
    });
}

int compare_command(const CommandOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (options.configs.size() != 2) throw ConfigError("compare needs exactly two --config files");
        const RunConfig config_a = load(options, 0);
        const RunConfig config_b = load(options, 1);
        const RawInstance a = raw_instance(config_a);
        const RawInstance b = raw_instance(config_b);
        if (!same_population(a.population, b.population)) {
            throw ConfigError("configs describe different populations");
        }

        const auto* ties_a = std::get_if<GroupTiesNetwork>(&a.network);
        const auto* ties_b = std::get_if<GroupTiesNetwork>(&b.network);
        if (ties_a && ties_b) {
            if (!same_product(a.product, b.product)) {
                throw ConfigError("network comparison needs identical products");
            }
            const NetworkComparisonReport report =
                network_compare(a.population, a.product, *ties_a, *ties_b, config_a.run.horizon);
            write_file(options.out / "report.json", network_comparison_json(report));
            out << (report.contained ? "contained" : "not contained")
                << (report.asserted ? " (asserted)" : " (descriptive)") << '\n';
            return 0;
        }

        const auto* uni_a = std::get_if<UniformNetwork>(&a.network);
        const auto* uni_b = std::get_if<UniformNetwork>(&b.network);
        if (!uni_a || !uni_b || uni_a->s != uni_b->s) {
            throw ConfigError("product comparison needs the same uniform network in both configs");
        }
        const ComparisonReport report =
            compare_specs(a.product, b.product, a.population, a.network, CompareOptions{config_a.run.horizon});
        write_file(options.out / "report.json", comparison_json(report));
        out << verdict_line(report) << '\n';
        return 0;
    });
}

int sweep_command(const CommandOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfig config = load(options, 0);
        if (!config.sweep) throw ConfigError("config has no 'sweep' section");
        const SweepSpec& sweep = *config.sweep;
        const RawInstance base = raw_instance(config);

        // Reject bad axes before spawning anything.
        RawInstance probe = base;
        apply_axis(probe, sweep.axis, sweep.values.front());

        const auto outcomes = run_indexed<SweepOutcome>(sweep.values.size(), options.jobs, [&](std::size_t i) {
            RawInstance raw = base;
            apply_axis(raw, sweep.axis, sweep.values[i]);
            const Instance instance = validate_instance(raw.population, raw.product, raw.network);
            SweepOutcome outcome;
            outcome.trace = simulate(instance, config.run);
            outcome.csv = trace_csv(outcome.trace, thresholds_if_defined(outcome.trace, instance));
            outcome.summary = summary_json(outcome.trace);
            return outcome;
        });

        bool ascending = true;
        for (std::size_t i = 1; i < sweep.values.size(); ++i) ascending = ascending && sweep.values[i - 1] < sweep.values[i];
        if (sweep.axis == "gamma" && ascending) {
            const auto& h = std::get<HomophilyNetwork>(base.network);
            homophily_sweep(base.population, base.product, h.s, sweep.values, config.run.horizon);
        }

        std::vector<SweepRow> rows;
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            const std::string value = format_rational(sweep.values[i]);
            const auto dir = options.out / ("value_" + std::to_string(i));
            write_file(dir / "trace.csv", outcomes[i].csv);
            write_file(dir / "summary.json", outcomes[i].summary);
            for (const PeriodRecord& rec : outcomes[i].trace.periods) {
                rows.push_back(SweepRow{value, rec.period, rec.cumulative_adopters});
            }
            out << sweep.axis << '=' << value << ": " << summary_line(outcomes[i].trace) << '\n';
        }
        std::ostringstream csv;
        write_sweep_csv(csv, rows);
        write_file(options.out / "sweep.csv", csv.str());
        return 0;
    });
}

int validate_command(const CommandOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (options.configs.empty() && !options.seed) throw ConfigError("--config is required");
        const std::size_t count = std::max<std::size_t>(1, options.configs.size());
        for (std::size_t i = 0; i < count; ++i) {
            const Instance instance = load(options, i).build();
            out << "ok: " << instance.individual_count() << " individuals, " << instance.group_count()
                << " groups, " << network_name(instance.network()) << " network\n";
        }
        return 0;
    });
}

}  // namespace cbd::cli
