#include "cbdiff/oracle.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <variant>

namespace cbd::oracle {

namespace {

__extension__ using Wide = __int128;

/// Group index of individual i, found by walking the group sizes.
std::size_t group_index(IndividualId i, const Population& population) {
    std::size_t seen = 0;
    for (std::size_t k = 0; k < population.groups.size(); ++k) {
        seen += population.groups[k].size;
        if (i < seen) return k;
    }
    throw std::out_of_range("individual id outside the population");
}

Rational pair_weight(IndividualId i, IndividualId j, const Instance& instance) {
    if (i == j) return Rational{1};
    const NetworkSpec& network = instance.network();
    const Population& population = instance.population();
    if (const auto* u = std::get_if<UniformNetwork>(&network)) return u->s;
    if (const auto* h = std::get_if<HomophilyNetwork>(&network)) {
        return group_index(i, population) == group_index(j, population) ? Rational{h->gamma * h->s} : h->s;
    }
    return std::get<GroupTiesNetwork>(network).ties.at(group_index(j, population));
}

Rational product_weight(Product evaluated, Product consumed, const Rational& s_p) {
    if (evaluated == consumed) return Rational{1};
    return evaluated == Product::kNew ? s_p : Rational{0};
}

Wide checked_mul(Wide a, Wide b) {
    Wide r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("oracle arithmetic overflow");
    return r;
}

Wide checked_add(Wide a, Wide b) {
    Wide r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("oracle arithmetic overflow");
    return r;
}

Wide to_wide(const Integer& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("oracle operand exceeds 64 bits");
    return static_cast<Wide>(z.get_si());
}

/// value * scale, which must be an integer.
Wide scaled(const Rational& value, const Integer& scale) {
    const Rational product = value * Rational{scale};
    if (product.get_den() != 1) throw std::logic_error("scale is not a common denominator");
    return to_wide(product.get_num());
}

Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Everything an oracle run needs as integers over fixed denominators.
struct Scaled {
    std::size_t n = 0;
    Integer weight_scale{1};
    Integer payoff_scale{1};
    std::vector<Wide> weight;      ///< n*n, row = evaluator
    std::vector<Wide> aspiration;  ///< per individual
    std::vector<Wide> new_payoff;  ///< per individual
    Wide incumbent_payoff = 0;
    Wide sp_num = 0;  ///< s_p = sp_num / sp_den
    Wide sp_den = 1;
};

Scaled scale_instance(const Instance& instance) {
    Scaled s;
    s.n = instance.population().total();
    std::vector<Rational> weights(s.n * s.n);
    for (IndividualId i = 0; i < s.n; ++i) {
        for (IndividualId j = 0; j < s.n; ++j) {
            weights[i * s.n + j] = pair_weight(i, j, instance);
            s.weight_scale = lcm(s.weight_scale, weights[i * s.n + j].get_den());
        }
    }
    const ProductSpec& product = instance.product();
    s.payoff_scale = lcm(s.payoff_scale, product.incumbent_payoff.get_den());
    for (const auto& v : product.new_payoffs) s.payoff_scale = lcm(s.payoff_scale, v.get_den());
    for (const auto& g : instance.population().groups) s.payoff_scale = lcm(s.payoff_scale, g.aspiration.get_den());

    s.weight.reserve(weights.size());
    for (const auto& w : weights) s.weight.push_back(scaled(w, s.weight_scale));
    for (IndividualId i = 0; i < s.n; ++i) {
        s.aspiration.push_back(scaled(instance.population().groups[group_index(i, instance.population())].aspiration,
                                      s.payoff_scale));
        s.new_payoff.push_back(scaled(product.new_payoffs.at(i), s.payoff_scale));
    }
    s.incumbent_payoff = scaled(product.incumbent_payoff, s.payoff_scale);
    s.sp_num = to_wide(product.product_similarity.get_num());
    s.sp_den = to_wide(product.product_similarity.get_den());
    return s;
}

/// Running sums for one evaluator and one product, over cases seen so far:
/// sum of w * f * v and of w * f, where f is the product weight times sp_den.
struct Accumulator {
    Wide weighted_payoff = 0;
    Wide weight = 0;
};

}  // namespace

Period CaseLedger::periods(std::size_t individuals) const {
    return individuals == 0 ? 0 : cases.size() / individuals;
}

Rational oracle_evaluate(IndividualId i, Product p, const CaseLedger& ledger, const Instance& instance,
                         EvaluationMode mode) {
    const Rational& h = instance.population().groups[group_index(i, instance.population())].aspiration;
    Rational sum{0};
    Rational mass{0};
    for (const Case& c : ledger.cases) {
        const Rational w = pair_weight(i, c.consumer, instance);
        sum += w * product_weight(p, c.product, instance.product().product_similarity) * (c.payoff - h);
        mass += w;
    }
    if (mode == EvaluationMode::kAverage) {
        if (mass == 0) return Rational{0};
        sum /= mass;
    }
    return sum;
}

OracleRun oracle_simulate(const Instance& instance, Period horizon, EvaluationMode /*mode*/) {
    const Scaled s = scale_instance(instance);
    OracleRun run;
    run.trace.horizon = horizon;
    run.trace.adoption_period.assign(s.n, std::nullopt);
    run.ledger.cases.reserve(s.n * (horizon + 1));

    // acc[i][0] evaluates the incumbent, acc[i][1] the new product.
    std::vector<std::array<Accumulator, 2>> acc(s.n);
    std::vector<Product> choice(s.n, Product::kIncumbent);

    const Product products[2] = {Product::kIncumbent, Product::kNew};
    for (Period t = 0; t <= horizon; ++t) {
        if (t > 0) {
            for (IndividualId i = 0; i < s.n; ++i) {
                // U(p) * W * P * V = weighted_payoff - H_i * weight.
                const Wide u_inc = checked_add(acc[i][0].weighted_payoff, -checked_mul(s.aspiration[i], acc[i][0].weight));
                const Wide u_new = checked_add(acc[i][1].weighted_payoff, -checked_mul(s.aspiration[i], acc[i][1].weight));
                // The average variant divides both sides by the same positive mass.
                const bool prefers_new = u_new > u_inc;
                if (choice[i] == Product::kNew && !prefers_new) ++run.trace.switchbacks;
                choice[i] = prefers_new ? Product::kNew : Product::kIncumbent;
                if (prefers_new && !run.trace.adoption_period[i]) run.trace.adoption_period[i] = t;
            }
        }
        for (IndividualId j = 0; j < s.n; ++j) {
            const bool fresh = choice[j] == Product::kNew;
            const Wide v = fresh ? s.new_payoff[j] : s.incumbent_payoff;
            run.ledger.cases.push_back(
                Case{j, choice[j], fresh ? instance.product().new_payoffs[j] : instance.product().incumbent_payoff, t});
            for (IndividualId i = 0; i < s.n; ++i) {
                const Wide w = s.weight[i * s.n + j];
                for (int q = 0; q < 2; ++q) {
                    const Wide f = products[q] == choice[j] ? s.sp_den : (products[q] == Product::kNew ? s.sp_num : 0);
                    const Wide wf = checked_mul(w, f);
                    acc[i][q].weight = checked_add(acc[i][q].weight, wf);
                    acc[i][q].weighted_payoff = checked_add(acc[i][q].weighted_payoff, checked_mul(wf, v));
                }
            }
        }
    }
    finalize_trace(run.trace, instance, false);
    return run;
}

}  // namespace cbd::oracle
