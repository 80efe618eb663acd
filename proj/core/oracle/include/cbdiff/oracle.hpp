#pragma once

#include "cbdiff/market.hpp"
#include "cbdiff/trace.hpp"

#include <vector>

namespace cbd::oracle {

/// One consumption experience: who consumed what, the payoff, and when.
struct Case {
    IndividualId consumer = 0;
    Product product = Product::kIncumbent;
    Rational payoff;
    Period period = 0;
};

/// The case set C_t, one entry per individual per elapsed period.
struct CaseLedger {
    std::vector<Case> cases;

    [[nodiscard]] std::size_t size() const { return cases.size(); }
    /// Number of complete periods recorded.
    [[nodiscard]] Period periods(std::size_t individuals) const;
};

/// Literal sum over every ledger entry. Weights are recomputed from
/// the raw network description for each pair.
Rational oracle_evaluate(IndividualId i, Product p, const CaseLedger& ledger, const Instance& instance,
                         EvaluationMode mode = EvaluationMode::kSum);

struct OracleRun {
    /// Uncertified trace over periods 1..horizon.
    DiffusionTrace trace;
    /// Cases of periods 0..horizon.
    CaseLedger ledger;
};

/// Naive simulation: every individual, adopters included, compares both
/// products against the full ledger each period. An adopter who would
/// strictly prefer the incumbent goes back to it and is counted in
/// trace.switchbacks. Arithmetic runs on checked 128-bit integers over a
/// common denominator; std::overflow_error if an instance does not fit.
OracleRun oracle_simulate(const Instance& instance, Period horizon, EvaluationMode mode = EvaluationMode::kSum);

}  // namespace cbd::oracle
