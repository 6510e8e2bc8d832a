#pragma once

#include "seqtc/planner.hpp"

#include <cstdint>

namespace seqtc {

struct SweepRanges {
    std::vector<int> dims;
    std::vector<int> obstacle_counts;
    std::vector<int> robot_counts;
    int r_max = 3;
};

/* All specs with the given d, m, n values and non-decreasing target
 * tuples with entries in 1..r_max; deterministic order. */
std::vector<ProblemSpec> enumerate_specs(const SweepRanges& ranges);

struct SpecCheck {
    ProblemSpec spec = ProblemSpec::create(2, 2, {1});
    TcReport report;
    bool ok = false;
    std::string failure; // first failed identity, empty when ok
};

/* Per-spec identity battery: witness factor count vs the closed form,
 * nonzero product, every factor in the diagonal kernel, key-monomial
 * presence (odd d), rule-count identities, constant-schedule consistency
 * with the reference formulas. */
SpecCheck check_spec(const ProblemSpec& spec);

/* Batch driver, OpenMP-parallel over specs; results in input order. */
std::vector<SpecCheck> check_specs(const std::vector<ProblemSpec>& specs, bool parallel = true);
std::vector<SpecCheck> check_specs_reference(const std::vector<ProblemSpec>& specs);

/* Deterministic random scenario with healthy separations. When
 * engineered_ties is set, a few symbols are forced onto shared projection
 * values (the degenerate cells the planner's perturbation handles). */
Scenario random_scenario(int d, int m, const std::vector<int>& stops, PlannerMode mode,
                         std::uint64_t seed, bool engineered_ties);

} // namespace seqtc
