#pragma once

#include <cstdint>
#include <vector>

#include "totreal/qlattice.hpp"

namespace totreal {

/// Seeded random positive definite lattice with entries from the pools
/// (rejection on definiteness keeps the draw deterministic).
inline QuadraticLattice random_pd_lattice(const FieldPtr& K, const GramPools& pools, long rank,
                                          SplitMix64& rng) {
    for (;;) {
        std::vector<std::vector<FieldElement>> gram(
            static_cast<std::size_t>(rank),
            std::vector<FieldElement>(static_cast<std::size_t>(rank), FieldElement::zero(K)));
        for (long i = 0; i < rank; ++i)
            gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
                pools.diag[rng.below(pools.diag.size())];
        for (long i = 0; i < rank; ++i)
            for (long j = i + 1; j < rank; ++j) {
                const FieldElement& e = pools.off[rng.below(pools.off.size())];
                gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = e;
                gram[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = e;
            }
        QuadraticLattice L(K, std::move(gram));
        if (is_positive_definite(L)) return L;
    }
}

struct BatteryResult {
    long D = 0;
    long rank = 0;
    long trials = 0;
    std::uint64_t seed = 0;
    long house_bound = 10;
    long violations = 0;          // count of BoundViolated events (expect 0)
    bool bound_n_applicable = false;
    std::size_t max_represented = 0;
    std::vector<long> histogram;  // histogram[c] = lattices representing c classes
};

/// Randomized exercise of the represented-class bounds over one quadratic
/// field and rank; fully reproducible from the seed.
inline BatteryResult run_bound_battery(long D, long rank, long trials, std::uint64_t seed,
                                       long house_bound = 10, unsigned long budget = 4000000) {
    BatteryResult result;
    result.D = D;
    result.rank = rank;
    result.trials = trials;
    result.seed = seed;
    result.house_bound = house_bound;
    UnitClassReport report = tp_unit_square_classes(D);
    const FieldPtr& K = report.representatives.front().field();
    GramPools pools = build_gram_pools(K, house_bound);
    SplitMix64 rng(seed);
    result.histogram.assign(static_cast<std::size_t>(report.class_count) + 1, 0);
    for (long t = 0; t < trials; ++t) {
        QuadraticLattice L = random_pd_lattice(K, pools, rank, rng);
        try {
            SquareClassCoverage cov = represented_unit_classes(L, report, budget);
            result.bound_n_applicable = cov.bound_n_applicable;
            std::size_t c = cov.represented.size();
            result.max_represented = std::max(result.max_represented, c);
            result.histogram[c] += 1;
        } catch (const bound_violated_error&) {
            result.violations += 1;
        }
    }
    return result;
}

} // namespace totreal
