#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qmeas/assemblage.hpp"

namespace qmeas {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// All deterministic outcome assignments v(a|x,lambda) for m settings and o
/// outcomes. lambda is written base o with setting 0 as the most significant
/// digit, so the assignments come out in lexicographic order.
struct DeterministicStrategySet {
    int settings = 0;
    int outcomes = 0;
    std::uint64_t count = 0;

    int outcome(std::uint64_t lambda, int setting) const;
    std::vector<int> assignment(std::uint64_t lambda) const;
    std::uint64_t encode(const std::vector<int>& assignment) const;
};

DeterministicStrategySet enumerate_strategies(int settings, int outcomes,
                                              std::uint64_t cap = kDefaultEnumerationCap);

/// Product of Alice's and Bob's deterministic strategies; lambda decodes as
/// lambda = lambda_A * bob.count + lambda_B.
struct BipartiteStrategySet {
    DeterministicStrategySet alice;
    DeterministicStrategySet bob;
    std::uint64_t count = 0;

    std::pair<std::uint64_t, std::uint64_t> decode(std::uint64_t lambda) const;
};

BipartiteStrategySet enumerate_bipartite(int settings_a, int outcomes_a, int settings_b,
                                         int outcomes_b,
                                         std::uint64_t cap = kDefaultEnumerationCap);

/// sum_x M_{(lambda's outcome for x) | x} for one deterministic strategy.
Mat strategy_matrix_sum(const DeterministicStrategySet& strategies,
                        const WeightedAssemblage& assemblage, std::uint64_t lambda);

}  // namespace qmeas
