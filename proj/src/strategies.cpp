#include "qmeas/strategies.hpp"

#include <string>

namespace qmeas {

namespace {

// o^m with overflow detection; returns 0 on overflow of uint64.
std::uint64_t checked_pow(std::uint64_t o, int m) {
    std::uint64_t r = 1;
    for (int i = 0; i < m; ++i) {
        if (o != 0 && r > UINT64_MAX / o) return 0;
        r *= o;
    }
    return r;
}

}  // namespace

int DeterministicStrategySet::outcome(std::uint64_t lambda, int setting) const {
    if (lambda >= count || setting < 0 || setting >= settings) {
        throw IndexOutOfRange("DeterministicStrategySet::outcome");
    }
    std::uint64_t divisor = 1;
    for (int i = 0; i < settings - 1 - setting; ++i) divisor *= outcomes;
    return static_cast<int>((lambda / divisor) % outcomes);
}

std::vector<int> DeterministicStrategySet::assignment(std::uint64_t lambda) const {
    if (lambda >= count) throw IndexOutOfRange("DeterministicStrategySet::assignment");
    std::vector<int> a(settings);
    for (int x = settings - 1; x >= 0; --x) {
        a[x] = static_cast<int>(lambda % outcomes);
        lambda /= outcomes;
    }
    return a;
}

std::uint64_t DeterministicStrategySet::encode(const std::vector<int>& assignment) const {
    if (assignment.size() != static_cast<std::size_t>(settings)) {
        throw IndexOutOfRange("DeterministicStrategySet::encode: wrong length");
    }
    std::uint64_t lambda = 0;
    for (int x = 0; x < settings; ++x) {
        if (assignment[x] < 0 || assignment[x] >= outcomes) {
            throw IndexOutOfRange("DeterministicStrategySet::encode: outcome out of range");
        }
        lambda = lambda * outcomes + static_cast<std::uint64_t>(assignment[x]);
    }
    return lambda;
}

DeterministicStrategySet enumerate_strategies(int settings, int outcomes,
                                              std::uint64_t cap) {
    if (settings < 1 || outcomes < 1) {
        throw InvalidDimension("enumerate_strategies: need settings, outcomes >= 1");
    }
    const std::uint64_t n = checked_pow(outcomes, settings);
    if (n == 0 || n > cap) {
        throw EnumerationOverflow(
            "enumerate_strategies: " + std::to_string(outcomes) + "^" +
                std::to_string(settings) + " deterministic strategies exceed cap " +
                std::to_string(cap) + (n ? " (required cap: " + std::to_string(n) + ")" : ""),
            n);
    }
    return DeterministicStrategySet{settings, outcomes, n};
}

std::pair<std::uint64_t, std::uint64_t> BipartiteStrategySet::decode(
    std::uint64_t lambda) const {
    if (lambda >= count) throw IndexOutOfRange("BipartiteStrategySet::decode");
    return {lambda / bob.count, lambda % bob.count};
}

BipartiteStrategySet enumerate_bipartite(int settings_a, int outcomes_a, int settings_b,
                                         int outcomes_b, std::uint64_t cap) {
    const std::uint64_t na = checked_pow(outcomes_a, settings_a);
    const std::uint64_t nb = checked_pow(outcomes_b, settings_b);
    const unsigned __int128 n = static_cast<unsigned __int128>(na) * nb;
    if (na == 0 || nb == 0 || n > cap) {
        const std::uint64_t required =
            (n > 0 && n <= UINT64_MAX) ? static_cast<std::uint64_t>(n) : 0;
        throw EnumerationOverflow(
            "enumerate_bipartite: joint strategy count exceeds cap " + std::to_string(cap) +
                (required ? " (required cap: " + std::to_string(required) + ")" : ""),
            required);
    }
    BipartiteStrategySet set;
    set.alice = DeterministicStrategySet{settings_a, outcomes_a, na};
    set.bob = DeterministicStrategySet{settings_b, outcomes_b, nb};
    set.count = static_cast<std::uint64_t>(n);
    return set;
}

Mat strategy_matrix_sum(const DeterministicStrategySet& strategies,
                        const WeightedAssemblage& assemblage, std::uint64_t lambda) {
    if (lambda >= strategies.count) throw IndexOutOfRange("strategy_matrix_sum");
    const int d = assemblage.dim();
    Mat sum = Mat::Zero(d, d);
    for (int x = 0; x < strategies.settings; ++x) {
        sum += assemblage.effect(x, strategies.outcome(lambda, x));
    }
    return sum;
}

}  // namespace qmeas
