#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qmeas/linalg.hpp"

namespace qmeas {

/// A positive operator-valued measure: PSD effects summing to the identity.
struct Povm {
    int dim = 0;
    std::vector<Mat> effects;

    int outcomes() const { return static_cast<int>(effects.size()); }
};

/// A set of POVMs indexed by the measurement setting x, together with the
/// probability p(x) of choosing that setting. All POVMs share the dimension
/// and (after zero-padding) the outcome count.
struct WeightedAssemblage {
    std::vector<Povm> povms;
    RVec weights;

    int dim() const { return povms.empty() ? 0 : povms.front().dim; }
    int settings() const { return static_cast<int>(povms.size()); }
    int outcomes() const { return povms.empty() ? 0 : povms.front().outcomes(); }
    const Mat& effect(int x, int a) const { return povms[x].effects[a]; }
};

/// Builds a weighted assemblage, zero-padding ragged outcome counts.
/// Throws on p(x) <= 0, weights not summing to 1, or mismatched dimensions.
WeightedAssemblage make_weighted(std::vector<Povm> povms, RVec weights);
WeightedAssemblage uniform_weights(std::vector<Povm> povms);

enum class DiagnosticKind {
    CompletenessViolation,
    PositivityViolation,
    HermiticityViolation,
    WeightViolation,
    ShapeViolation,
};

struct Diagnostic {
    DiagnosticKind kind;
    double magnitude;
    std::string detail;
};

/// Checks every assemblage invariant; empty result means valid.
std::vector<Diagnostic> validate(const WeightedAssemblage& assemblage);

/// Cyclic shift and clock operators in dimension d.
Mat shift_operator(int d);
Mat clock_operator(int d);

/// Uniformly weighted assemblage of the first m mutually unbiased eigenbases
/// of the shift/clock operator words in prime dimension d, ordered as the
/// eigenbases of X, Z, XZ, XZ^2, ...
WeightedAssemblage heisenberg_weyl_mub(int d, int m);

/// Same construction for an explicit list of operator words (x_power, z_power).
WeightedAssemblage heisenberg_weyl_mub_subset(int d,
                                              const std::vector<std::pair<int, int>>& operators);

enum class Party { Alice, Bob };

/// The two-setting, d-outcome Fourier-phase projective pair used in
/// CGLMP-type Bell tests, for either party.
WeightedAssemblage cglmp_pair(int d, Party party);

/// A two-setting base assemblage with depolarizing noise strength mu applied
/// to the second setting only (mu = 1 keeps it noise free).
struct NoisyPairSpec {
    WeightedAssemblage base;
    double mu = 1.0;
};

WeightedAssemblage depolarize_second(const NoisyPairSpec& spec);

/// Random valid assemblage from normalized Wishart effects; deterministic per seed.
WeightedAssemblage random_assemblage(int d, int m, int o, std::uint64_t seed);

bool is_prime(int n);

}  // namespace qmeas
