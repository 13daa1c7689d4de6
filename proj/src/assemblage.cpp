#include "qmeas/assemblage.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace qmeas {

namespace {

constexpr double kPi = std::numbers::pi;

Cplx root_of_unity(int d, long long exponent) {
    const double phase = 2.0 * kPi * static_cast<double>(exponent) / d;
    return {std::cos(phase), std::sin(phase)};
}

Povm projective_povm(const std::vector<Vec>& basis) {
    Povm p;
    p.dim = static_cast<int>(basis.front().size());
    for (const Vec& v : basis) {
        p.effects.push_back(v * v.adjoint());
    }
    return p;
}

// Eigenbasis of X Z^k for odd prime d. The vectors
//   v_s(q) = d^{-1/2} w^{s q + k q(q-1)/2}
// satisfy (X Z^k) v_s = w^{-s} v_s; outcomes are ordered by s.
std::vector<Vec> shift_clock_word_basis(int d, int k) {
    std::vector<Vec> basis;
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int s = 0; s < d; ++s) {
        Vec v(d);
        for (int q = 0; q < d; ++q) {
            const long long quad = static_cast<long long>(k) * q * (q - 1) / 2;
            v(q) = norm * root_of_unity(d, static_cast<long long>(s) * q + quad);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Vec> computational_basis(int d) {
    std::vector<Vec> basis;
    for (int i = 0; i < d; ++i) {
        basis.push_back(basis_ket(i, d));
    }
    return basis;
}

// The three qubit words need half-integer phases, so they are spelled out.
std::vector<Vec> qubit_word_basis(int x_pow, int z_pow) {
    const double s = 1.0 / std::sqrt(2.0);
    if (x_pow == 0) {
        return computational_basis(2);
    }
    std::vector<Vec> basis(2, Vec(2));
    if (z_pow == 0) {
        basis[0] << s, s;
        basis[1] << s, -s;
    } else {
        basis[0] << s, Cplx(0, 1) * s;
        basis[1] << s, Cplx(0, -1) * s;
    }
    return basis;
}

int mod_inverse(int a, int p) {
    // p prime, a != 0 mod p
    int result = 1;
    int base = a % p;
    int e = p - 2;
    while (e > 0) {
        if (e & 1) result = (result * base) % p;
        base = (base * base) % p;
        e >>= 1;
    }
    return result;
}

// Canonical form of an operator word: the eigenbasis of X^j Z^k in prime
// dimension equals that of Z (j = 0) or of X Z^{k j^{-1}} (j != 0).
std::pair<int, int> canonical_word(int d, int j, int k) {
    j = ((j % d) + d) % d;
    k = ((k % d) + d) % d;
    if (j == 0 && k == 0) {
        throw Error("heisenberg_weyl_mub_subset: identity word has no eigenbasis");
    }
    if (j == 0) return {0, 1};
    return {1, (k * mod_inverse(j, d)) % d};
}

std::vector<Vec> word_eigenbasis(int d, int x_pow, int z_pow) {
    if (d == 2) return qubit_word_basis(x_pow, z_pow);
    if (x_pow == 0) return computational_basis(d);
    return shift_clock_word_basis(d, z_pow);
}

}  // namespace

WeightedAssemblage make_weighted(std::vector<Povm> povms, RVec weights) {
    if (povms.empty()) {
        throw ShapeMismatch("assemblage needs at least one POVM");
    }
    if (weights.size() != static_cast<Eigen::Index>(povms.size())) {
        throw ShapeMismatch("weight count does not match POVM count");
    }
    const int d = povms.front().dim;
    int o = 0;
    for (const Povm& p : povms) {
        if (p.dim != d) throw DimensionMismatch("POVMs must share the dimension");
        for (const Mat& e : p.effects) {
            if (e.rows() != d || e.cols() != d) {
                throw DimensionMismatch("effect size does not match POVM dimension");
            }
        }
        o = std::max(o, p.outcomes());
    }
    for (Povm& p : povms) {
        while (p.outcomes() < o) p.effects.push_back(Mat::Zero(d, d));
    }
    for (Eigen::Index x = 0; x < weights.size(); ++x) {
        if (!(weights(x) > 0.0)) {
            throw Error("setting weights must be strictly positive");
        }
    }
    if (std::abs(weights.sum() - 1.0) > tols().weight_sum) {
        throw Error("setting weights must sum to 1");
    }
    return WeightedAssemblage{std::move(povms), std::move(weights)};
}

WeightedAssemblage uniform_weights(std::vector<Povm> povms) {
    const auto m = static_cast<Eigen::Index>(povms.size());
    return make_weighted(std::move(povms), RVec::Constant(m, 1.0 / static_cast<double>(m)));
}

std::vector<Diagnostic> validate(const WeightedAssemblage& assemblage) {
    std::vector<Diagnostic> out;
    if (assemblage.povms.empty()) {
        out.push_back({DiagnosticKind::ShapeViolation, 0.0, "no POVMs"});
        return out;
    }
    const int d = assemblage.dim();
    const int o = assemblage.outcomes();
    const double wsum = assemblage.weights.sum();
    if (std::abs(wsum - 1.0) > tols().weight_sum) {
        out.push_back({DiagnosticKind::WeightViolation, std::abs(wsum - 1.0),
                       "weights sum to " + std::to_string(wsum)});
    }
    for (Eigen::Index x = 0; x < assemblage.weights.size(); ++x) {
        if (!(assemblage.weights(x) > 0.0)) {
            out.push_back({DiagnosticKind::WeightViolation, assemblage.weights(x),
                           "weight " + std::to_string(x) + " not positive"});
        }
    }
    for (int x = 0; x < assemblage.settings(); ++x) {
        const Povm& p = assemblage.povms[x];
        if (p.dim != d || p.outcomes() != o) {
            out.push_back({DiagnosticKind::ShapeViolation, 0.0,
                           "POVM " + std::to_string(x) + " has mismatched shape"});
            continue;
        }
        Mat sum = Mat::Zero(d, d);
        for (int a = 0; a < o; ++a) {
            const Mat& e = p.effects[a];
            const double herm_dev = (e - e.adjoint()).cwiseAbs().maxCoeff();
            if (herm_dev > tols().hermiticity) {
                out.push_back({DiagnosticKind::HermiticityViolation, herm_dev,
                               "effect (" + std::to_string(x) + "," + std::to_string(a) + ")"});
                continue;
            }
            const double lmin = min_eigenvalue(e);
            if (lmin < -tols().psd) {
                out.push_back({DiagnosticKind::PositivityViolation, lmin,
                               "effect (" + std::to_string(x) + "," + std::to_string(a) + ")"});
            }
            sum += e;
        }
        const double comp_dev = (sum - Mat::Identity(d, d)).cwiseAbs().maxCoeff();
        if (comp_dev > tols().trace) {
            out.push_back({DiagnosticKind::CompletenessViolation, comp_dev,
                           "setting " + std::to_string(x)});
        }
    }
    return out;
}

Mat shift_operator(int d) {
    Mat x = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k) x((k + 1) % d, k) = 1.0;
    return x;
}

Mat clock_operator(int d) {
    Mat z = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k) z(k, k) = root_of_unity(d, k);
    return z;
}

bool is_prime(int n) {
    if (n < 2) return false;
    for (int f = 2; f * f <= n; ++f) {
        if (n % f == 0) return false;
    }
    return true;
}

WeightedAssemblage heisenberg_weyl_mub(int d, int m) {
    if (!is_prime(d)) {
        throw NotPrime("heisenberg_weyl_mub: dimension " + std::to_string(d) +
                       " is not prime");
    }
    if (m < 1 || m > d + 1) {
        throw TooManySettings("heisenberg_weyl_mub: need 1 <= m <= d+1");
    }
    // Eigenbases of X, Z, XZ, XZ^2, ..., XZ^{d-1}, first m taken.
    std::vector<std::pair<int, int>> words = {{1, 0}, {0, 1}};
    for (int k = 1; k < d; ++k) words.emplace_back(1, k);
    words.resize(m);
    return heisenberg_weyl_mub_subset(d, words);
}

WeightedAssemblage heisenberg_weyl_mub_subset(
    int d, const std::vector<std::pair<int, int>>& operators) {
    if (!is_prime(d)) {
        throw NotPrime("heisenberg_weyl_mub_subset: dimension " + std::to_string(d) +
                       " is not prime");
    }
    if (operators.empty()) {
        throw TooManySettings("heisenberg_weyl_mub_subset: empty operator list");
    }
    std::set<std::pair<int, int>> seen;
    std::vector<Povm> povms;
    for (const auto& [j, k] : operators) {
        const auto canon = canonical_word(d, j, k);
        if (!seen.insert(canon).second) {
            throw DuplicateOperator("heisenberg_weyl_mub_subset: operators (" +
                                    std::to_string(j) + "," + std::to_string(k) +
                                    ") repeat an eigenbasis");
        }
        povms.push_back(projective_povm(word_eigenbasis(d, canon.first, canon.second)));
    }
    return uniform_weights(std::move(povms));
}

WeightedAssemblage cglmp_pair(int d, Party party) {
    if (d < 2) {
        throw InvalidDimension("cglmp_pair: need d >= 2");
    }
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    std::vector<Povm> povms;
    for (int setting = 1; setting <= 2; ++setting) {
        std::vector<Vec> basis;
        for (int a = 0; a < d; ++a) {
            Vec v(d);
            for (int q = 0; q < d; ++q) {
                double phase;
                if (party == Party::Alice) {
                    const double alpha = (setting - 0.5) / 2.0;
                    phase = 2.0 * kPi / d * q * (a - alpha);
                } else {
                    const double beta = setting / 2.0;
                    phase = -2.0 * kPi / d * q * (a - beta);
                }
                v(q) = norm * Cplx(std::cos(phase), std::sin(phase));
            }
            basis.push_back(std::move(v));
        }
        povms.push_back(projective_povm(basis));
    }
    return uniform_weights(std::move(povms));
}

WeightedAssemblage depolarize_second(const NoisyPairSpec& spec) {
    if (spec.base.settings() != 2) {
        throw ShapeMismatch("depolarize_second: base assemblage must have two settings");
    }
    if (spec.mu < 0.0 || spec.mu > 1.0) {
        throw Error("depolarize_second: mu must lie in [0, 1]");
    }
    const int d = spec.base.dim();
    std::vector<Povm> povms = spec.base.povms;
    for (Mat& e : povms[1].effects) {
        e = spec.mu * e + (1.0 - spec.mu) * e.trace() / static_cast<double>(d) *
                              Mat::Identity(d, d);
    }
    return make_weighted(std::move(povms), spec.base.weights);
}

WeightedAssemblage random_assemblage(int d, int m, int o, std::uint64_t seed) {
    if (d < 1 || m < 1 || o < 1) {
        throw InvalidDimension("random_assemblage: d, m, o must all be >= 1");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_psd = [&]() {
        Mat a(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index j = 0; j < d; ++j) {
                a(i, j) = Cplx(gauss(rng), gauss(rng));
            }
        }
        return Mat(a * a.adjoint());
    };
    std::vector<Povm> povms;
    for (int x = 0; x < m; ++x) {
        Povm p;
        p.dim = d;
        for (int attempt = 0;; ++attempt) {
            std::vector<Mat> raw;
            Mat total = Mat::Zero(d, d);
            for (int a = 0; a < o; ++a) {
                raw.push_back(random_psd());
                total += raw.back();
            }
            Eigen::SelfAdjointEigenSolver<Mat> es(total);
            if (es.eigenvalues().minCoeff() > 1e-10 * es.eigenvalues().maxCoeff()) {
                const Mat inv_sqrt = es.operatorInverseSqrt();
                p.effects.clear();
                for (const Mat& e : raw) {
                    Mat eff = inv_sqrt * e * inv_sqrt;
                    p.effects.push_back(0.5 * (eff + eff.adjoint().eval()));
                }
                break;
            }
            if (attempt >= 16) {
                throw SingularNormalization("random_assemblage: normalization singular");
            }
        }
        povms.push_back(std::move(p));
    }
    return uniform_weights(std::move(povms));
}

}  // namespace qmeas
