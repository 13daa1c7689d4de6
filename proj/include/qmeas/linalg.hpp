#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qmeas/errors.hpp"

namespace qmeas {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Numerical tolerances shared by all validators.
struct Tolerances {
    double hermiticity = 1e-10;  // max |X - X^dag| entrywise
    double psd = 1e-9;           // min eigenvalue floor
    double trace = 1e-9;         // |tr - expected|
    double weight_sum = 1e-12;   // |sum p(x) - 1|
};

const Tolerances& tols();

/// Square complex matrix validated to be Hermitian on construction.
class HermitianMatrix {
  public:
    explicit HermitianMatrix(Mat m, double tol = tols().hermiticity);

    const Mat& mat() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }

  private:
    Mat m_;
};

/// Hermitian, PSD (within tolerance), unit-trace matrix.
class DensityMatrix {
  public:
    explicit DensityMatrix(Mat m, double psd_tol = tols().psd);

    const Mat& mat() const { return m_.mat(); }
    Eigen::Index dim() const { return m_.dim(); }

  private:
    HermitianMatrix m_;
};

Mat kron(const Mat& a, const Mat& b);

/// Trace over the first tensor factor: input is (d1*d2) x (d1*d2),
/// output is d2 x d2.
Mat partial_trace_first(const Mat& m, Eigen::Index dim_first, Eigen::Index dim_second);

/// Real eigenvalues of a Hermitian matrix, ascending.
RVec hermitian_eigenvalues(const Mat& m);

double min_eigenvalue(const Mat& hermitian);
double trace_norm(const HermitianMatrix& m);
double spectral_norm(const HermitianMatrix& m);

// Convenience overloads for matrices already known to be Hermitian.
double trace_norm(const Mat& hermitian);
double spectral_norm(const Mat& hermitian);

/// [[Re, -Im], [Im, Re]] block embedding. The result is symmetric, is PSD
/// iff the input is PSD, and carries each eigenvalue twice.
RMat real_embed_hermitian(const HermitianMatrix& m);
RMat real_embed_hermitian(const Mat& hermitian);

/// Inverse of real_embed_hermitian, averaging over the embedding symmetry.
Mat unembed_hermitian(const RMat& e);

/// Principal square root of a PSD Hermitian matrix (negative ripples clipped).
Mat sqrt_psd(const Mat& hermitian);

bool is_hermitian(const Mat& m, double tol = tols().hermiticity);
bool is_psd(const Mat& hermitian, double tol = tols().psd);

Mat identity(Eigen::Index d);
Vec basis_ket(Eigen::Index i, Eigen::Index d);

/// Projector |i><i| in dimension d.
Mat basis_proj(Eigen::Index i, Eigen::Index d);

/// Normalized maximally entangled vector (1/sqrt(d)) sum_i |ii>.
Vec max_entangled_ket(Eigen::Index d);
DensityMatrix max_entangled_state(Eigen::Index d);

}  // namespace qmeas
