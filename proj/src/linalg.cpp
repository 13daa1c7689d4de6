#include "qmeas/linalg.hpp"

#include <cmath>

namespace qmeas {

const Tolerances& tols() {
    static const Tolerances t{};
    return t;
}

HermitianMatrix::HermitianMatrix(Mat m, double tol) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw DimensionMismatch("HermitianMatrix: matrix is not square");
    }
    const double dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (dev > tol) {
        throw Error("HermitianMatrix: |X - X^dag| = " + std::to_string(dev) +
                    " exceeds tolerance");
    }
}

DensityMatrix::DensityMatrix(Mat m, double psd_tol) : m_(std::move(m)) {
    const double lmin = min_eigenvalue(m_.mat());
    if (lmin < -psd_tol) {
        throw Error("DensityMatrix: negative eigenvalue " + std::to_string(lmin));
    }
    const double tr_dev = std::abs(m_.mat().trace().real() - 1.0);
    if (tr_dev > tols().trace) {
        throw Error("DensityMatrix: trace deviates from 1 by " + std::to_string(tr_dev));
    }
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Mat partial_trace_first(const Mat& m, Eigen::Index dim_first, Eigen::Index dim_second) {
    if (m.rows() != m.cols() || m.rows() != dim_first * dim_second) {
        throw DimensionMismatch("partial_trace_first: size is not dim_first*dim_second");
    }
    Mat out = Mat::Zero(dim_second, dim_second);
    for (Eigen::Index k = 0; k < dim_first; ++k) {
        out += m.block(k * dim_second, k * dim_second, dim_second, dim_second);
    }
    return out;
}

RVec hermitian_eigenvalues(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double min_eigenvalue(const Mat& hermitian) {
    return hermitian_eigenvalues(hermitian).minCoeff();
}

double trace_norm(const HermitianMatrix& m) { return trace_norm(m.mat()); }

double trace_norm(const Mat& hermitian) {
    return hermitian_eigenvalues(hermitian).cwiseAbs().sum();
}

double spectral_norm(const HermitianMatrix& m) { return spectral_norm(m.mat()); }

double spectral_norm(const Mat& hermitian) {
    if (hermitian.rows() == 0) return 0.0;
    return hermitian_eigenvalues(hermitian).cwiseAbs().maxCoeff();
}

RMat real_embed_hermitian(const HermitianMatrix& m) {
    return real_embed_hermitian(m.mat());
}

RMat real_embed_hermitian(const Mat& hermitian) {
    const Eigen::Index n = hermitian.rows();
    RMat out(2 * n, 2 * n);
    const RMat re = hermitian.real();
    const RMat im = hermitian.imag();
    out.topLeftCorner(n, n) = re;
    out.topRightCorner(n, n) = -im;
    out.bottomLeftCorner(n, n) = im;
    out.bottomRightCorner(n, n) = re;
    return out;
}

Mat unembed_hermitian(const RMat& e) {
    const Eigen::Index n = e.rows() / 2;
    if (e.rows() != 2 * n || e.cols() != 2 * n) {
        throw DimensionMismatch("unembed_hermitian: expected even-sized square matrix");
    }
    const RMat re = 0.5 * (e.topLeftCorner(n, n) + e.bottomRightCorner(n, n));
    const RMat im = 0.5 * (e.bottomLeftCorner(n, n) - e.topRightCorner(n, n));
    Mat out = re.cast<Cplx>() + Cplx(0, 1) * im.cast<Cplx>();
    // Average away any residual asymmetry from the embedding free directions.
    return 0.5 * (out + out.adjoint().eval());
}

Mat sqrt_psd(const Mat& hermitian) {
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian);
    RVec vals = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

bool is_hermitian(const Mat& m, double tol) {
    return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_psd(const Mat& hermitian, double tol) {
    return min_eigenvalue(hermitian) >= -tol;
}

Mat identity(Eigen::Index d) { return Mat::Identity(d, d); }

Vec basis_ket(Eigen::Index i, Eigen::Index d) {
    Vec v = Vec::Zero(d);
    v(i) = 1.0;
    return v;
}

Mat basis_proj(Eigen::Index i, Eigen::Index d) {
    Mat p = Mat::Zero(d, d);
    p(i, i) = 1.0;
    return p;
}

Vec max_entangled_ket(Eigen::Index d) {
    Vec v = Vec::Zero(d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
    }
    return v;
}

DensityMatrix max_entangled_state(Eigen::Index d) {
    const Vec v = max_entangled_ket(d);
    return DensityMatrix(v * v.adjoint());
}

}  // namespace qmeas
