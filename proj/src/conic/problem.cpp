#include "qmeas/conic/problem.hpp"

#include <algorithm>
#include <cmath>

namespace qmeas::conic {

namespace {

template <typename Scalar>
void compress_terms(std::vector<std::pair<int, Scalar>>& terms) {
    if (terms.empty()) return;
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms.size();) {
        int comp = terms[i].first;
        Scalar sum = terms[i].second;
        for (++i; i < terms.size() && terms[i].first == comp; ++i) sum += terms[i].second;
        if (std::abs(sum) > 0.0) terms[out++] = {comp, sum};
    }
    terms.resize(out);
}

}  // namespace

LinExpr& LinExpr::operator+=(const LinExpr& other) {
    constant += other.constant;
    terms.insert(terms.end(), other.terms.begin(), other.terms.end());
    return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& other) {
    constant -= other.constant;
    for (const auto& [c, v] : other.terms) terms.emplace_back(c, -v);
    return *this;
}

LinExpr& LinExpr::operator*=(double s) {
    constant *= s;
    for (auto& [c, v] : terms) v *= s;
    return *this;
}

void LinExpr::compress() { compress_terms(terms); }

LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b, a; }
LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b, a; }
LinExpr operator*(double s, LinExpr a) { return a *= s, a; }

CLinExpr& CLinExpr::operator+=(const CLinExpr& other) {
    constant += other.constant;
    terms.insert(terms.end(), other.terms.begin(), other.terms.end());
    return *this;
}

CLinExpr& CLinExpr::operator-=(const CLinExpr& other) {
    constant -= other.constant;
    for (const auto& [c, v] : other.terms) terms.emplace_back(c, -v);
    return *this;
}

CLinExpr& CLinExpr::operator*=(Cplx s) {
    constant *= s;
    for (auto& [c, v] : terms) v *= s;
    return *this;
}

CLinExpr CLinExpr::conjugated() const {
    CLinExpr out;
    out.constant = std::conj(constant);
    out.terms.reserve(terms.size());
    for (const auto& [c, v] : terms) out.terms.emplace_back(c, std::conj(v));
    return out;
}

void CLinExpr::compress() { compress_terms(terms); }

MatExpr MatExpr::constant(const Mat& m) {
    MatExpr e(static_cast<int>(m.rows()));
    for (int i = 0; i < e.dim(); ++i) {
        for (int j = 0; j < e.dim(); ++j) e.at(i, j).constant = m(i, j);
    }
    return e;
}

MatExpr& MatExpr::operator+=(const MatExpr& other) {
    if (other.n_ != n_) throw DimensionMismatch("MatExpr +=: size mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

MatExpr& MatExpr::operator-=(const MatExpr& other) {
    if (other.n_ != n_) throw DimensionMismatch("MatExpr -=: size mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

MatExpr& MatExpr::operator*=(Cplx s) {
    for (auto& e : entries_) e *= s;
    return *this;
}

MatExpr MatExpr::adjointed() const {
    MatExpr out(n_);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) out.at(i, j) = at(j, i).conjugated();
    }
    return out;
}

MatExpr MatExpr::transposed() const {
    MatExpr out(n_);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) out.at(i, j) = at(j, i);
    }
    return out;
}

MatExpr MatExpr::hermitian_part() const {
    MatExpr out = adjointed();
    out += *this;
    out *= Cplx(0.5, 0.0);
    return out;
}

MatExpr operator+(MatExpr a, const MatExpr& b) { return a += b, a; }
MatExpr operator-(MatExpr a, const MatExpr& b) { return a -= b, a; }
MatExpr operator*(Cplx s, MatExpr a) { return a *= s, a; }

MatExpr operator*(const Mat& k, const MatExpr& e) {
    const int n = e.dim();
    MatExpr out(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            CLinExpr acc;
            for (int l = 0; l < n; ++l) {
                if (k(i, l) == Cplx(0.0, 0.0)) continue;
                CLinExpr term = e.at(l, j);
                term *= k(i, l);
                acc += term;
            }
            acc.compress();
            out.at(i, j) = std::move(acc);
        }
    }
    return out;
}

MatExpr operator*(const MatExpr& e, const Mat& k) {
    const int n = e.dim();
    MatExpr out(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            CLinExpr acc;
            for (int l = 0; l < n; ++l) {
                if (k(l, j) == Cplx(0.0, 0.0)) continue;
                CLinExpr term = e.at(i, l);
                term *= k(l, j);
                acc += term;
            }
            acc.compress();
            out.at(i, j) = std::move(acc);
        }
    }
    return out;
}

MatExpr embed_block(const MatExpr& sub, int n, int i0, int j0) {
    MatExpr out(n);
    for (int i = 0; i < sub.dim(); ++i) {
        for (int j = 0; j < sub.dim(); ++j) out.at(i0 + i, j0 + j) = sub.at(i, j);
    }
    return out;
}

MatExpr partial_trace_first(const MatExpr& e, int dim_first, int dim_second) {
    if (e.dim() != dim_first * dim_second) {
        throw DimensionMismatch("partial_trace_first(MatExpr): size mismatch");
    }
    MatExpr out(dim_second);
    for (int i = 0; i < dim_second; ++i) {
        for (int j = 0; j < dim_second; ++j) {
            CLinExpr acc;
            for (int k = 0; k < dim_first; ++k) {
                acc += e.at(k * dim_second + i, k * dim_second + j);
            }
            acc.compress();
            out.at(i, j) = std::move(acc);
        }
    }
    return out;
}

CLinExpr trace(const MatExpr& e) {
    CLinExpr acc;
    for (int i = 0; i < e.dim(); ++i) acc += e.at(i, i);
    acc.compress();
    return acc;
}

LinExpr real_part(const CLinExpr& e) {
    LinExpr out(e.constant.real());
    double scale = std::abs(e.constant);
    for (const auto& [c, v] : e.terms) scale = std::max(scale, std::abs(v));
    for (const auto& [c, v] : e.terms) {
        if (std::abs(v.imag()) > 1e-9 * std::max(1.0, scale)) {
            throw Error("real_part: expression has a non-negligible imaginary part");
        }
        out.terms.emplace_back(c, v.real());
    }
    out.compress();
    return out;
}

VarId Problem::add_var(const std::string& name, int dim, bool matrix, bool conic) {
    VarInfo info;
    info.name = name;
    info.dim = dim;
    info.matrix = matrix;
    info.conic = conic;
    info.comp_offset = next_comp_;
    info.comps = matrix ? dim * dim : 1;
    next_comp_ += info.comps;
    vars_.push_back(std::move(info));
    return VarId{static_cast<int>(vars_.size()) - 1};
}

VarId Problem::add_hermitian_psd(const std::string& name, int dim) {
    return add_var(name, dim, true, true);
}

VarId Problem::add_hermitian_free(const std::string& name, int dim) {
    return add_var(name, dim, true, false);
}

VarId Problem::add_nonneg_scalar(const std::string& name) {
    return add_var(name, 1, false, true);
}

VarId Problem::add_free_scalar(const std::string& name) {
    return add_var(name, 1, false, false);
}

// Component layout of a Hermitian variable of dimension n:
//   [0, n)           diagonal (real)
//   [n, n^2), pairs  (Re, Im) of the strict upper triangle, row-major
MatExpr Problem::matrix(VarId id) const {
    const VarInfo& info = vars_.at(id.v);
    if (!info.matrix) throw Error("Problem::matrix: not a matrix variable");
    const int n = info.dim;
    MatExpr e(n);
    int off = info.comp_offset;
    for (int i = 0; i < n; ++i) e.at(i, i).terms.emplace_back(off + i, Cplx(1, 0));
    int pair = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++pair) {
            const int re = off + n + 2 * pair;
            const int im = re + 1;
            e.at(i, j).terms.emplace_back(re, Cplx(1, 0));
            e.at(i, j).terms.emplace_back(im, Cplx(0, 1));
            e.at(j, i).terms.emplace_back(re, Cplx(1, 0));
            e.at(j, i).terms.emplace_back(im, Cplx(0, -1));
        }
    }
    return e;
}

LinExpr Problem::scalar(VarId id) const {
    const VarInfo& info = vars_.at(id.v);
    if (info.matrix) throw Error("Problem::scalar: not a scalar variable");
    LinExpr e;
    e.terms.emplace_back(info.comp_offset, 1.0);
    return e;
}

void Problem::add_equality(LinExpr expr, double rhs) {
    expr.compress();
    equalities_.emplace_back(std::move(expr), rhs);
}

void Problem::add_equality_hermitian(const MatExpr& expr, const Mat& rhs) {
    const int n = expr.dim();
    if (rhs.rows() != n || rhs.cols() != n) {
        throw DimensionMismatch("add_equality_hermitian: rhs size mismatch");
    }
    const MatExpr h = expr.hermitian_part();
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const CLinExpr& e = h.at(i, j);
            LinExpr re(e.constant.real());
            LinExpr im(e.constant.imag());
            for (const auto& [c, v] : e.terms) {
                re.terms.emplace_back(c, v.real());
                im.terms.emplace_back(c, v.imag());
            }
            add_equality(std::move(re), rhs(i, j).real());
            if (i != j) add_equality(std::move(im), rhs(i, j).imag());
        }
    }
}

void Problem::add_equality_entrywise(const MatExpr& expr, const Mat& rhs) {
    const int n = expr.dim();
    if (rhs.rows() != n || rhs.cols() != n) {
        throw DimensionMismatch("add_equality_entrywise: rhs size mismatch");
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const CLinExpr& e = expr.at(i, j);
            LinExpr re(e.constant.real());
            LinExpr im(e.constant.imag());
            for (const auto& [c, v] : e.terms) {
                re.terms.emplace_back(c, v.real());
                im.terms.emplace_back(c, v.imag());
            }
            add_equality(std::move(re), rhs(i, j).real());
            add_equality(std::move(im), rhs(i, j).imag());
        }
    }
}

void Problem::add_psd(const MatExpr& expr) {
    psd_constraints_.push_back(expr.hermitian_part());
}

void Problem::add_nonneg(LinExpr expr) {
    expr.compress();
    nonneg_constraints_.push_back(std::move(expr));
}

LinExpr Problem::trace_norm_epigraph(const MatExpr& z) {
    const int n = z.dim();
    const std::string name = "_tracenorm" + std::to_string(gadget_counter_++);
    VarId y = add_hermitian_psd(name, 2 * n);
    MatExpr ym = matrix(y);
    // pin the off-diagonal corner of the block variable to z
    MatExpr corner(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) corner.at(i, j) = ym.at(i, n + j);
    }
    corner -= z;
    add_equality_entrywise(corner, Mat::Zero(n, n));
    CLinExpr tr;
    for (int i = 0; i < 2 * n; ++i) tr += ym.at(i, i);
    LinExpr t = real_part(tr);
    t *= 0.5;
    return t;
}

void Problem::add_spectral_norm_bound(const MatExpr& z, const LinExpr& t) {
    const int n = z.dim();
    MatExpr block(2 * n);
    for (int i = 0; i < n; ++i) {
        CLinExpr diag;
        diag.constant = t.constant;
        for (const auto& [c, v] : t.terms) diag.terms.emplace_back(c, Cplx(v, 0));
        block.at(i, i) = diag;
        block.at(n + i, n + i) = diag;
    }
    const MatExpr zadj = z.adjointed();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            block.at(i, n + j) = z.at(i, j);
            block.at(n + i, j) = zadj.at(i, j);
        }
    }
    add_psd(block);
}

void Problem::set_objective(Sense sense, LinExpr objective) {
    objective.compress();
    sense_ = sense;
    objective_ = std::move(objective);
}

const Mat& Solution::matrix(const std::string& name) const {
    auto it = matrices.find(name);
    if (it == matrices.end()) throw Error("Solution::matrix: no value for " + name);
    return it->second;
}

double Solution::scalar(const std::string& name) const {
    auto it = scalars.find(name);
    if (it == scalars.end()) throw Error("Solution::scalar: no value for " + name);
    return it->second;
}

}  // namespace qmeas::conic
