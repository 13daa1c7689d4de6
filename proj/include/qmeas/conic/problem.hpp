#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qmeas/linalg.hpp"

namespace qmeas::conic {

enum class Status { Optimal, Infeasible, NumericalTrouble };
enum class Sense { Minimize, Maximize };

/// Which side of the internal standard pair a problem is compiled onto.
/// Auto picks the side with the smaller Schur complement.
enum class Placement { Auto, PrimalSide, DualSide };

struct SolverConfig {
    double rel_gap = 1e-8;    // relative duality-gap target
    double feas_tol = 1e-7;   // independent re-verification threshold
    int max_iterations = 200;
    Placement placement = Placement::Auto;
    bool verbose = false;
};

/// Real affine expression over the problem's scalar components.
struct LinExpr {
    double constant = 0.0;
    std::vector<std::pair<int, double>> terms;

    LinExpr() = default;
    explicit LinExpr(double c) : constant(c) {}

    LinExpr& operator+=(const LinExpr& other);
    LinExpr& operator-=(const LinExpr& other);
    LinExpr& operator*=(double s);
    void compress();
};

LinExpr operator+(LinExpr a, const LinExpr& b);
LinExpr operator-(LinExpr a, const LinExpr& b);
LinExpr operator*(double s, LinExpr a);

/// Complex affine expression over real scalar components.
struct CLinExpr {
    Cplx constant{0.0, 0.0};
    std::vector<std::pair<int, Cplx>> terms;

    CLinExpr& operator+=(const CLinExpr& other);
    CLinExpr& operator-=(const CLinExpr& other);
    CLinExpr& operator*=(Cplx s);
    CLinExpr conjugated() const;
    void compress();
};

/// Square matrix-valued affine expression, stored entrywise.
class MatExpr {
  public:
    MatExpr() = default;
    explicit MatExpr(int n) : n_(n), entries_(static_cast<std::size_t>(n) * n) {}
    static MatExpr constant(const Mat& m);

    int dim() const { return n_; }
    CLinExpr& at(int i, int j) { return entries_[static_cast<std::size_t>(i) * n_ + j]; }
    const CLinExpr& at(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * n_ + j];
    }

    MatExpr& operator+=(const MatExpr& other);
    MatExpr& operator-=(const MatExpr& other);
    MatExpr& operator*=(Cplx s);
    MatExpr adjointed() const;
    MatExpr transposed() const;
    /// (E + E^dag)/2
    MatExpr hermitian_part() const;

  private:
    int n_ = 0;
    std::vector<CLinExpr> entries_;
};

MatExpr operator+(MatExpr a, const MatExpr& b);
MatExpr operator-(MatExpr a, const MatExpr& b);
MatExpr operator*(Cplx s, MatExpr a);
MatExpr operator*(const Mat& k, const MatExpr& e);
MatExpr operator*(const MatExpr& e, const Mat& k);

/// Place `sub` into an n x n zero matrix at offset (i0, j0).
MatExpr embed_block(const MatExpr& sub, int n, int i0, int j0);
MatExpr partial_trace_first(const MatExpr& e, int dim_first, int dim_second);
CLinExpr trace(const MatExpr& e);
/// Real part of a complex expression; imaginary coefficients must be negligible.
LinExpr real_part(const CLinExpr& e);

struct VarId {
    int v = -1;
};

/// Solver-agnostic conic problem: Hermitian matrix variables (PSD or free),
/// scalar variables, affine equalities/inequalities, PSD constraints, and a
/// linear objective.
class Problem {
  public:
    VarId add_hermitian_psd(const std::string& name, int dim);
    VarId add_hermitian_free(const std::string& name, int dim);
    VarId add_nonneg_scalar(const std::string& name);
    VarId add_free_scalar(const std::string& name);

    MatExpr matrix(VarId id) const;
    LinExpr scalar(VarId id) const;

    void add_equality(LinExpr expr, double rhs = 0.0);
    /// Entrywise equality of a Hermitian-valued expression (upper triangle scalarized).
    void add_equality_hermitian(const MatExpr& expr, const Mat& rhs);
    /// Entrywise equality of a general matrix-valued expression.
    void add_equality_entrywise(const MatExpr& expr, const Mat& rhs);
    void add_psd(const MatExpr& expr);
    void add_nonneg(LinExpr expr);

    /// t >= ||z||_1 through the block form
    ///   [[Y1, z], [z^dag, Y2]] >= 0,  t = (tr Y1 + tr Y2)/2.
    /// Returns the expression for t.
    LinExpr trace_norm_epigraph(const MatExpr& z);

    /// ||z||_inf <= t through the block form [[t I, z], [z^dag, t I]] >= 0.
    void add_spectral_norm_bound(const MatExpr& z, const LinExpr& t);

    void set_objective(Sense sense, LinExpr objective);

    // introspection used by the compiler, verifier, and tests
    struct VarInfo {
        std::string name;
        int dim = 1;          // 1 for scalars
        bool matrix = false;  // Hermitian matrix variable
        bool conic = true;    // PSD for matrices, >= 0 for scalars
        int comp_offset = 0;
        int comps = 1;
    };
    const std::vector<VarInfo>& variables() const { return vars_; }
    int component_count() const { return next_comp_; }
    const std::vector<std::pair<LinExpr, double>>& equalities() const { return equalities_; }
    const std::vector<MatExpr>& psd_constraints() const { return psd_constraints_; }
    const std::vector<LinExpr>& nonneg_constraints() const { return nonneg_constraints_; }
    Sense objective_sense() const { return sense_; }
    const LinExpr& objective() const { return objective_; }

  private:
    VarId add_var(const std::string& name, int dim, bool matrix, bool conic);

    std::vector<VarInfo> vars_;
    int next_comp_ = 0;
    int gadget_counter_ = 0;
    std::vector<std::pair<LinExpr, double>> equalities_;
    std::vector<MatExpr> psd_constraints_;
    std::vector<LinExpr> nonneg_constraints_;
    Sense sense_ = Sense::Minimize;
    LinExpr objective_;
};

struct Solution {
    Status status = Status::NumericalTrouble;
    double objective = 0.0;
    std::map<std::string, Mat> matrices;
    std::map<std::string, double> scalars;
    std::map<std::string, RMat> raw_blocks;  // embedded solver blocks of matrix vars
    double reported_gap = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    int iterations = 0;
    std::string message;

    const Mat& matrix(const std::string& name) const;
    double scalar(const std::string& name) const;
};

Solution solve(const Problem& problem, const SolverConfig& config = {});

struct Violation {
    std::string what;
    double magnitude = 0.0;
};

/// Recomputes every constraint residual from the returned variable values,
/// independently of the solver; returns violations above tol.
std::vector<Violation> verify_feasibility(const Problem& problem, const Solution& solution,
                                          double tol = SolverConfig{}.feas_tol);

}  // namespace qmeas::conic
