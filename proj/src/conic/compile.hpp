#pragma once

#include <vector>

#include "qmeas/conic/problem.hpp"

namespace qmeas::conic::detail {

// Internal standard pair solved by the interior-point core:
//   (P) min <C,X> + f'u   s.t. A(X) + F u = b,  X in (PSD blocks) x (LP orthant)
//   (D) max b'y           s.t. A^T(y) + S = C,  F^T y = f,  S >= 0
// PSD blocks are real symmetric; Hermitian data enters through its real
// embedding. A user problem is placed on whichever side yields the smaller
// Schur complement.
struct StdForm {
    struct Entry {
        int row;  // constraint index (primal side) or component index (dual side)
        int r, c; // r <= c; value applies symmetrically
        double v;
    };

    std::vector<int> block_dims;
    int lp_dim = 0;
    int free_dim = 0;
    int rows = 0;

    std::vector<RMat> C;  // per-block symmetric objective data
    RVec c_lp;
    RVec f_free;
    RVec b;
    RMat F;  // rows x free_dim

    std::vector<std::vector<Entry>> A_block;  // per block, sorted by row
    std::vector<std::vector<std::pair<int, double>>> lp_cols;

    // user objective = obj_sign * (internal optimal value) + obj_offset
    double obj_sign = 1.0;
    double obj_offset = 0.0;
};

struct InternalResult {
    Status status = Status::NumericalTrouble;
    std::vector<RMat> X;
    RVec x_lp;
    RVec y;
    RVec u;
    std::vector<RMat> S;
    RVec s_lp;
    double pobj = 0.0;
    double dobj = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    int iterations = 0;
    std::string message;
};

struct VarLocation {
    enum Kind { Block, LpSlot, FreeSlot, YComponents } kind = YComponents;
    int index = 0;  // block id, lp offset, free offset, or component offset
};

struct Compiled {
    StdForm form;
    Placement placement = Placement::DualSide;
    std::vector<VarLocation> locations;  // per variable
    // block index per PSD matrix variable (slack block on the dual side)
    std::vector<int> psd_var_blocks;
};

Compiled compile(const Problem& problem, Placement placement);

InternalResult run_interior_point(const StdForm& form, const SolverConfig& config);

}  // namespace qmeas::conic::detail
