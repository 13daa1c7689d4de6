#include "src/conic/compile.hpp"

#include <algorithm>
#include <cmath>

namespace qmeas::conic::detail {

namespace {

struct CompCoeff {
    int comp;
    Cplx coeff;
};

// Gathers the Hermitian coefficient data of one matrix-expression entry.
void split_entry(const CLinExpr& e, Cplx& constant, std::vector<CompCoeff>& terms) {
    constant = e.constant;
    terms.clear();
    for (const auto& [c, v] : e.terms) terms.push_back({c, v});
}

class Builder {
  public:
    Builder(const Problem& p, Placement placement) : p_(p), placement_(placement) {}

    Compiled build();

  private:
    // --- shared helpers -------------------------------------------------
    int add_block(int emb_dim) {
        out_.form.block_dims.push_back(emb_dim);
        out_.form.C.emplace_back(RMat::Zero(emb_dim, emb_dim));
        out_.form.A_block.emplace_back();
        return static_cast<int>(out_.form.block_dims.size()) - 1;
    }

    int add_lp_slot() {
        ++out_.form.lp_dim;
        out_.form.lp_cols.emplace_back();
        lp_c_.push_back(0.0);
        return out_.form.lp_dim - 1;
    }

    void push_block_entry(int block, int row, int r, int c, double v) {
        if (std::abs(v) < 1e-300) return;
        if (r > c) std::swap(r, c);
        out_.form.A_block[block].push_back({row, r, c, v});
    }

    // Records realizing "coefficient coeff on Hermitian component" against an
    // embedded block, normalized so that <A, E(H)> accumulates coeff * comp.
    void push_quarter_records(int block, int row, int n, int local_comp, double coeff) {
        if (local_comp < n) {
            const int i = local_comp;
            push_block_entry(block, row, i, i, coeff / 2.0);
            push_block_entry(block, row, n + i, n + i, coeff / 2.0);
            return;
        }
        const int pair = (local_comp - n) / 2;
        const bool is_im = ((local_comp - n) % 2) != 0;
        const auto [i, j] = pair_indices(n, pair);
        if (!is_im) {
            push_block_entry(block, row, i, j, coeff / 4.0);
            push_block_entry(block, row, n + i, n + j, coeff / 4.0);
        } else {
            push_block_entry(block, row, i, n + j, -coeff / 4.0);
            push_block_entry(block, row, j, n + i, coeff / 4.0);
        }
    }

    static std::pair<int, int> pair_indices(int n, int pair) {
        // inverse of the row-major strict-upper-triangle enumeration
        int i = 0;
        int remaining = pair;
        while (remaining >= n - 1 - i) {
            remaining -= n - 1 - i;
            ++i;
        }
        return {i, i + 1 + remaining};
    }

    // Embedding records of a Hermitian matrix entry (i <= j) with value z,
    // scaled by sign, pushed as internal rows for component `row`.
    void push_embedding_records(int block, int row, int n, int i, int j, Cplx z,
                                double sign) {
        const double a = sign * z.real();
        const double bim = sign * z.imag();
        if (i == j) {
            push_block_entry(block, row, i, i, a);
            push_block_entry(block, row, n + i, n + i, a);
        } else {
            push_block_entry(block, row, i, j, a);
            push_block_entry(block, row, n + i, n + j, a);
            push_block_entry(block, row, i, n + j, -bim);
            push_block_entry(block, row, j, n + i, bim);
        }
    }

    void add_embedded_constant(RMat& target, int n, int i, int j, Cplx z) {
        const double a = z.real();
        const double bim = z.imag();
        if (i == j) {
            target(i, i) += a;
            target(n + i, n + i) += a;
        } else {
            target(i, j) += a;
            target(j, i) += a;
            target(n + i, n + j) += a;
            target(n + j, n + i) += a;
            target(i, n + j) += -bim;
            target(n + j, i) += -bim;
            target(j, n + i) += bim;
            target(n + i, j) += bim;
        }
    }

    // --- primal-side emission -------------------------------------------
    void build_primal_side();
    int new_row(double rhs) {
        out_.form.b.conservativeResize(out_.form.rows + 1);
        out_.form.b(out_.form.rows) = rhs;
        return out_.form.rows++;
    }
    // scatter a coefficient on one component into a primal-side row
    void scatter_primal(int row, int comp, double coeff);
    void emit_primal_row(const LinExpr& e, double rhs);

    // --- dual-side emission ----------------------------------------------
    void build_dual_side();

    const Problem& p_;
    Placement placement_;
    Compiled out_;
    std::vector<double> lp_c_;
    // primal-side per-component location: block quarter-records or lp/free slot
    struct CompLoc {
        enum Kind { InBlock, InLp, InFree } kind = InLp;
        int block = -1;
        int block_dim = 0;   // Hermitian dimension n
        int local_comp = 0;  // component index within the variable
        int slot = 0;        // lp or free slot
    };
    std::vector<CompLoc> comp_loc_;
};

void Builder::scatter_primal(int row, int comp, double coeff) {
    const CompLoc& loc = comp_loc_[comp];
    switch (loc.kind) {
        case CompLoc::InBlock:
            push_quarter_records(loc.block, row, loc.block_dim, loc.local_comp, coeff);
            break;
        case CompLoc::InLp:
            out_.form.lp_cols[loc.slot].emplace_back(row, coeff);
            break;
        case CompLoc::InFree:
            out_.form.F(row, loc.slot) += coeff;
            break;
    }
}

void Builder::emit_primal_row(const LinExpr& e, double rhs) {
    const int row = new_row(rhs - e.constant);
    for (const auto& [comp, coeff] : e.terms) scatter_primal(row, comp, coeff);
}

void Builder::build_primal_side() {
    auto& form = out_.form;
    // Count free slots first so F can be sized before rows are emitted.
    int free_slots = 0;
    for (const auto& v : p_.variables()) {
        if (!v.conic) free_slots += v.comps;
    }
    form.free_dim = free_slots;

    // Locate variables.
    int free_at = 0;
    for (const auto& v : p_.variables()) {
        VarLocation loc;
        if (v.matrix && v.conic) {
            const int blk = add_block(2 * v.dim);
            loc.kind = VarLocation::Block;
            loc.index = blk;
            out_.psd_var_blocks.push_back(blk);
            for (int c = 0; c < v.comps; ++c) {
                comp_loc_[v.comp_offset + c] = {CompLoc::InBlock, blk, v.dim, c, 0};
            }
        } else if (!v.conic) {
            loc.kind = VarLocation::FreeSlot;
            loc.index = free_at;
            for (int c = 0; c < v.comps; ++c) {
                comp_loc_[v.comp_offset + c] = {CompLoc::InFree, -1, 0, c, free_at + c};
            }
            free_at += v.comps;
        } else {
            const int slot = add_lp_slot();
            loc.kind = VarLocation::LpSlot;
            loc.index = slot;
            comp_loc_[v.comp_offset] = {CompLoc::InLp, -1, 0, 0, slot};
        }
        out_.locations.push_back(loc);
    }

    // Rows are not known yet; size F generously by an upper bound then shrink.
    int row_bound = static_cast<int>(p_.equalities().size()) +
                    static_cast<int>(p_.nonneg_constraints().size());
    for (const auto& c : p_.psd_constraints()) row_bound += c.dim() * c.dim();
    form.F = RMat::Zero(row_bound, std::max(1, form.free_dim));

    // Objective: internal minimization.
    const double sgn = (p_.objective_sense() == Sense::Minimize) ? 1.0 : -1.0;
    form.obj_sign = sgn;
    form.obj_offset = p_.objective().constant;
    form.f_free = RVec::Zero(std::max(1, form.free_dim));
    for (const auto& [comp, coeff] : p_.objective().terms) {
        const CompLoc& loc = comp_loc_[comp];
        const double v = sgn * coeff;
        switch (loc.kind) {
            case CompLoc::InBlock: {
                const int n = loc.block_dim;
                RMat& C = form.C[loc.block];
                // dense symmetric accumulation of the quarter records
                if (loc.local_comp < n) {
                    const int i = loc.local_comp;
                    C(i, i) += v / 2.0;
                    C(n + i, n + i) += v / 2.0;
                } else {
                    const int pair = (loc.local_comp - n) / 2;
                    const bool is_im = ((loc.local_comp - n) % 2) != 0;
                    const auto [i, j] = pair_indices(n, pair);
                    if (!is_im) {
                        C(i, j) += v / 4.0;
                        C(j, i) += v / 4.0;
                        C(n + i, n + j) += v / 4.0;
                        C(n + j, n + i) += v / 4.0;
                    } else {
                        C(i, n + j) += -v / 4.0;
                        C(n + j, i) += -v / 4.0;
                        C(j, n + i) += v / 4.0;
                        C(n + i, j) += v / 4.0;
                    }
                }
                break;
            }
            case CompLoc::InLp:
                lp_c_[loc.slot] += v;
                break;
            case CompLoc::InFree:
                form.f_free(loc.slot) += v;
                break;
        }
    }

    // Equalities.
    for (const auto& [expr, rhs] : p_.equalities()) emit_primal_row(expr, rhs);

    // Scalar inequalities: expr - s = 0, s >= 0.
    for (const auto& expr : p_.nonneg_constraints()) {
        const int slot = add_lp_slot();
        const int row = new_row(-expr.constant);
        for (const auto& [comp, coeff] : expr.terms) scatter_primal(row, comp, coeff);
        form.lp_cols[slot].emplace_back(row, -1.0);
    }

    // PSD constraints: slack block pinned entrywise to the expression.
    Cplx cst;
    std::vector<CompCoeff> terms;
    for (const auto& expr : p_.psd_constraints()) {
        const int n = expr.dim();
        const int blk = add_block(2 * n);
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                split_entry(expr.at(i, j), cst, terms);
                // slack components: diag i, or the (re, im) pair of (i, j)
                if (i == j) {
                    const int row = new_row(-cst.real());
                    push_quarter_records(blk, row, n, i, 1.0);
                    for (const auto& t : terms) scatter_primal(row, t.comp, -t.coeff.real());
                } else {
                    const int pair_idx =
                        n + 2 * ((i * (2 * n - i - 1)) / 2 + (j - i - 1));
                    const int row_re = new_row(-cst.real());
                    push_quarter_records(blk, row_re, n, pair_idx, 1.0);
                    for (const auto& t : terms)
                        scatter_primal(row_re, t.comp, -t.coeff.real());
                    const int row_im = new_row(-cst.imag());
                    push_quarter_records(blk, row_im, n, pair_idx + 1, 1.0);
                    for (const auto& t : terms)
                        scatter_primal(row_im, t.comp, -t.coeff.imag());
                }
            }
        }
    }

    form.F.conservativeResize(form.rows, std::max(1, form.free_dim));
    form.c_lp = RVec::Zero(static_cast<Eigen::Index>(lp_c_.size()));
    for (std::size_t i = 0; i < lp_c_.size(); ++i) form.c_lp(i) = lp_c_[i];
}

void Builder::build_dual_side() {
    auto& form = out_.form;
    form.rows = p_.component_count();
    form.b = RVec::Zero(form.rows);

    // Objective: internal maximization of b'y.
    const double sgn = (p_.objective_sense() == Sense::Maximize) ? 1.0 : -1.0;
    form.obj_sign = sgn;
    form.obj_offset = p_.objective().constant;
    for (const auto& [comp, coeff] : p_.objective().terms) form.b(comp) += sgn * coeff;

    for (const auto& v : p_.variables()) {
        VarLocation loc;
        loc.kind = VarLocation::YComponents;
        loc.index = v.comp_offset;
        out_.locations.push_back(loc);
    }

    // Conic variable domains.
    for (const auto& v : p_.variables()) {
        if (!v.conic) continue;
        if (v.matrix) {
            const int n = v.dim;
            const int blk = add_block(2 * n);
            out_.psd_var_blocks.push_back(blk);
            // S_blk = E(V(y)): A_comp = -E(basis element)
            for (int i = 0; i < n; ++i) {
                push_embedding_records(blk, v.comp_offset + i, n, i, i, Cplx(1, 0), -1.0);
            }
            int pair = 0;
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j, ++pair) {
                    const int re = v.comp_offset + n + 2 * pair;
                    push_embedding_records(blk, re, n, i, j, Cplx(1, 0), -1.0);
                    push_embedding_records(blk, re + 1, n, i, j, Cplx(0, 1), -1.0);
                }
            }
        } else {
            const int slot = add_lp_slot();
            form.lp_cols[slot].emplace_back(v.comp_offset, -1.0);
        }
    }

    // Scalar inequalities -> LP slots.
    for (const auto& expr : p_.nonneg_constraints()) {
        const int slot = add_lp_slot();
        lp_c_[slot] = expr.constant;
        for (const auto& [comp, coeff] : expr.terms) {
            form.lp_cols[slot].emplace_back(comp, -coeff);
        }
    }

    // PSD constraints -> slack blocks.
    Cplx cst;
    std::vector<CompCoeff> terms;
    for (const auto& expr : p_.psd_constraints()) {
        const int n = expr.dim();
        const int blk = add_block(2 * n);
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                split_entry(expr.at(i, j), cst, terms);
                add_embedded_constant(form.C[blk], n, i, j, cst);
                for (const auto& t : terms) {
                    push_embedding_records(blk, t.comp, n, i, j, t.coeff, -1.0);
                }
            }
        }
    }

    // Equalities on y -> columns of F.
    form.free_dim = static_cast<int>(p_.equalities().size());
    form.F = RMat::Zero(form.rows, std::max(1, form.free_dim));
    form.f_free = RVec::Zero(std::max(1, form.free_dim));
    int col = 0;
    for (const auto& [expr, rhs] : p_.equalities()) {
        form.f_free(col) = rhs - expr.constant;
        for (const auto& [comp, coeff] : expr.terms) form.F(comp, col) += coeff;
        ++col;
    }

    form.c_lp = RVec::Zero(static_cast<Eigen::Index>(lp_c_.size()));
    for (std::size_t i = 0; i < lp_c_.size(); ++i) form.c_lp(i) = lp_c_[i];
}

Compiled Builder::build() {
    comp_loc_.resize(p_.component_count());

    Placement placement = placement_;
    if (placement == Placement::Auto) {
        // Schur dimension: primal side pays one row per scalarized constraint,
        // dual side pays one row per variable component.
        long primal_rows = static_cast<long>(p_.equalities().size()) +
                           static_cast<long>(p_.nonneg_constraints().size());
        for (const auto& c : p_.psd_constraints()) {
            primal_rows += static_cast<long>(c.dim()) * c.dim();
        }
        const long dual_rows = p_.component_count();
        placement = (primal_rows <= dual_rows) ? Placement::PrimalSide : Placement::DualSide;
    }
    out_.placement = placement;

    if (placement == Placement::PrimalSide) {
        build_primal_side();
    } else {
        build_dual_side();
    }

    if (out_.form.c_lp.size() == 0) out_.form.c_lp = RVec::Zero(out_.form.lp_dim);

    // Group per-block entries by row for the Schur assembly.
    for (auto& entries : out_.form.A_block) {
        std::stable_sort(entries.begin(), entries.end(),
                         [](const StdForm::Entry& a, const StdForm::Entry& b) {
                             return a.row < b.row;
                         });
    }
    return out_;
}

}  // namespace

Compiled compile(const Problem& problem, Placement placement) {
    return Builder(problem, placement).build();
}

}  // namespace qmeas::conic::detail
