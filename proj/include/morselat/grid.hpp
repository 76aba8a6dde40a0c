#pragma once
#include <string>
#include <utility>
#include <vector>

#include "morselat/bits.hpp"
#include "morselat/lattice.hpp"
#include "morselat/lift.hpp"

namespace morselat {

// n closed equal-width cells covering [lo, hi]
struct CellGrid {
    double lo = -1.0;
    double hi = 1.0;
    int n = 1;
    int dim = 1;  // only 1 is supported

    CellGrid() = default;
    CellGrid(double lo, double hi, int n);

    double width() const { return (hi - lo) / n; }
    double cell_lo(int i) const { return lo + i * width(); }
    double cell_hi(int i) const { return lo + (i + 1) * width(); }
    Mask all() const { return full_mask(n); }
    // cells whose closed interval meets [a, b]
    Mask cells_meeting(double a, double b) const;
    Mask cells_containing(double x) const { return cells_meeting(x, x); }
    // maximal runs of adjacent cells as closed intervals
    std::vector<std::pair<double, double>> support(Mask cells) const;
    std::vector<std::string> labels() const;
};

struct CellMap {
    CellGrid grid;
    std::vector<Mask> arrows;
    // ingestion parameters, empty expr when built from explicit arrows
    std::string expr;
    int samples_per_cell = 0;
    double padding = 0.0;

    CellMap() = default;
    // throws ImageOutOfDomain on an empty or out-of-range target set
    CellMap(CellGrid g, std::vector<Mask> arrows);

    int size() const { return grid.n; }
    Mask all() const { return grid.all(); }
};

CellMap ingest_interval_map(const std::string& expr, const CellGrid& grid,
                            int samples_per_cell = 32, double padding = 1e-9);

Mask cell_image(const CellMap& F, Mask N);
Mask cell_preimage(const CellMap& F, Mask N);
Mask forward_closure(const CellMap& F, Mask N);
Mask backward_closure(const CellMap& F, Mask N);

// grid-neighbour interior and closure
Mask comb_interior(const CellGrid& g, Mask N);
Mask comb_closure(const CellGrid& g, Mask N);

bool is_attracting_block(const CellMap& F, Mask N);
bool is_repelling_block(const CellMap& F, Mask N);

// strongly connected components of the graph restricted to N
std::vector<Mask> components(const CellMap& F, Mask N);
Mask comb_inv(const CellMap& F, Mask N);
Mask comb_inv_plus(const CellMap& F, Mask N);

struct BlockLattices {
    std::vector<Mask> attracting;  // canonical order
    std::vector<Mask> repelling;
};

// seeds are cell sets; without seeds every subset is tested (TooLarge past the bound)
BlockLattices block_lattices(const CellMap& F, const std::vector<Mask>& seeds = {});
std::vector<Mask> seed_cells(const CellGrid& g, const std::vector<double>& points);

// throws NotALattice if the join law or the meet identity fails on the blocks
SetLattice comb_att_lattice(const CellMap& F, const std::vector<Mask>& seeds = {});
SetLattice comb_rep_lattice(const CellMap& F, const std::vector<Mask>& seeds = {});

// W_k = W & F^-1(W_{k-1}), at most max_depth steps, stopping at a fixed
// point or once nothing outside target is left
Mask shrink_repelling_block(const CellMap& F, Mask W, Mask target, int max_depth);

struct GridLift {
    Embedding emb;
    LiftCertificate cert;
};

// family: repeller images; throws NotASublattice
LiftProblem grid_lift_problem(const CellMap& F, const Poset& P, const std::vector<Mask>& downsets,
                              const std::vector<Mask>& s, const std::vector<Mask>& seeds = {});
Embedding grid_rep_embedding(const CellMap& F, const std::vector<Mask>& family);
GridLift grid_repeller_lift(const CellMap& F, const std::vector<Mask>& family,
                            const std::vector<Mask>& seeds = {});

// family: attractor images.  direct = false transports through the
// repeller side; direct = true lifts Inv on attracting blocks with least
// fibre conditioners found by exhaustive block search.
Embedding grid_att_embedding(const CellMap& F, const std::vector<Mask>& family);
GridLift grid_attractor_lift(const CellMap& F, const std::vector<Mask>& family,
                             const std::vector<Mask>& seeds = {}, bool direct = false);

// comb_inv on every attracting block, for the falsifier
FiniteHom grid_att_hom(const CellMap& F, const SetLattice& L);

}  // namespace morselat
