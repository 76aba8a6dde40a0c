#include "morselat/grid.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "morselat/error.hpp"
#include "morselat/expr.hpp"
#include "morselat/order.hpp"

namespace morselat {

CellGrid::CellGrid(double lo_, double hi_, int n_) : lo(lo_), hi(hi_), n(n_) {
    if (!(lo < hi)) throw Error(ErrorKind::ParseError, "grid domain needs lo < hi");
    if (n < 1) throw Error(ErrorKind::ParseError, "grid needs at least one cell");
    if (n > 64) throw Error(ErrorKind::TooLarge, "grids are limited to 64 cells");
}

Mask CellGrid::cells_meeting(double a, double b) const {
    Mask m = 0;
    for (int d = 0; d < n; ++d)
        if (cell_lo(d) <= b && cell_hi(d) >= a) m |= bit(d);
    return m;
}

std::vector<std::pair<double, double>> CellGrid::support(Mask cells) const {
    std::vector<std::pair<double, double>> out;
    int i = 0;
    while (i < n) {
        if (!has(cells, i)) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < n && has(cells, j + 1)) ++j;
        out.emplace_back(cell_lo(i), cell_hi(j));
        i = j + 1;
    }
    return out;
}

std::vector<std::string> CellGrid::labels() const {
    std::vector<std::string> l;
    for (int i = 0; i < n; ++i) l.push_back(std::to_string(i));
    return l;
}

CellMap::CellMap(CellGrid g, std::vector<Mask> a) : grid(g), arrows(std::move(a)) {
    if (static_cast<int>(arrows.size()) != grid.n)
        throw Error(ErrorKind::ParseError, "need one arrow set per cell");
    for (int c = 0; c < grid.n; ++c) {
        if (arrows[c] == 0)
            throw Error(ErrorKind::ImageOutOfDomain, "cell " + std::to_string(c) + " has no target");
        if (!subset(arrows[c], grid.all()))
            throw Error(ErrorKind::ImageOutOfDomain,
                        "cell " + std::to_string(c) + " targets a cell outside the grid");
    }
}

CellMap ingest_interval_map(const std::string& expr, const CellGrid& grid, int samples,
                            double padding) {
    if (samples < 2) throw Error(ErrorKind::ParseError, "samples_per_cell must be at least 2");
    if (!(padding >= 0)) throw Error(ErrorKind::ParseError, "padding must be nonnegative");
    ExprPtr f = parse_expr(expr);
    const int n = grid.n;
    std::vector<Mask> arrows(n, 0);
    std::vector<double> bad(n, 0.0);
    std::vector<char> failed(n, 0);
    auto work = [&](int c) {
        double a = grid.cell_lo(c), b = grid.cell_hi(c);
        double mn = INFINITY, mx = -INFINITY;
        for (int k = 0; k < samples; ++k) {
            double x = k == samples - 1 ? b : a + (b - a) * k / (samples - 1);
            double y = f->eval(x);
            if (!std::isfinite(y) || y < grid.lo || y > grid.hi) {
                failed[c] = 1;
                bad[c] = y;
                return;
            }
            mn = std::min(mn, y);
            mx = std::max(mx, y);
        }
        arrows[c] = grid.cells_meeting(mn - padding, mx + padding);
    };
    unsigned hw = std::max(1U, std::thread::hardware_concurrency());
    int workers = static_cast<int>(std::min<unsigned>(hw, static_cast<unsigned>(n)));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int c = w; c < n; c += workers) work(c);
        });
    for (auto& t : pool) t.join();
    for (int c = 0; c < n; ++c)
        if (failed[c]) {
            std::ostringstream os;
            os << "cell " << c << " maps to " << bad[c];
            throw Error(ErrorKind::ImageOutOfDomain, os.str());
        }
    CellMap F(grid, arrows);
    F.expr = expr;
    F.samples_per_cell = samples;
    F.padding = padding;
    return F;
}

Mask cell_image(const CellMap& F, Mask N) {
    Mask out = 0;
    for (int c : members(N)) out |= F.arrows[c];
    return out;
}

Mask cell_preimage(const CellMap& F, Mask N) {
    Mask out = 0;
    for (int c = 0; c < F.size(); ++c)
        if (F.arrows[c] & N) out |= bit(c);
    return out;
}

Mask forward_closure(const CellMap& F, Mask N) {
    Mask cur = N;
    for (;;) {
        Mask nxt = cur | cell_image(F, cur);
        if (nxt == cur) return cur;
        cur = nxt;
    }
}

Mask backward_closure(const CellMap& F, Mask N) {
    Mask cur = N;
    for (;;) {
        Mask nxt = cur | cell_preimage(F, cur);
        if (nxt == cur) return cur;
        cur = nxt;
    }
}

Mask comb_interior(const CellGrid& g, Mask N) {
    Mask out = 0;
    for (int c : members(N)) {
        bool ok = (c == 0 || has(N, c - 1)) && (c == g.n - 1 || has(N, c + 1));
        if (ok) out |= bit(c);
    }
    return out;
}

Mask comb_closure(const CellGrid& g, Mask N) {
    Mask out = N;
    for (int c : members(N)) {
        if (c > 0) out |= bit(c - 1);
        if (c + 1 < g.n) out |= bit(c + 1);
    }
    return out;
}

bool is_attracting_block(const CellMap& F, Mask N) { return subset(cell_image(F, N), N); }
bool is_repelling_block(const CellMap& F, Mask N) { return subset(cell_preimage(F, N), N); }

std::vector<Mask> components(const CellMap& F, Mask N) {
    // Tarjan
    const int n = F.size();
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<char> on(n, 0);
    std::vector<int> stack;
    std::vector<Mask> out;
    int counter = 0;
    std::function<void(int)> visit = [&](int v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on[v] = 1;
        for (int w : members(F.arrows[v] & N)) {
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            Mask comp = 0;
            int w;
            do {
                w = stack.back();
                stack.pop_back();
                on[w] = 0;
                comp |= bit(w);
            } while (w != v);
            out.push_back(comp);
        }
    };
    for (int v : members(N))
        if (index[v] < 0) visit(v);
    return out;
}

namespace {

Mask cyclic_cells(const CellMap& F, Mask N) {
    Mask cyc = 0;
    for (Mask c : components(F, N)) {
        int v = std::countr_zero(c);
        if (count(c) > 1 || has(F.arrows[v], v)) cyc |= c;
    }
    return cyc;
}

Mask reach_within(const CellMap& F, Mask N, Mask from, bool forward) {
    Mask cur = from & N;
    for (;;) {
        Mask step = forward ? cell_image(F, cur) : cell_preimage(F, cur);
        Mask nxt = cur | (step & N);
        if (nxt == cur) return cur;
        cur = nxt;
    }
}

}  // namespace

Mask comb_inv(const CellMap& F, Mask N) {
    Mask cyc = cyclic_cells(F, N);
    return reach_within(F, N, cyc, true) & reach_within(F, N, cyc, false);
}

Mask comb_inv_plus(const CellMap& F, Mask N) {
    return reach_within(F, N, cyclic_cells(F, N), false);
}

std::vector<Mask> seed_cells(const CellGrid& g, const std::vector<double>& points) {
    std::vector<Mask> out;
    for (double x : points) {
        if (x < g.lo || x > g.hi) {
            std::ostringstream os;
            os << "seed " << x << " lies outside the domain";
            throw Error(ErrorKind::ImageOutOfDomain, os.str());
        }
        out.push_back(g.cells_containing(x));
    }
    return out;
}

namespace {

std::vector<Mask> close_union_intersection(std::set<Mask> fam) {
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<Mask> cur(fam.begin(), fam.end());
        for (size_t i = 0; i < cur.size(); ++i)
            for (size_t j = i + 1; j < cur.size(); ++j) {
                grew |= fam.insert(cur[i] | cur[j]).second;
                grew |= fam.insert(cur[i] & cur[j]).second;
            }
    }
    std::vector<Mask> out(fam.begin(), fam.end());
    std::sort(out.begin(), out.end(), canon_less);
    return out;
}

std::vector<Mask> sorted(std::vector<Mask> v) {
    std::sort(v.begin(), v.end(), canon_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

BlockLattices block_lattices(const CellMap& F, const std::vector<Mask>& seeds) {
    BlockLattices out;
    const Mask all = F.all();
    if (seeds.empty()) {
        if (F.size() > enum_bound())
            throw Error(ErrorKind::TooLarge, std::to_string(F.size()) +
                                                 " cells exceed the enumeration bound " +
                                                 std::to_string(enum_bound()) + "; give seeds");
        for (Mask N = 0;; ++N) {
            if (is_attracting_block(F, N)) out.attracting.push_back(N);
            if (is_repelling_block(F, N)) out.repelling.push_back(N);
            if (N == all) break;
        }
        out.attracting = sorted(out.attracting);
        out.repelling = sorted(out.repelling);
        return out;
    }
    std::set<Mask> gen{0, all};
    for (Mask s : seeds) {
        Mask N = forward_closure(F, s);
        while (gen.insert(N).second) N = cell_image(F, N);
    }
    out.attracting = close_union_intersection(gen);
    for (Mask N : out.attracting) out.repelling.push_back(all & ~N);
    out.repelling = sorted(out.repelling);
    return out;
}

namespace {

// least and greatest block per image, or every block when few
std::vector<Mask> probe_blocks(const std::vector<Mask>& blocks, const std::function<Mask(Mask)>& h) {
    if (blocks.size() <= 256) return blocks;
    std::map<Mask, std::pair<Mask, Mask>> ext;
    for (Mask N : blocks) {
        Mask a = h(N);
        auto it = ext.find(a);
        if (it == ext.end())
            ext[a] = {N, N};
        else {
            it->second.first &= N;
            it->second.second |= N;
        }
    }
    std::set<Mask> keep;
    for (auto& [a, lg] : ext) {
        keep.insert(lg.first);
        keep.insert(lg.second);
    }
    return {keep.begin(), keep.end()};
}

SetLattice image_lattice(const CellMap& F, const std::vector<Mask>& blocks,
                         const std::function<Mask(Mask)>& h, const char* name) {
    auto probes = probe_blocks(blocks, h);
    for (Mask N : probes)
        for (Mask M : probes) {
            if (h(N | M) != (h(N) | h(M)))
                throw Error(ErrorKind::NotALattice, std::string(name) + " join law fails at " +
                                                        mask_str(N, F.grid.labels()) + ", " +
                                                        mask_str(M, F.grid.labels()));
            if (h(N & M) != h(h(N) & h(M)))
                throw Error(ErrorKind::NotALattice, std::string(name) + " meet identity fails at " +
                                                        mask_str(N, F.grid.labels()) + ", " +
                                                        mask_str(M, F.grid.labels()));
        }
    std::vector<Mask> img;
    for (Mask N : blocks) img.push_back(h(N));
    img = sorted(img);
    SetLattice L(F.grid.labels(), img, false);
    for (Mask a : img)
        for (Mask b : img)
            if (L.meet(a, b) != h(a & b))
                throw Error(ErrorKind::NotALattice, std::string(name) + " meet is not " + name +
                                                        " of the intersection");
    return L;
}

}  // namespace

SetLattice comb_att_lattice(const CellMap& F, const std::vector<Mask>& seeds) {
    auto B = block_lattices(F, seeds);
    return image_lattice(F, B.attracting, [&F](Mask N) { return comb_inv(F, N); }, "comb_inv");
}

SetLattice comb_rep_lattice(const CellMap& F, const std::vector<Mask>& seeds) {
    auto B = block_lattices(F, seeds);
    return image_lattice(F, B.repelling, [&F](Mask N) { return comb_inv_plus(F, N); },
                         "comb_inv_plus");
}

Mask shrink_repelling_block(const CellMap& F, Mask W, Mask target, int max_depth) {
    if (!is_repelling_block(F, W))
        throw Error(ErrorKind::NotARepellingBlock, mask_str(W, F.grid.labels()));
    Mask cur = W;
    for (int k = 0; k < max_depth; ++k) {
        if (subset(cur, target)) break;
        Mask nxt = W & cell_preimage(F, cur);
        if (nxt == cur) break;
        cur = nxt;
    }
    return cur;
}

namespace {

std::string pair_str(const CellMap& F, Mask a, Mask b) {
    return mask_str(a, F.grid.labels()) + " and " + mask_str(b, F.grid.labels());
}

// bounded, closed under union and meet(a, b) = h(a & b), distributive
void check_family(const CellMap& F, const std::vector<Mask>& fam,
                  const std::function<Mask(Mask)>& h, const char* name) {
    std::set<Mask> in(fam.begin(), fam.end());
    if (!in.count(0)) throw Error(ErrorKind::NotASublattice, "family lacks the empty set");
    for (Mask a : fam)
        for (Mask b : fam) {
            if (!in.count(a | b))
                throw Error(ErrorKind::NotASublattice, "union of " + pair_str(F, a, b) + " missing");
            if (!in.count(h(a & b)))
                throw Error(ErrorKind::NotASublattice,
                            std::string(name) + " of the intersection of " + pair_str(F, a, b) +
                                " missing");
        }
    try {
        SetLattice L(F.grid.labels(), sorted(fam), false);
    } catch (const Error& e) {
        throw Error(ErrorKind::NotASublattice, e.detail());
    }
}

std::optional<Mask> least_in_fibre(const std::vector<Mask>& blocks,
                                   const std::function<Mask(Mask)>& h, Mask image) {
    std::optional<Mask> best;
    for (Mask N : blocks)
        if (h(N) == image) best = best ? (*best & N) : N;
    if (best && h(*best) != image) return std::nullopt;
    return best;
}

}  // namespace

LiftProblem grid_lift_problem(const CellMap& F, const Poset& P, const std::vector<Mask>& downsets,
                              const std::vector<Mask>& s, const std::vector<Mask>& seeds) {
    auto h = [F](Mask N) { return comb_inv_plus(F, N); };
    check_family(F, sorted(s), h, "comb_inv_plus");
    std::vector<Mask> seeded;
    if (!seeds.empty()) seeded = block_lattices(F, seeds).repelling;
    LiftProblem pb;
    pb.P = P;
    pb.downsets = downsets;
    pb.s = s;
    pb.ambient = F.all();
    pb.ambient_labels = F.grid.labels();
    pb.h = h;
    pb.in_k = [F](Mask N) { return is_repelling_block(F, N); };
    pb.l_meet = [F](Mask a, Mask b) { return comb_inv_plus(F, a & b); };
    auto section = [F, seeded](Mask R) -> std::optional<Mask> {
        if (is_repelling_block(F, R) && comb_inv_plus(F, R) == R) return R;
        Mask B = backward_closure(F, R);
        if (comb_inv_plus(F, B) == R) return B;
        return least_in_fibre(seeded, [&F](Mask N) { return comb_inv_plus(F, N); }, R);
    };
    pb.section = section;
    RecipeOracle r;
    r.W = [section, F](Mask R) {
        auto w = section(R);
        if (!w)
            throw Error(ErrorKind::SectionInconsistent,
                        "no repelling block over " + mask_str(R, F.grid.labels()));
        return *w;
    };
    r.shrink = [F](Mask W, Mask R, int depth) { return shrink_repelling_block(F, W, R, depth); };
    r.max_depth = F.size();
    pb.conditioners = recipe_conditioners(r);
    pb.top_unique = true;
    return pb;
}

Embedding grid_rep_embedding(const CellMap& F, const std::vector<Mask>& family) {
    auto fam = sorted(family);
    check_family(F, fam, [&F](Mask N) { return comb_inv_plus(F, N); }, "comb_inv_plus");
    return embedding_of(SetLattice(F.grid.labels(), fam, false));
}

Embedding grid_att_embedding(const CellMap& F, const std::vector<Mask>& family) {
    auto fam = sorted(family);
    check_family(F, fam, [&F](Mask N) { return comb_inv(F, N); }, "comb_inv");
    return embedding_of(SetLattice(F.grid.labels(), fam, false));
}

GridLift grid_repeller_lift(const CellMap& F, const std::vector<Mask>& family,
                            const std::vector<Mask>& seeds) {
    GridLift out;
    out.emb = grid_rep_embedding(F, family);
    LiftProblem pb = grid_lift_problem(F, out.emb.P, out.emb.downsets, out.emb.s, seeds);
    out.cert = lift(pb);
    Violation v = verify_certificate(out.cert, pb);
    if (!v.ok) throw Error(ErrorKind::LiftCheckFailed, v.what);
    return out;
}

namespace {

std::vector<Mask> att_blocks(const CellMap& F, const std::vector<Mask>& seeds) {
    if (F.size() <= enum_bound()) return block_lattices(F).attracting;
    return block_lattices(F, seeds).attracting;
}

}  // namespace

GridLift grid_attractor_lift(const CellMap& F, const std::vector<Mask>& family,
                             const std::vector<Mask>& seeds, bool direct) {
    GridLift out;
    out.emb = grid_att_embedding(F, family);
    auto h = [F](Mask N) { return comb_inv(F, N); };
    std::vector<Mask> blocks = att_blocks(F, seeds);
    auto block_over = [F, blocks, h](Mask A) -> std::optional<Mask> {
        Mask G = forward_closure(F, A);
        if (h(G) == A) return G;
        return least_in_fibre(blocks, h, A);
    };
    if (direct) {
        LiftProblem pb;
        pb.P = out.emb.P;
        pb.downsets = out.emb.downsets;
        pb.s = out.emb.s;
        pb.ambient = F.all();
        pb.ambient_labels = F.grid.labels();
        pb.h = h;
        pb.in_k = [F](Mask N) { return is_attracting_block(F, N); };
        pb.l_meet = [F](Mask a, Mask b) { return comb_inv(F, a & b); };
        pb.section = block_over;
        pb.conditioners = least_conditioners(blocks, h);
        Mask top = h(F.all());
        int over_top = 0;
        for (Mask N : blocks)
            if (h(N) == top) ++over_top;
        pb.top_unique = over_top == 1;
        out.cert = lift(pb);
        Violation v = verify_certificate(out.cert, pb);
        if (!v.ok) throw Error(ErrorKind::LiftCheckFailed, v.what);
        return out;
    }
    DualityContext ctx;
    ctx.ambient = F.all();
    ctx.star = [F, block_over](Mask A) {
        auto N = block_over(A);
        if (!N)
            throw Error(ErrorKind::SectionInconsistent,
                        "no attracting block over " + mask_str(A, F.grid.labels()));
        return comb_inv_plus(F, F.all() & ~*N);
    };
    ctx.h_att = h;
    ctx.in_k_att = [F](Mask N) { return is_attracting_block(F, N); };
    ctx.make_rep_problem = [F, seeds](const Poset& P, const std::vector<Mask>& d,
                                      const std::vector<Mask>& s) {
        return grid_lift_problem(F, P, d, s, seeds);
    };
    DualLift dl = transport_by_duality(out.emb.P, out.emb.downsets, out.emb.s, ctx);
    out.cert = dl.att;
    // hom laws of the transported table
    const auto& D = out.emb.downsets;
    for (size_t i = 0; i < D.size(); ++i)
        for (size_t j = 0; j < D.size(); ++j) {
            auto at = [&](Mask m) {
                return out.cert.table[std::lower_bound(D.begin(), D.end(), m, canon_less) - D.begin()];
            };
            if (at(D[i] | D[j]) != (out.cert.table[i] | out.cert.table[j]) ||
                at(D[i] & D[j]) != (out.cert.table[i] & out.cert.table[j]))
                throw Error(ErrorKind::LiftCheckFailed, "transported table is not a homomorphism");
        }
    return out;
}

FiniteHom grid_att_hom(const CellMap& F, const SetLattice& L) {
    FiniteHom H;
    H.K = F.size() <= enum_bound() ? block_lattices(F).attracting : std::vector<Mask>{};
    if (H.K.empty()) throw Error(ErrorKind::TooLarge, "attracting blocks need full enumeration");
    H.ambient = F.all();
    H.ambient_labels = F.grid.labels();
    H.h = [F](Mask N) { return comb_inv(F, N); };
    H.L = L;
    return H;
}

}  // namespace morselat
