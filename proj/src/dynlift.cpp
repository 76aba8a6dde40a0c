#include "morselat/dynlift.hpp"

#include "morselat/error.hpp"

namespace morselat {

LiftProblem rep_lift_problem(const FiniteDynSys& f, const Poset& P,
                             const std::vector<Mask>& downsets, const std::vector<Mask>& s) {
    LiftProblem pb;
    pb.P = P;
    pb.downsets = downsets;
    pb.s = s;
    pb.ambient = f.all();
    pb.ambient_labels = f.states;
    pb.h = [f](Mask U) { return inv_plus(f, U); };
    pb.in_k = [f](Mask U) { return is_repelling_nbhd(f, U); };
    pb.l_meet = [](Mask a, Mask b) { return a & b; };
    pb.section = [f](Mask R) -> std::optional<Mask> {
        if (is_repelling_nbhd(f, R) && inv_plus(f, R) == R) return R;
        return std::nullopt;
    };
    RecipeOracle r;
    r.W = [f](Mask R) { return R; };
    r.shrink = [](Mask W, Mask R, int) { return W & R; };
    r.max_depth = 0;
    pb.conditioners = recipe_conditioners(r);
    // Inv+(U) = X forces U = X
    pb.top_unique = true;
    return pb;
}

LiftProblem att_lift_problem_direct(const FiniteDynSys& f, const Poset& P,
                                    const std::vector<Mask>& downsets,
                                    const std::vector<Mask>& s) {
    LiftProblem pb;
    pb.P = P;
    pb.downsets = downsets;
    pb.s = s;
    pb.ambient = f.all();
    pb.ambient_labels = f.states;
    pb.h = [f](Mask U) { return inv(f, U); };
    pb.in_k = [f](Mask U) { return is_attracting_nbhd(f, U); };
    pb.l_meet = [f](Mask a, Mask b) { return inv(f, a & b); };
    pb.section = [f](Mask A) -> std::optional<Mask> {
        if (is_attracting_nbhd(f, A) && inv(f, A) == A) return A;
        return std::nullopt;
    };
    pb.conditioners = least_conditioners(attracting_nbhds(f), pb.h);
    pb.top_unique = f.surjective();
    return pb;
}

DualityContext exact_duality(const FiniteDynSys& f) {
    DualityContext ctx;
    ctx.ambient = f.all();
    ctx.star = [f](Mask A) { return dual_repeller(f, A); };
    ctx.h_att = [f](Mask U) { return inv(f, U); };
    ctx.in_k_att = [f](Mask U) { return is_attracting_nbhd(f, U); };
    ctx.make_rep_problem = [f](const Poset& P, const std::vector<Mask>& d,
                               const std::vector<Mask>& s) {
        return rep_lift_problem(f, P, d, s);
    };
    return ctx;
}

FiniteHom invplus_on_rnbhd(const FiniteDynSys& f) {
    FiniteHom H;
    H.K = repelling_nbhds(f);
    H.ambient = f.all();
    H.ambient_labels = f.states;
    H.h = [f](Mask U) { return inv_plus(f, U); };
    H.L = rep_lattice(f);
    return H;
}

FiniteHom inv_on_anbhd(const FiniteDynSys& f) {
    FiniteHom H;
    H.K = attracting_nbhds(f);
    H.ambient = f.all();
    H.ambient_labels = f.states;
    H.h = [f](Mask U) { return inv(f, U); };
    H.L = att_lattice(f);
    return H;
}

}  // namespace morselat
