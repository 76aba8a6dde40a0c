#pragma once
#include "morselat/dyn.hpp"
#include "morselat/lift.hpp"

namespace morselat {

// Inv+ : RNbhd -> Rep with the repeller itself as section and the discrete
// recipe for conditioners (a ball of radius below 1 is the set itself)
LiftProblem rep_lift_problem(const FiniteDynSys& f, const Poset& P,
                             const std::vector<Mask>& downsets, const std::vector<Mask>& s);
// Inv : ANbhd -> Att, attractor-side route without duality
LiftProblem att_lift_problem_direct(const FiniteDynSys& f, const Poset& P,
                                    const std::vector<Mask>& downsets,
                                    const std::vector<Mask>& s);
DualityContext exact_duality(const FiniteDynSys& f);

FiniteHom invplus_on_rnbhd(const FiniteDynSys& f);
FiniteHom inv_on_anbhd(const FiniteDynSys& f);

}  // namespace morselat
