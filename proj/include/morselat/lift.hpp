#pragma once
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "morselat/bits.hpp"
#include "morselat/lattice.hpp"
#include "morselat/order.hpp"

namespace morselat {

// Partial lift on O(lambda^T) = {alpha <= lambda} u {P}, plus conditioners.
struct PartialLift {
    Mask lambda = 0;
    std::map<Mask, Mask> table;  // down-set of P -> element of K
    std::map<Mask, Mask> cond;   // down-set of P -> conditioner v_alpha
};

struct ConditionerReply {
    bool ok = true;
    std::map<Mask, Mask> v;  // v_alpha for every alpha in O(P) (step: alpha without q, and mu)
    Mask alpha = 0;          // failing down-set
    Mask witness = 0;        // v_mu & v_alpha & ~k(lambda)
    std::string note;
};

// K is a sublattice of the powerset of an ambient set of at most 64 points,
// with union and intersection; L is a family of subsets with union as join.
struct LiftProblem {
    Poset P;
    std::vector<Mask> downsets;  // O(P), canonical order
    std::vector<Mask> s;         // s(downsets[i])
    Mask ambient = 0;            // 1 of K
    std::vector<std::string> ambient_labels;
    std::function<Mask(Mask)> h;
    std::function<bool(Mask)> in_k;
    std::function<Mask(Mask, Mask)> l_meet;
    std::function<std::optional<Mask>(Mask)> section;
    // initial = true: initially disjoint conditioners for k on O({q}^T)
    // initial = false: step conditioners satisfying v_mu & v_alpha <= k(lambda)
    std::function<ConditionerReply(const LiftProblem&, const PartialLift&, int q, bool initial)>
        conditioners;
    bool top_unique = true;  // h^{-1}(1) = {1}

    int index_of(Mask alpha) const;
    Mask s_of(Mask alpha) const { return s[index_of(alpha)]; }
};

struct StepAudit {
    int step = 0;
    int q = -1;
    Mask lambda = 0;  // before the step
    Mask mu = 0;
    std::vector<std::pair<Mask, Mask>> conditioners;  // combined v_alpha
    Mask bq = 0;
    bool disjoint = false, fresh = false, separated = false;
    bool in_k = false, h_ok = false, k_mu_form = false;
};

struct LiftCertificate {
    std::vector<Mask> table;  // k(downsets[i])
    std::vector<StepAudit> audit;
    bool top_flag = false;  // k(1) != 1, only possible when !top_unique
};

struct Violation {
    bool ok = true;
    std::string what;
};

Violation check_problem(const LiftProblem& pb);
Violation is_partial_lift(const PartialLift& k, const LiftProblem& pb);
// lift identity and its atom form; both must agree
Violation is_conditional_lift(const PartialLift& k, const LiftProblem& pb);
LiftCertificate lift(const LiftProblem& pb);
// independent re-verification of a finished certificate
Violation verify_certificate(const LiftCertificate& c, const LiftProblem& pb);

// down-sets of P inside lambda, plus P
std::vector<Mask> top_domain(const LiftProblem& pb, Mask lambda);

// ---- finite, materialized h : K -> L ----
struct FiniteHom {
    std::vector<Mask> K;  // all elements of K
    Mask ambient = 0;
    std::vector<std::string> ambient_labels;
    std::function<Mask(Mask)> h;
    SetLattice L;  // image lattice
};

struct ConditionIReport {
    bool ok = true;
    bool via_zero_fibre = false;  // h^{-1}(0) = {0}
    std::string witness;
};

ConditionIReport check_condition_i(const FiniteHom& H, int max_poset);

struct FalsifierReport {
    bool counterexample = false;
    std::string witness;
    long checked = 0;  // (s, lambda, q, partial lift) configurations examined
};

// searches step conditioner violations over embeddings with |P| <= max_poset;
// throws BoundExceeded when the search would exceed `budget` configurations
FalsifierReport spaciousness_falsifier(const FiniteHom& H, int max_poset, long budget = 50000000);

// ---- duality transport ----
struct DualityContext {
    Mask ambient = 0;
    std::function<Mask(Mask)> star;     // attractor -> dual repeller
    std::function<Mask(Mask)> h_att;    // Inv on the attractor side
    std::function<bool(Mask)> in_k_att; // attracting neighbourhood test
    // builds the repeller-side problem for s_R on O(P^dual)
    std::function<LiftProblem(const Poset&, const std::vector<Mask>&, const std::vector<Mask>&)>
        make_rep_problem;
};

struct DualLift {
    LiftCertificate att;  // table over O(P)
    LiftCertificate rep;  // repeller-side certificate over O(P^dual)
    Poset dual;
    std::vector<Mask> dual_downsets;
};

DualLift transport_by_duality(const Poset& P, const std::vector<Mask>& downsets,
                              const std::vector<Mask>& sA, const DualityContext& ctx);

// Conditioners built from a repelling section by shrinking:
//   v = k(xi)                    if xi <= lambda
//   v = shrink(W(s(xi)), depth)  if q not in xi or xi = mu
//   v = W(s(xi))                 otherwise
// retried with deeper shrinking up to max_depth.
struct RecipeOracle {
    std::function<Mask(Mask)> W;                 // element of K over a given image
    std::function<Mask(Mask, Mask, int)> shrink; // (W, image, depth) -> smaller element, same image
    int max_depth = 0;
};
std::function<ConditionerReply(const LiftProblem&, const PartialLift&, int, bool)>
recipe_conditioners(RecipeOracle r);

// Conditioners from least fibre elements found by exhaustive search of a
// materialized K; optimal since fibres are intersection-closed.
std::function<ConditionerReply(const LiftProblem&, const PartialLift&, int, bool)>
least_conditioners(std::vector<Mask> K, std::function<Mask(Mask)> h);

// O(P) -> L for the sublattice `fam` of L via Birkhoff: P = J(fam)
struct Embedding {
    Poset P;
    std::vector<Mask> downsets;
    std::vector<Mask> s;
};
Embedding embedding_of(const SetLattice& sub);

}  // namespace morselat
