#pragma once
#include <optional>
#include <string>
#include <vector>

#include "morselat/bits.hpp"
#include "morselat/lattice.hpp"

namespace morselat {

// Finite single-valued system on the nonnegative integers.  The state space
// carries the discrete topology, so every set is open and closed: closure
// and interior are the identity everywhere below.
struct FiniteDynSys {
    std::vector<std::string> states;
    std::vector<int> next;

    FiniteDynSys() = default;
    FiniteDynSys(std::vector<std::string> s, std::vector<int> f);

    int size() const { return static_cast<int>(states.size()); }
    Mask all() const { return full_mask(size()); }
    bool surjective() const;
};

// Backward or forward orbit coded as prefix then repeating cycle.  For a
// backward orbit, prefix[0] is the base point x and each entry maps onto the
// previous one under next; the cycle repeats forever after the prefix.
struct Orbit {
    std::vector<int> prefix;
    std::vector<int> cycle;
};

struct InvarianceFlags {
    bool invariant = false;
    bool forward = false;
    bool backward = false;
    bool forward_backward = false;
    bool strong = false;
};

struct RegionWitness {
    bool holds = false;
    int tau = 0;  // 1 (trapping) or -1 (repelling) when it holds
};

struct Check {
    bool ok = true;
    std::string what;
    Check& fail(std::string w) {
        if (ok) {
            ok = false;
            what = std::move(w);
        }
        return *this;
    }
};

Mask image(const FiniteDynSys& f, Mask S, int t = 1);
Mask preimage(const FiniteDynSys& f, Mask S, int t = 1);
Mask reachable_forward(const FiniteDynSys& f, Mask S);
Mask reachable_backward(const FiniteDynSys& f, Mask S);
InvarianceFlags classify_invariance(const FiniteDynSys& f, Mask S);
Mask inv(const FiniteDynSys& f, Mask U);
Mask inv_plus(const FiniteDynSys& f, Mask U);
Mask omega(const FiniteDynSys& f, Mask U);
Mask alpha(const FiniteDynSys& f, Mask U);
Mask alpha_orbital(const FiniteDynSys& f, const Orbit& backward);
Mask dual_plus(const FiniteDynSys& f, Mask S);
Mask dual_minus(const FiniteDynSys& f, Mask S);
// union of the cycles of next
Mask cycles(const FiniteDynSys& f);

// subsystem on a forward invariant S; states are relabelled in order
FiniteDynSys restrict(const FiniteDynSys& f, Mask S);

RegionWitness is_trapping_region(const FiniteDynSys& f, Mask U);
RegionWitness is_repelling_region(const FiniteDynSys& f, Mask U);
bool is_attracting_nbhd(const FiniteDynSys& f, Mask U);
bool is_repelling_nbhd(const FiniteDynSys& f, Mask U);

std::vector<Mask> attracting_nbhds(const FiniteDynSys& f);
std::vector<Mask> repelling_nbhds(const FiniteDynSys& f);
SetLattice att_lattice(const FiniteDynSys& f);
SetLattice rep_lattice(const FiniteDynSys& f);

Mask dual_repeller(const FiniteDynSys& f, Mask A);
Mask dual_attractor(const FiniteDynSys& f, Mask R);

Check check_ar_pair(const FiniteDynSys& f, Mask A, Mask R);
Check commuting_square_check(const FiniteDynSys& f);

// one eventually periodic backward orbit through x per cycle feeding x
// (shortest path back to the cycle); orbital alpha limits depend only on the
// cycle, so these cover every value.  Empty when x has no backward orbit.
std::vector<Orbit> backward_orbits(const FiniteDynSys& f, int x);

}  // namespace morselat
