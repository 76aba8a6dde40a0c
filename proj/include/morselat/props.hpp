#pragma once
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "morselat/corpus.hpp"
#include "morselat/dyn.hpp"
#include "morselat/lattice.hpp"
#include "morselat/order.hpp"

namespace morselat {

struct TagResult {
    long checked = 0;
    long failed = 0;
    std::string counterexample;  // first failure
};

class PropReport {
public:
    template <class F>
    void expect(const std::string& tag, bool cond, F&& describe) {
        TagResult& t = tags_[tag];
        ++t.checked;
        if (!cond) {
            ++t.failed;
            if (t.counterexample.empty()) t.counterexample = describe();
        }
    }
    void merge(const PropReport& o);
    bool ok() const;
    const std::map<std::string, TagResult>& tags() const { return tags_; }

private:
    std::map<std::string, TagResult> tags_;
};

std::string system_str(const FiniteDynSys& f);
std::string poset_str(const Poset& P);

// per-system laws over every subset (pairs and triples are sampled past
// pair_limit states)
void exact_props(const FiniteDynSys& f, PropReport& r, int pair_limit = 6);
// every bounded sublattice of Rep lifts through Inv+, every one of Att by
// duality; skipped when |Att| > max_att
void lift_props(const FiniteDynSys& f, PropReport& r, int max_att = 8);
// no counterexample for Inv+ on repelling neighbourhoods
void falsifier_props(const FiniteDynSys& f, PropReport& r, int max_poset = 3);

void order_props(const Poset& P, PropReport& r);
void birkhoff_poset_props(const Poset& P, PropReport& r);
void birkhoff_lattice_props(const SetLattice& L, PropReport& r);
void boolean_props(const Poset& P, const Poset& Q, const std::vector<int>& g, PropReport& r);
// c & ~b & a = 0 <=> c & a <= b over all triples of 2^S
void boolean_algebra_props(int s, PropReport& r);

struct VerifyOptions {
    int exhaustive = 4;     // all maps on this many states (0 = none)
    int random = 500;       // random systems
    int max_states = 10;
    std::uint64_t seed = 1;
    int max_poset = 5;      // all posets up to this size
    int random_posets = 200;
    int random_poset_size = 8;
    int random_homs = 200;
    bool surjective_only = false;
    bool lifts = true;
    int workers = 0;        // 0 = hardware concurrency
};

PropReport run_verify(const VerifyOptions& o);

// runs fn(i) for i in [0, n) across workers and merges per-item reports in
// index order
PropReport parallel_reports(int n, int workers, const std::function<void(int, PropReport&)>& fn);

}  // namespace morselat
