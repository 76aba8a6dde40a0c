#pragma once
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "morselat/dyn.hpp"
#include "morselat/grid.hpp"
#include "morselat/lattice.hpp"
#include "morselat/lift.hpp"
#include "morselat/order.hpp"

namespace morselat {

using Json = nlohmann::json;

const char* tool_version();

struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::string output;  // empty = stdout
    std::string format = "json";
    int max_enum = 20;
    std::uint64_t seed = 1;
    int samples_per_cell = 32;
    double padding = 1e-9;
    Json to_json() const;
};

// throws ParseError ("position N: ...") or Io
Json load_json(const std::string& path);
Json parse_json_text(const std::string& text);

Poset parse_poset(const Json& j);
Json poset_json(const Poset& P);
FiniteDynSys parse_system(const Json& j);
Json system_json(const FiniteDynSys& f);

struct GridInput {
    CellMap F;
    std::vector<double> seed_points;
    std::vector<Mask> seeds;
};
GridInput parse_gridmap(const Json& j, int default_samples = 32, double default_padding = 1e-9);

Json labels_json(Mask m, const std::vector<std::string>& labels);
// cell sets: sorted index arrays
Json indices_json(Mask m);
Mask parse_labels(const Json& arr, const std::vector<std::string>& labels);
Json cellset_json(const CellGrid& g, Mask cells);

Json lattice_json(const SetLattice& L, bool numeric = false);
// universe + elements, all other fields ignored
SetLattice parse_lattice(const Json& j);

Json certificate_json(const Poset& P, const std::vector<Mask>& downsets, const std::vector<Mask>& s,
                      const LiftCertificate& c, const std::vector<std::string>& ambient_labels,
                      bool numeric = false);

// Hasse diagram, one node per element, one edge per cover pair
std::string dot_hasse(const SetLattice& L, const std::string& name);
std::string dot_poset(const Poset& P, const std::string& name);

// minimal reader for the emitted subset of DOT
struct DotGraph {
    std::string name;
    std::vector<std::pair<std::string, std::string>> nodes;  // id, label
    std::vector<std::pair<std::string, std::string>> edges;
};
DotGraph parse_dot(const std::string& text);

}  // namespace morselat
