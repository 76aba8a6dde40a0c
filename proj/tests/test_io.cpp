#include <doctest.h>

#include "morselat/error.hpp"
#include "morselat/io.hpp"

using namespace morselat;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::LiftCheckFailed;  // stands for "nothing thrown"
}

}  // namespace

TEST_CASE("system round trip") {
    Json j = parse_json_text(R"({"type":"finite","states":["m","z","a","b"],
        "map":{"m":"z","z":"z","a":"b","b":"b"}})");
    FiniteDynSys f = parse_system(j);
    CHECK(f.next == std::vector<int>{1, 1, 3, 3});
    FiniteDynSys g = parse_system(system_json(f));
    CHECK(g.states == f.states);
    CHECK(g.next == f.next);
}

TEST_CASE("input errors") {
    CHECK(kind_of([] { parse_json_text("{\"states\": [1, }"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] {
              parse_system(parse_json_text(R"({"type":"finite","states":[],"map":{}})"));
          }) == ErrorKind::ParseError);
    CHECK(kind_of([] {
              parse_system(parse_json_text(R"({"type":"flow","time":"continuous","states":["a"]})"));
          }) == ErrorKind::Unsupported);
    CHECK(kind_of([] {
              parse_system(parse_json_text(R"({"type":"finite","states":["a"],"map":{"a":"q"}})"));
          }) == ErrorKind::UnknownElement);
    CHECK(kind_of([] { load_json("/nonexistent/input.json"); }) == ErrorKind::Io);
    CHECK(kind_of([] {
              parse_poset(parse_json_text(R"({"elements":["a","b"],"leq":[[true,true],[true,true]]})"));
          }) == ErrorKind::NotAntisymmetric);
}

TEST_CASE("json syntax errors carry a position") {
    try {
        parse_json_text("[1, 2,, 3]");
        FAIL("parsed");
    } catch (const Error& e) {
        CHECK(e.detail().rfind("position ", 0) == 0);
    }
}

TEST_CASE("poset from covers and back") {
    Poset P = parse_poset(parse_json_text(R"({"elements":["1","2","3"],"covers":[["1","2"],["1","3"]]})"));
    CHECK(P.leq(0, 1));
    CHECK(P.leq(0, 2));
    CHECK_FALSE(P.leq(1, 2));
    CHECK(parse_poset(poset_json(P)) == P);
}

TEST_CASE("lattice json round trip") {
    Poset P = parse_poset(parse_json_text(R"({"elements":["1","2","3"],"covers":[["1","2"],["1","3"]]})"));
    SetLattice L = down_set_lattice(P);
    SetLattice M = parse_lattice(lattice_json(L));
    CHECK(M.elements() == L.elements());
    CHECK(M.universe() == L.universe());
}

TEST_CASE("DOT output parses back to the Hasse diagram") {
    Poset P = parse_poset(parse_json_text(R"({"elements":["1","2","3"],"covers":[["1","2"],["1","3"]]})"));
    SetLattice L = down_set_lattice(P);
    DotGraph g = parse_dot(dot_hasse(L, "lattice"));
    CHECK(g.name == "lattice");
    CHECK(g.nodes.size() == static_cast<size_t>(L.size()));
    auto H = L.hasse();
    REQUIRE(g.edges.size() == H.size());
    for (size_t i = 0; i < H.size(); ++i) {
        CHECK(g.edges[i].first == "n" + std::to_string(H[i].first));
        CHECK(g.edges[i].second == "n" + std::to_string(H[i].second));
    }
    DotGraph q = parse_dot(dot_poset(P, "poset"));
    CHECK(q.nodes.size() == 3);
    CHECK(q.edges.size() == 2);
}

TEST_CASE("grid input with seeds") {
    GridInput in = parse_gridmap(parse_json_text(
        R"({"type":"interval_map","domain":[-1,1],"cells":16,"expr":"(x + x^3)/2","seeds":[-1,0,1]})"));
    CHECK(in.F.size() == 16);
    CHECK(in.seeds.size() == 3);
    CHECK(in.F.samples_per_cell == 32);
    Json c = cellset_json(in.F.grid, 0b110000000);
    CHECK(c["cells"] == Json::array({7, 8}));
    CHECK(c["support"].size() == 1);
}
