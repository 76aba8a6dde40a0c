#include "morselat/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "morselat/error.hpp"

namespace morselat {

const char* tool_version() { return "morselat 0.1.0"; }

Json RunConfig::to_json() const {
    return Json{{"command", command},
                {"inputs", inputs},
                {"output", output},
                {"format", format},
                {"max_enum", max_enum},
                {"seed", seed},
                {"grid", {{"samples_per_cell", samples_per_cell}, {"padding", padding}}},
                {"version", tool_version()}};
}

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::ParseError,
                    "position " + std::to_string(e.byte) + ": " + std::string(e.what()));
    }
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str());
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::vector<std::string> string_list(const Json& j, const char* what) {
    if (!j.is_array()) bad(std::string(what) + " must be an array");
    std::vector<std::string> out;
    for (auto& e : j) {
        if (!e.is_string()) bad(std::string(what) + " entries must be strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

int label_index(const std::vector<std::string>& labels, const std::string& l) {
    auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) throw Error(ErrorKind::UnknownElement, l);
    return static_cast<int>(it - labels.begin());
}

}  // namespace

Poset parse_poset(const Json& j) {
    auto labels = string_list(field(j, "elements"), "elements");
    if (labels.empty()) bad("poset needs at least one element");
    if (j.contains("leq")) {
        const Json& m = j.at("leq");
        std::vector<std::vector<bool>> mat;
        for (auto& row : m) {
            std::vector<bool> r;
            for (auto& x : row) r.push_back(x.is_boolean() ? x.get<bool>() : x.get<int>() != 0);
            mat.push_back(r);
        }
        return validate_poset(labels, mat);
    }
    std::vector<std::pair<int, int>> covers;
    if (j.contains("covers"))
        for (auto& c : j.at("covers")) {
            if (!c.is_array() || c.size() != 2) bad("cover entries are [lower, upper] pairs");
            covers.emplace_back(label_index(labels, c[0].get<std::string>()),
                                label_index(labels, c[1].get<std::string>()));
        }
    return poset_from_covers(labels, covers);
}

Json poset_json(const Poset& P) {
    Json covers = Json::array();
    for (auto [p, q] : cover_pairs(P)) covers.push_back({P.labels[p], P.labels[q]});
    return Json{{"elements", P.labels}, {"covers", covers}};
}

FiniteDynSys parse_system(const Json& j) {
    if (j.contains("time") && j.at("time") == "continuous")
        throw Error(ErrorKind::Unsupported, "continuous time is not supported; give a discrete map");
    if (j.contains("type") && j.at("type") != "finite") bad("expected type 'finite'");
    auto states = string_list(field(j, "states"), "states");
    if (states.empty()) bad("system needs at least one state");
    if (states.size() > 64) throw Error(ErrorKind::TooLarge, "at most 64 states");
    const Json& map = field(j, "map");
    if (!map.is_object()) bad("map must be an object");
    std::vector<int> next(states.size(), -1);
    for (auto& [k, v] : map.items()) {
        if (!v.is_string()) bad("map values must be state names");
        next[label_index(states, k)] = label_index(states, v.get<std::string>());
    }
    for (size_t i = 0; i < states.size(); ++i)
        if (next[i] < 0) bad("state '" + states[i] + "' has no image");
    return FiniteDynSys(states, next);
}

Json system_json(const FiniteDynSys& f) {
    Json map = Json::object();
    for (int x = 0; x < f.size(); ++x) map[f.states[x]] = f.states[f.next[x]];
    return Json{{"type", "finite"}, {"states", f.states}, {"map", map}};
}

GridInput parse_gridmap(const Json& j, int default_samples, double default_padding) {
    if (j.contains("time") && j.at("time") == "continuous")
        throw Error(ErrorKind::Unsupported, "continuous time is not supported; give a discrete map");
    std::string type = field(j, "type").get<std::string>();
    if (type != "interval_map" && type != "cell_map") bad("expected type 'interval_map' or 'cell_map'");
    const Json& dom = field(j, "domain");
    if (!dom.is_array() || dom.size() != 2) bad("domain must be [lo, hi]");
    int cells = field(j, "cells").get<int>();
    CellGrid g(dom[0].get<double>(), dom[1].get<double>(), cells);
    GridInput in;
    if (type == "cell_map") {
        // explicit multivalued arrows, one target list per cell
        const Json& arr = field(j, "arrows");
        if (!arr.is_array() || static_cast<int>(arr.size()) != cells) bad("need one arrow list per cell");
        std::vector<Mask> arrows;
        for (auto& targets : arr) {
            Mask m = 0;
            for (auto& t : targets) {
                int c = t.get<int>();
                if (c < 0 || c >= cells)
                    throw Error(ErrorKind::ImageOutOfDomain, "target cell " + std::to_string(c));
                m |= bit(c);
            }
            arrows.push_back(m);
        }
        in.F = CellMap(g, arrows);
    } else {
        int samples = j.value("samples_per_cell", default_samples);
        double padding = j.value("padding", default_padding);
        in.F = ingest_interval_map(field(j, "expr").get<std::string>(), g, samples, padding);
    }
    if (j.contains("seeds")) {
        for (auto& s : j.at("seeds")) in.seed_points.push_back(s.get<double>());
        in.seeds = seed_cells(g, in.seed_points);
    }
    return in;
}

Json labels_json(Mask m, const std::vector<std::string>& labels) {
    Json a = Json::array();
    for (int i : members(m)) a.push_back(labels[i]);
    return a;
}

Json indices_json(Mask m) {
    Json a = Json::array();
    for (int i : members(m)) a.push_back(i);
    return a;
}

Mask parse_labels(const Json& arr, const std::vector<std::string>& labels) {
    if (!arr.is_array()) bad("a set is an array of labels");
    Mask m = 0;
    for (auto& e : arr) {
        std::string l = e.is_string() ? e.get<std::string>() : e.dump();
        m |= bit(label_index(labels, l));
    }
    return m;
}

Json cellset_json(const CellGrid& g, Mask cells) {
    Json sup = Json::array();
    for (auto [a, b] : g.support(cells)) sup.push_back({a, b});
    return Json{{"cells", indices_json(cells)}, {"support", sup}};
}

Json lattice_json(const SetLattice& L, bool numeric) {
    Json elems = Json::array();
    for (Mask m : L.elements()) elems.push_back(numeric ? indices_json(m) : labels_json(m, L.universe()));
    JoinIrreducibles J = join_irreducibles(L);
    Json ji = Json::array();
    for (int i : J.elems) ji.push_back(i);
    Json hasse = Json::array();
    for (auto [a, b] : L.hasse()) hasse.push_back({a, b});
    return Json{{"universe", L.universe()}, {"elements", elems}, {"join_irreducibles", ji}, {"hasse", hasse}};
}

SetLattice parse_lattice(const Json& j) {
    auto universe = string_list(field(j, "universe"), "universe");
    if (universe.size() > 64) throw Error(ErrorKind::TooLarge, "at most 64 points");
    std::vector<Mask> fam;
    for (auto& e : field(j, "elements")) fam.push_back(parse_labels(e, universe));
    std::sort(fam.begin(), fam.end(), canon_less);
    fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
    return SetLattice(universe, fam, false);
}

Json certificate_json(const Poset& P, const std::vector<Mask>& downsets, const std::vector<Mask>& s,
                      const LiftCertificate& c, const std::vector<std::string>& amb,
                      bool numeric) {
    auto set = [&](Mask m) { return numeric ? indices_json(m) : labels_json(m, amb); };
    Json assign = Json::array();
    for (size_t i = 0; i < downsets.size(); ++i)
        assign.push_back(Json{{"downset", labels_json(downsets[i], P.labels)},
                              {"image", set(s[i])},
                              {"neighborhood", set(c.table[i])}});
    Json audit = Json::array();
    for (const StepAudit& a : c.audit) {
        Json conds = Json::array();
        for (auto& [alpha, v] : a.conditioners)
            conds.push_back(Json{{"downset", labels_json(alpha, P.labels)}, {"v", set(v)}});
        audit.push_back(Json{{"step", a.step},
                             {"q", a.q < 0 ? Json(nullptr) : Json(P.labels[a.q])},
                             {"lambda", labels_json(a.lambda, P.labels)},
                             {"mu", labels_json(a.mu, P.labels)},
                             {"conditioners", conds},
                             {"B_q", set(a.bq)},
                             {"checks",
                              {{"disjoint_conditioners", a.disjoint},
                               {"new_element", a.fresh},
                               {"extension", a.separated},
                               {"in_k", a.in_k},
                               {"h_matches", a.h_ok},
                               {"join_form", a.k_mu_form}}}});
    }
    return Json{{"poset", poset_json(P)}, {"assignment", assign}, {"audit", audit}, {"top_flag", c.top_flag}};
}

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + "\"";
}

std::string set_label(Mask m, const std::vector<std::string>& labels) {
    std::string out = "{";
    bool first = true;
    for (int i : members(m)) {
        out += (first ? "" : ",") + labels[i];
        first = false;
    }
    return out + "}";
}

}  // namespace

std::string dot_hasse(const SetLattice& L, const std::string& name) {
    std::ostringstream os;
    os << "digraph " << quote(name) << " {\n  rankdir=BT;\n";
    for (int i = 0; i < L.size(); ++i)
        os << "  " << quote("n" + std::to_string(i)) << " [label=" << quote(set_label(L.element(i), L.universe()))
           << "];\n";
    for (auto [a, b] : L.hasse())
        os << "  " << quote("n" + std::to_string(a)) << " -> " << quote("n" + std::to_string(b)) << ";\n";
    os << "}\n";
    return os.str();
}

std::string dot_poset(const Poset& P, const std::string& name) {
    std::ostringstream os;
    os << "digraph " << quote(name) << " {\n  rankdir=BT;\n";
    for (int i = 0; i < P.size(); ++i)
        os << "  " << quote("p" + std::to_string(i)) << " [label=" << quote(P.labels[i]) << "];\n";
    for (auto [a, b] : cover_pairs(P))
        os << "  " << quote("p" + std::to_string(a)) << " -> " << quote("p" + std::to_string(b)) << ";\n";
    os << "}\n";
    return os.str();
}

namespace {

class DotLexer {
public:
    explicit DotLexer(const std::string& s) : s_(s) {}
    // identifiers, quoted strings, and the punctuation { } [ ] = ; ->
    std::string next() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (i_ >= s_.size()) return "";
        char c = s_[i_];
        if (c == '"') {
            std::string out;
            ++i_;
            while (i_ < s_.size() && s_[i_] != '"') {
                if (s_[i_] == '\\' && i_ + 1 < s_.size()) ++i_;
                out += s_[i_++];
            }
            if (i_ >= s_.size()) fail("closing quote");
            ++i_;
            return "\"" + out;
        }
        if (s_.compare(i_, 2, "->") == 0) {
            i_ += 2;
            return "->";
        }
        if (std::string("{}[]=;,").find(c) != std::string::npos) {
            ++i_;
            return std::string(1, c);
        }
        std::string out;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '.'))
            out += s_[i_++];
        if (out.empty()) fail("token");
        return out;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw Error(ErrorKind::ParseError, "position " + std::to_string(i_) + ": expected " + what);
    }

private:
    const std::string& s_;
    size_t i_ = 0;
};

std::string unquote(const std::string& t) { return !t.empty() && t[0] == '"' ? t.substr(1) : t; }

}  // namespace

DotGraph parse_dot(const std::string& text) {
    DotLexer lx(text);
    DotGraph g;
    if (lx.next() != "digraph") lx.fail("'digraph'");
    std::string t = lx.next();
    if (t != "{") {
        g.name = unquote(t);
        t = lx.next();
    }
    if (t != "{") lx.fail("'{'");
    for (;;) {
        t = lx.next();
        if (t == "}") break;
        if (t.empty()) lx.fail("'}'");
        std::string id = unquote(t);
        std::string u = lx.next();
        if (u == "=") {  // graph attribute
            lx.next();
            if (lx.next() != ";") lx.fail("';'");
            continue;
        }
        if (u == "->") {
            std::string to = unquote(lx.next());
            g.edges.emplace_back(id, to);
            u = lx.next();
        } else {
            std::string label = id;
            if (u == "[") {
                for (;;) {
                    std::string key = lx.next();
                    if (key == "]") break;
                    if (lx.next() != "=") lx.fail("'='");
                    std::string val = unquote(lx.next());
                    if (key == "label") label = val;
                    std::string sep = lx.next();
                    if (sep == "]") break;
                    if (sep != ",") lx.fail("',' or ']'");
                }
                u = lx.next();
            }
            g.nodes.emplace_back(id, label);
        }
        if (u != ";") lx.fail("';'");
    }
    for (auto& [a, b] : g.edges) {
        auto known = [&](const std::string& id) {
            return std::any_of(g.nodes.begin(), g.nodes.end(), [&](auto& n) { return n.first == id; });
        };
        if (!known(a) || !known(b)) throw Error(ErrorKind::ParseError, "edge to undeclared node " + a + " -> " + b);
    }
    return g;
}

}  // namespace morselat
