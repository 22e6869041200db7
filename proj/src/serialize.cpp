#include "sparsity/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace sparsity {

namespace {

VertexSubset subset_from_json(const Json& j) {
    VertexSubset s;
    for (const auto& v : j) s.push_back(v.get<int>());
    if (!is_sorted_unique(s)) s = sorted_unique(s);
    return s;
}

std::vector<VertexSubset> subsets_from_json(const Json& j) {
    std::vector<VertexSubset> out;
    for (const auto& x : j) out.push_back(subset_from_json(x));
    return out;
}

Json subsets_to_json(const std::vector<VertexSubset>& v) {
    Json j = Json::array();
    for (const auto& s : v) j.push_back(to_json(s));
    return j;
}

} // namespace

Json to_json(const Graph& g) {
    Json j;
    j["n"] = g.n();
    Json edges = Json::array();
    auto sorted_edges = g.edges();
    std::sort(sorted_edges.begin(), sorted_edges.end());
    for (const auto& [u, v] : sorted_edges) edges.push_back(Json::array({u, v}));
    j["edges"] = edges;
    return j;
}

Graph graph_from_json(const Json& j) {
    Graph g(j.at("n").get<int>());
    for (const auto& e : j.at("edges")) g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    return g;
}

Json to_json(const VertexSubset& s) {
    Json j = Json::array();
    for (int v : s) j.push_back(v);
    return j;
}

Json to_json(const Layering& l) {
    Json j;
    j["layers"] = subsets_to_json(l.layers);
    return j;
}

Layering layering_from_json(const Json& j) {
    Layering l;
    l.layers = subsets_from_json(j.at("layers"));
    return l;
}

Json to_json(const MinorModel& m) {
    Json bs = Json::object();
    for (const auto& [x, set] : m.branch_sets) bs[std::to_string(x)] = to_json(set);
    Json j;
    j["branch_sets"] = bs;
    return j;
}

MinorModel model_from_json(const Json& j) {
    MinorModel m;
    for (const auto& [key, val] : j.at("branch_sets").items())
        m.branch_sets[std::stoi(key)] = subset_from_json(val);
    return m;
}

Json to_json(const SubgraphFamily& f) {
    Json j;
    j["members"] = subsets_to_json(f.members);
    return j;
}

SubgraphFamily family_from_json(const Json& j) {
    SubgraphFamily f;
    f.members = subsets_from_json(j.at("members"));
    return f;
}

Json to_json(const VertexOrdering& o) {
    Json j;
    j["sequence"] = Json::array();
    for (int v : o.sequence) j["sequence"].push_back(v);
    return j;
}

VertexOrdering ordering_from_json(const Json& j) {
    VertexOrdering o;
    for (const auto& v : j.at("sequence")) o.sequence.push_back(v.get<int>());
    return o;
}

Json to_json(const Coloring& c) {
    Json assignment = Json::object();
    for (const auto& [v, col] : c.assignment) assignment[std::to_string(v)] = col;
    Json j;
    j["assignment"] = assignment;
    j["palette_size"] = c.palette_size;
    return j;
}

Coloring coloring_from_json(const Json& j) {
    Coloring c;
    for (const auto& [key, val] : j.at("assignment").items())
        c.assignment[std::stoi(key)] = val.get<int>();
    c.palette_size = j.value("palette_size", 0);
    if (c.palette_size == 0) {
        std::set<int> colors;
        for (const auto& [v, col] : c.assignment) colors.insert(col);
        c.palette_size = static_cast<int>(colors.size());
    }
    return c;
}

Json to_json(const WeightFunction& w) {
    Json weights = Json::object();
    for (const auto& [v, r] : w.weights) weights[std::to_string(v)] = rational_to_string(r);
    Json j;
    j["weights"] = weights;
    return j;
}

WeightFunction weights_from_json(const Json& j) {
    WeightFunction w;
    for (const auto& [key, val] : j.at("weights").items()) {
        if (val.is_number_integer())
            w.weights[std::stoi(key)] = Rational(val.get<long long>());
        else
            w.weights[std::stoi(key)] = parse_rational(val.get<std::string>());
    }
    return w;
}

Json to_json(const FragilityWitness& w) {
    Json j;
    j["sets"] = subsets_to_json(w.sets);
    Json probs = Json::array();
    for (const auto& p : w.probs) probs.push_back(rational_to_string(p));
    j["probs"] = probs;
    j["q"] = w.q;
    j["k"] = w.k;
    return j;
}

FragilityWitness fragility_from_json(const Json& j) {
    FragilityWitness w;
    w.sets = subsets_from_json(j.at("sets"));
    for (const auto& p : j.at("probs")) {
        if (p.is_number_integer())
            w.probs.push_back(Rational(p.get<long long>()));
        else
            w.probs.push_back(parse_rational(p.get<std::string>()));
    }
    w.q = j.at("q").get<int>();
    w.k = j.at("k").get<int>();
    return w;
}

Json to_json(const EliminationForest& f) {
    Json j;
    j["parent"] = Json::array();
    for (int p : f.parent) j["parent"].push_back(p);
    return j;
}

Json to_json(const TreeDecomposition& d) {
    Json j;
    j["kind"] = "tree_decomposition";
    j["tree"] = to_json(d.tree);
    if (d.root)
        j["root"] = *d.root;
    else
        j["root"] = nullptr;
    j["bags"] = subsets_to_json(d.bags);
    return j;
}

Json to_json(const PathDecomposition& d) {
    Json j;
    j["kind"] = "path_decomposition";
    j["bags"] = subsets_to_json(d.bags);
    return j;
}

Json to_json(const TreePartition& d) {
    Json j;
    j["kind"] = "tree_partition";
    j["tree"] = to_json(d.tree);
    j["root"] = d.root;
    j["parts"] = subsets_to_json(d.parts);
    j["focus"] = to_json(d.focus);
    return j;
}

Json to_json(const RootedForestDecomposition& d) {
    Json j;
    j["kind"] = "rooted_forest_decomposition";
    j["parents"] = Json::array();
    for (int p : d.parents) j["parents"].push_back(p);
    j["bags"] = subsets_to_json(d.bags);
    j["variant"] = std::string(1, d.variant);
    j["level"] = d.level;
    if (!d.residuals.empty()) {
        Json res = Json::object();
        for (const auto& [node, sub] : d.residuals)
            if (sub) res[std::to_string(node)] = to_json(*sub);
        j["residuals"] = res;
    }
    return j;
}

Json to_json(const LayeredRSDecomposition& d) {
    Json j;
    j["kind"] = "layered_rs_decomposition";
    j["tree"] = to_json(d.tree);
    j["W"] = subsets_to_json(d.W);
    j["A"] = subsets_to_json(d.A);
    Json ds = Json::array();
    for (const auto& x : d.D) ds.push_back(to_json(x));
    j["D"] = ds;
    Json ls = Json::array();
    for (const auto& x : d.L) ls.push_back(subsets_to_json(x.layers));
    j["L"] = ls;
    j["c"] = d.c;
    return j;
}

Json certificate_to_json(const Certificate& c) {
    return std::visit([](const auto& d) { return to_json(d); }, c);
}

Certificate certificate_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "tree_decomposition") {
        TreeDecomposition d;
        d.tree = graph_from_json(j.at("tree"));
        if (j.contains("root") && !j.at("root").is_null()) d.root = j.at("root").get<int>();
        d.bags = subsets_from_json(j.at("bags"));
        return d;
    }
    if (kind == "path_decomposition") {
        PathDecomposition d;
        d.bags = subsets_from_json(j.at("bags"));
        return d;
    }
    if (kind == "tree_partition") {
        TreePartition d;
        d.tree = graph_from_json(j.at("tree"));
        d.root = j.value("root", 0);
        d.parts = subsets_from_json(j.at("parts"));
        d.focus = subset_from_json(j.at("focus"));
        return d;
    }
    if (kind == "rooted_forest_decomposition") {
        RootedForestDecomposition d;
        for (const auto& p : j.at("parents")) d.parents.push_back(p.get<int>());
        d.bags = subsets_from_json(j.at("bags"));
        d.variant = j.at("variant").get<std::string>().at(0);
        d.level = j.at("level").get<int>();
        if (j.contains("residuals"))
            for (const auto& [key, val] : j.at("residuals").items()) {
                auto sub = std::make_shared<RootedForestDecomposition>(
                    std::get<RootedForestDecomposition>(certificate_from_json(val)));
                d.residuals[std::stoi(key)] = sub;
            }
        return d;
    }
    if (kind == "layered_rs_decomposition") {
        LayeredRSDecomposition d;
        d.tree = graph_from_json(j.at("tree"));
        d.W = subsets_from_json(j.at("W"));
        d.A = subsets_from_json(j.at("A"));
        for (const auto& x : j.at("D"))
            d.D.push_back(std::get<TreeDecomposition>(certificate_from_json(x)));
        for (const auto& x : j.at("L")) {
            Layering l;
            l.layers = subsets_from_json(x);
            d.L.push_back(l);
        }
        d.c = j.at("c").get<int>();
        return d;
    }
    throw std::runtime_error("unknown certificate kind: " + kind);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

Json load_json(const std::string& path) { return Json::parse(read_file(path)); }

} // namespace sparsity
