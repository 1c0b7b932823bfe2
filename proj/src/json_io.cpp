#include "qmet/json_io.hpp"

#include <fstream>

namespace qmet {

using nlohmann::json;

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

Graph graph_from_json(const json& j) {
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw ValidationError("graph JSON needs an integer \"n\"");
    Graph g(j["n"].get<int>());
    if (j.contains("edges")) {
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2)
                throw ValidationError("each edge must be a pair [i,j]");
            int a = e[0].get<int>(), b = e[1].get<int>();
            if (g.has_edge(a, b)) throw ValidationError("duplicate edge [" + std::to_string(a) +
                                                        "," + std::to_string(b) + "]");
            g.add_edge(a, b);
        }
    }
    if (j.contains("labels"))
        for (auto& [name, idx] : j["labels"].items()) {
            int v = idx.get<int>();
            if (v < 0 || v >= g.n()) throw ValidationError("label \"" + name + "\" out of range");
            g.labels[name] = v;
        }
    return g;
}

json graph_to_json(const Graph& g) {
    json j;
    j["n"] = g.n();
    j["edges"] = json::array();
    for (auto [a, b] : g.edges()) j["edges"].push_back({a, b});
    if (!g.labels.empty()) {
        json labels = json::object();
        for (const auto& [name, v] : g.labels) labels[name] = v;
        j["labels"] = labels;
    }
    return j;
}

Graph load_graph(const std::string& path) { return graph_from_json(load_json_file(path)); }

int resolve_vertex(const Graph& g, const json& v) {
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_string()) {
        auto it = g.labels.find(v.get<std::string>());
        if (it == g.labels.end())
            throw ValidationError("unknown vertex label \"" + v.get<std::string>() + "\"");
        return it->second;
    }
    throw ValidationError("vertex must be an index or a label");
}

SubspaceSpec partition_from_json(const json& j) {
    SubspaceSpec spec;
    if (!j.contains("n")) throw ValidationError("partition JSON needs \"n\"");
    spec.n = j["n"].get<int>();
    for (const auto& b : j.at("blocks")) spec.blocks.push_back(b.get<std::vector<int>>());
    spec.validate();
    return spec;
}

json partition_to_json(const SubspaceSpec& spec) {
    json j;
    j["n"] = spec.n;
    j["blocks"] = spec.blocks;
    return j;
}

SubspaceState subspace_state_from_json(const json& j) {
    SubspaceState s;
    s.spec = partition_from_json(j.at("partition"));
    const auto& re = j.at("coeffs_real");
    const int64_t dim = int64_t{1} << s.spec.m();
    s.coeffs = Eigen::MatrixXcd::Zero(dim, dim);
    for (int64_t a = 0; a < dim; ++a)
        for (int64_t b = 0; b < dim; ++b) {
            double rr = re.at(a).at(b).get<double>();
            double ii = j.contains("coeffs_imag") ? j["coeffs_imag"].at(a).at(b).get<double>() : 0.0;
            s.coeffs(a, b) = std::complex<double>(rr, ii);
        }
    s.validate();
    return s;
}

MetaGraph meta_graph_from_json(const json& j) {
    MetaGraph meta;
    std::string type = j.at("type").get<std::string>();
    if (type == "A") meta.join_mode = JoinMode::Bridge;
    else if (type == "B") meta.join_mode = JoinMode::FullJoin;
    else throw ValidationError("family type must be \"A\" or \"B\"");
    if (j.contains("meta_edges"))
        for (const auto& e : j["meta_edges"])
            meta.meta_edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    for (const auto& a : j.at("assignment")) {
        std::string kind = a.at("kind").get<std::string>();
        SubgraphKind k;
        if (kind == "s1") k = SubgraphKind::S1;
        else if (kind == "s2") k = SubgraphKind::S2;
        else if (kind == "s3") k = SubgraphKind::S3;
        else if (kind == "s4") k = SubgraphKind::S4;
        else throw ValidationError("fragment kind must be s1..s4");
        meta.assignment.push_back({k, a.at("size").get<int>()});
    }
    if (j.contains("meta_stabilizer"))
        meta.meta_stabilizer = j["meta_stabilizer"].get<std::string>();
    return meta;
}

} // namespace qmet
