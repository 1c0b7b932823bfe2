#ifndef QMET_JSON_IO_HPP
#define QMET_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "qmet/construct.hpp"
#include "qmet/graph.hpp"
#include "qmet/subspace.hpp"

namespace qmet {

// {"n": int, "edges": [[i,j],...], "labels": {"A": 0, ...}?}
Graph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const Graph& g);
Graph load_graph(const std::string& path);

// {"n": int, "blocks": [[...],...]}
SubspaceSpec partition_from_json(const nlohmann::json& j);
nlohmann::json partition_to_json(const SubspaceSpec& spec);

// {"partition": {...}, "coeffs_real": [[..]], "coeffs_imag": [[..]]}
SubspaceState subspace_state_from_json(const nlohmann::json& j);

// {"type": "A"|"B", "meta_edges": [[i,j]], "assignment": [{"kind":"s2","size":9}],
//  "meta_stabilizer": "XZZX"?}
MetaGraph meta_graph_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);

// Resolve a vertex given either an integer or a label string.
int resolve_vertex(const Graph& g, const nlohmann::json& v);

} // namespace qmet

#endif
