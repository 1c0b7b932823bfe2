#ifndef QMET_CONSTRUCT_HPP
#define QMET_CONSTRUCT_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qmet/graph.hpp"
#include "qmet/qfi.hpp"

namespace qmet {

enum class SubgraphKind { S1, S2, S3, S4 };

// Canonical fragment realizations: one large true-twins class (complete
// graph), a twins class of leaves with common neighbor (star), a twins
// class with |A_i| = 2 plus its neighborhood (complete bipartite K_{2,m}),
// and isolated vertices.
struct FragmentSpec {
    SubgraphKind kind;
    int size;
};

Graph build_fragment(const FragmentSpec& frag);

enum class JoinMode { Bridge, FullJoin }; // A-type / B-type

// Compatibility of fragment kinds with meta-stabilizer letters.  Entries:
// +1 stated allowed, -1 stated prohibited, 0 unspecified (permitted but
// flagged).  Pre-loaded with only the constraints stated for the
// construction; everything else is configuration.
struct RuleTable {
    int entry[3][4]; // letter X,Y,Z x kind s1..s4
    static RuleTable defaults();
    int lookup(char letter, SubgraphKind kind) const;
};

struct MetaGraph {
    std::vector<std::pair<int, int>> meta_edges;
    std::vector<FragmentSpec> assignment;
    JoinMode join_mode = JoinMode::Bridge;
    std::optional<std::string> meta_stabilizer; // per-meta-vertex letter, B-type
    RuleTable rules = RuleTable::defaults();

    int size() const { return static_cast<int>(assignment.size()); }
};

struct CompositeGraph {
    Graph graph;
    std::vector<int> fragment_offset;       // first vertex of each fragment
    std::vector<std::string> rule_warnings; // unspecified rule cells that were used
};

CompositeGraph build_a_type(const MetaGraph& meta);
CompositeGraph build_b_type(const MetaGraph& meta);

struct ScalingPoint {
    int n;
    int64_t best_qfi;
    int64_t bound;
};

struct ScalingResult {
    std::vector<ScalingPoint> points;
    double exponent;       // least-squares slope of log best_qfi vs log n
    double bound_exponent; // same for the structural bound
};

ScalingResult scaling_experiment(const std::function<Graph(int)>& builder,
                                 const std::vector<int>& n_values, SearchMode mode,
                                 uint64_t seed = 1);

// The n^(A) ~ N^(1/3) star fragments of size N^(2/3) chained in a path;
// N must be a perfect cube.
Graph a_type_cluster(int n);

} // namespace qmet

#endif
