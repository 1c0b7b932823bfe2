#ifndef QMET_GRAPH_HPP
#define QMET_GRAPH_HPP

#include <map>
#include <string>
#include <vector>

#include "qmet/bitset.hpp"
#include "qmet/errors.hpp"

namespace qmet {

// Undirected simple graph with per-vertex adjacency bitsets.  Immutable
// after construction; mutating operations return a new graph.
class Graph {
public:
    explicit Graph(int n);
    Graph(int n, const std::vector<std::pair<int, int>>& edges);

    int n() const { return n_; }
    const Bitset& neighborhood(int v) const;
    int degree(int v) const { return static_cast<int>(neighborhood(v).count()); }
    bool has_edge(int i, int j) const;
    void add_edge(int i, int j);

    std::vector<std::pair<int, int>> edges() const;
    bool is_connected() const;
    Graph local_complement(int v) const;

    // Optional vertex labels (paper fixtures name vertices A..J).
    std::map<std::string, int> labels;

private:
    int n_;
    std::vector<Bitset> adj_;
    void check_vertex(int v) const;
};

// Twins/true-twins partition plus leaf/root structure; all inputs to the
// closed-form QFI expressions.
struct TwinsStructure {
    std::vector<Bitset> twins_classes;      // equivalence classes of A_j == A_k
    std::vector<Bitset> true_twins_classes; // classes of A_j+{j} == A_k+{k}
    Bitset leaves;                          // degree-1 vertices
    Bitset roots;                           // unique neighbors of leaves
    Bitset u_set;                           // vertices in singleton true-twins classes
    Bitset u_bar;                           // complement of u_set
};

TwinsStructure twins_structure(const Graph& g);

enum class StandardGraph { Star, Cycle, Path, Complete, CompleteBipartite };

Graph standard_graph(StandardGraph kind, int a, int b = 0);

} // namespace qmet

#endif
