#ifndef QMET_TEST_FIXTURES_HPP
#define QMET_TEST_FIXTURES_HPP

#include <random>

#include "qmet/graph.hpp"

namespace qmet::testing {

// Ten-vertex example graph: leaves A,B,D hang off C, C connects to the
// E-F-G-H diamond (F,G true twins), H chains to I with leaf J.
// Vertices 0..9 = A..J.
inline Graph ten_vertex_example() {
    Graph g(10, {{0, 2}, {1, 2}, {3, 2}, {2, 4}, {4, 5}, {4, 6}, {5, 6}, {5, 7},
                 {6, 7}, {7, 8}, {8, 9}});
    const char* names = "ABCDEFGHIJ";
    for (int i = 0; i < 10; ++i) g.labels[std::string(1, names[i])] = i;
    return g;
}

inline Bitset vertex_set(int n, std::initializer_list<int> vs) {
    Bitset b(n);
    for (int v : vs) b.set(v);
    return b;
}

// Random connected graph: spanning tree plus density-controlled extras.
inline Graph random_connected_graph(int n, std::mt19937_64& rng, double extra_p = 0.3) {
    Graph g(n);
    for (int v = 1; v < n; ++v)
        g.add_edge(v, static_cast<int>(rng() % v));
    std::bernoulli_distribution coin(extra_p);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!g.has_edge(i, j) && coin(rng)) g.add_edge(i, j);
    return g;
}

inline Bitset random_nonempty_subset(int n, std::mt19937_64& rng) {
    Bitset b(n);
    for (int v = 0; v < n; ++v)
        if (rng() & 1) b.set(v);
    if (b.none()) b.set(static_cast<int>(rng() % n));
    return b;
}

} // namespace qmet::testing

#endif
