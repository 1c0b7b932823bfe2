#include "qmet/graph.hpp"

#include <unordered_map>

namespace qmet {

Graph::Graph(int n) : n_(n) {
    if (n <= 0) throw ValidationError("graph needs a positive vertex count");
    adj_.assign(n, Bitset(n));
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n) {
    for (auto [i, j] : edges) add_edge(i, j);
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= n_)
        throw ValidationError("vertex " + std::to_string(v) + " out of range [0," +
                              std::to_string(n_) + ")");
}

const Bitset& Graph::neighborhood(int v) const {
    check_vertex(v);
    return adj_[v];
}

bool Graph::has_edge(int i, int j) const {
    check_vertex(i);
    check_vertex(j);
    return adj_[i].test(j);
}

void Graph::add_edge(int i, int j) {
    check_vertex(i);
    check_vertex(j);
    if (i == j) throw ValidationError("self-loop at vertex " + std::to_string(i));
    adj_[i].set(j);
    adj_[j].set(i);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i)
        adj_[i].for_each([&](std::size_t j) {
            if (static_cast<int>(j) > i) out.emplace_back(i, static_cast<int>(j));
        });
    return out;
}

bool Graph::is_connected() const {
    std::vector<int> stack{0};
    Bitset seen(n_);
    seen.set(0);
    std::size_t reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        adj_[v].for_each([&](std::size_t u) {
            if (!seen.test(u)) {
                seen.set(u);
                ++reached;
                stack.push_back(static_cast<int>(u));
            }
        });
    }
    return reached == static_cast<std::size_t>(n_);
}

Graph Graph::local_complement(int v) const {
    check_vertex(v);
    Graph out = *this;
    auto nb = adj_[v].to_vector();
    for (std::size_t a = 0; a < nb.size(); ++a)
        for (std::size_t b = a + 1; b < nb.size(); ++b) {
            out.adj_[nb[a]].flip(nb[b]);
            out.adj_[nb[b]].flip(nb[a]);
        }
    return out;
}

namespace {

std::vector<Bitset> classes_by_key(int n, const std::vector<Bitset>& keys) {
    std::unordered_map<Bitset, int, BitsetHash> index;
    std::vector<Bitset> classes;
    for (int v = 0; v < n; ++v) {
        auto [it, fresh] = index.try_emplace(keys[v], static_cast<int>(classes.size()));
        if (fresh) classes.emplace_back(n);
        classes[it->second].set(v);
    }
    return classes;
}

} // namespace

TwinsStructure twins_structure(const Graph& g) {
    const int n = g.n();
    TwinsStructure t;
    std::vector<Bitset> open_keys(n), closed_keys(n);
    for (int v = 0; v < n; ++v) {
        open_keys[v] = g.neighborhood(v);
        closed_keys[v] = open_keys[v];
        closed_keys[v].set(v);
    }
    t.twins_classes = classes_by_key(n, open_keys);
    t.true_twins_classes = classes_by_key(n, closed_keys);

    t.leaves = Bitset(n);
    t.roots = Bitset(n);
    for (int v = 0; v < n; ++v)
        if (g.degree(v) == 1) {
            t.leaves.set(v);
            t.roots.set(g.neighborhood(v).to_vector()[0]);
        }

    t.u_set = Bitset(n);
    for (const auto& c : t.true_twins_classes)
        if (c.count() == 1) t.u_set |= c;
    t.u_bar = t.u_set;
    for (int v = 0; v < n; ++v) t.u_bar.flip(v);
    return t;
}

Graph standard_graph(StandardGraph kind, int a, int b) {
    switch (kind) {
    case StandardGraph::Star: {
        if (a < 2) throw ValidationError("star needs >= 2 vertices");
        Graph g(a);
        for (int i = 1; i < a; ++i) g.add_edge(0, i);
        return g;
    }
    case StandardGraph::Cycle: {
        if (a < 3) throw ValidationError("cycle needs >= 3 vertices");
        Graph g(a);
        for (int i = 0; i < a; ++i) g.add_edge(i, (i + 1) % a);
        return g;
    }
    case StandardGraph::Path: {
        if (a < 1) throw ValidationError("path needs >= 1 vertex");
        Graph g(a);
        for (int i = 0; i + 1 < a; ++i) g.add_edge(i, i + 1);
        return g;
    }
    case StandardGraph::Complete: {
        if (a < 1) throw ValidationError("complete graph needs >= 1 vertex");
        Graph g(a);
        for (int i = 0; i < a; ++i)
            for (int j = i + 1; j < a; ++j) g.add_edge(i, j);
        return g;
    }
    case StandardGraph::CompleteBipartite: {
        if (a < 1 || b < 1) throw ValidationError("bipartite parts must be positive");
        Graph g(a + b);
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
        return g;
    }
    }
    throw ValidationError("unknown standard graph kind");
}

} // namespace qmet
