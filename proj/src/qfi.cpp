#include "qmet/qfi.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include <omp.h>

namespace qmet {

namespace {

int64_t pairs(std::size_t c) { return static_cast<int64_t>(c) * (c - 1) / 2; }

void require_protocol_graph(const Graph& g) {
    if (!g.is_connected()) throw ValidationError("protocol operations require a connected graph");
}

struct Partition64 {
    uint64_t s34; // Z-parity sites (S3 + S4)
    uint64_t s14; // alpha XOR parity (S1 + S4)
    uint64_t supp;
};

// Structure of a graph with n <= 64, flattened to word masks for the
// exhaustive search kernel.
struct Fast64 {
    int n;
    std::vector<uint64_t> adj;
    std::vector<uint64_t> twins;  // classes of size >= 2 only
    std::vector<uint64_t> ttwins; // classes of size >= 2 only
    uint64_t leaves;

    Fast64(const Graph& g, const TwinsStructure& t) : n(g.n()), leaves(0) {
        auto low = [](const Bitset& b) {
            uint64_t m = 0;
            b.for_each([&](std::size_t i) { m |= uint64_t{1} << i; });
            return m;
        };
        for (int v = 0; v < n; ++v) adj.push_back(low(g.neighborhood(v)));
        for (const auto& c : t.twins_classes)
            if (c.count() >= 2) twins.push_back(low(c));
        for (const auto& c : t.true_twins_classes)
            if (c.count() >= 2) ttwins.push_back(low(c));
        leaves = low(t.leaves);
    }

    Partition64 partition(uint64_t alpha) const {
        Partition64 p{0, 0, 0};
        for (int v = 0; v < n; ++v) {
            uint64_t bit = uint64_t{1} << v;
            bool a = alpha & bit;
            bool zp = std::popcount(adj[v] & alpha) & 1;
            if (zp) p.s34 |= bit;
            if (a != zp) p.s14 |= bit;
            if (a || zp) p.supp |= bit;
        }
        return p;
    }

    int64_t qfi(uint64_t alpha) const {
        Partition64 p = partition(alpha);
        int64_t f = std::popcount(p.supp);
        for (uint64_t c : twins) f += 2 * pairs(std::popcount(c & p.s34));
        for (uint64_t c : ttwins) f += 2 * pairs(std::popcount(c & p.s14));
        f += 2 * std::popcount(leaves & p.s34);
        return f;
    }
};

SupportPartition partition_of(const Graph& g, const Bitset& alpha) {
    const int n = g.n();
    SupportPartition sp;
    sp.s1 = Bitset(n);
    sp.s2 = Bitset(n);
    sp.s3 = Bitset(n);
    sp.s4 = Bitset(n);
    for (int v = 0; v < n; ++v) {
        bool a = alpha.test(v);
        bool zp = g.neighborhood(v).and_parity(alpha);
        if (a && zp) sp.s3.set(v);
        else if (a) sp.s1.set(v);
        else if (zp) sp.s4.set(v);
        else sp.s2.set(v);
    }
    return sp;
}

} // namespace

int64_t qfi_alpha(const Graph& g, const TwinsStructure& t, const Bitset& alpha) {
    require_protocol_graph(g);
    if (alpha.none()) throw ValidationError("alpha must be nonempty");
    SupportPartition sp = partition_of(g, alpha);
    Bitset s34 = sp.s3 | sp.s4;
    Bitset s14 = sp.s1 | sp.s4;
    int64_t f = static_cast<int64_t>(sp.support_size());
    for (const auto& c : t.twins_classes) f += 2 * pairs(c.and_count(s34));
    for (const auto& c : t.true_twins_classes) f += 2 * pairs(c.and_count(s14));
    f += 2 * static_cast<int64_t>(t.leaves.and_count(s34));
    return f;
}

int64_t qfi_alpha(const Graph& g, const Bitset& alpha) {
    return qfi_alpha(g, twins_structure(g), alpha);
}

int64_t qfi_upper_bound(const TwinsStructure& t, int n) {
    int64_t f = n;
    for (const auto& c : t.twins_classes) f += 2 * pairs(c.count());
    for (const auto& c : t.true_twins_classes) f += 2 * pairs(c.count());
    f += 2 * static_cast<int64_t>(t.leaves.count());
    return f;
}

int64_t qfi_upper_bound(const Graph& g) {
    require_protocol_graph(g);
    return qfi_upper_bound(twins_structure(g), g.n());
}

bool attainable(const Graph& g, const TwinsStructure& t, const Bitset& alpha) {
    require_protocol_graph(g);
    if (alpha.none()) throw ValidationError("alpha must be nonempty");
    SupportPartition sp = partition_of(g, alpha);
    if (sp.s2.any()) return false;
    Bitset s34 = sp.s3 | sp.s4;
    Bitset s14 = sp.s1 | sp.s4;
    for (const auto& c : t.true_twins_classes)
        if (c.count() >= 2 && c.and_count(s14) != c.count()) return false;
    for (const auto& c : t.twins_classes)
        if (c.count() >= 2 && c.and_count(s34) != c.count()) return false;
    return t.leaves.and_count(s34) == t.leaves.count();
}

SearchResult search_exhaustive_serial(const Graph& g, int exhaustive_limit) {
    require_protocol_graph(g);
    if (g.n() > exhaustive_limit)
        throw SizeLimitError("exhaustive search limited to n <= " +
                             std::to_string(exhaustive_limit));
    TwinsStructure t = twins_structure(g);
    Fast64 fg(g, t);
    const uint64_t total = uint64_t{1} << g.n();
    int64_t best = -1;
    uint64_t best_mask = 0;
    for (uint64_t m = 1; m < total; ++m) {
        int64_t f = fg.qfi(m);
        if (f > best) {
            best = f;
            best_mask = m;
        }
    }
    SearchResult r;
    r.alpha = Bitset::from_mask(g.n(), best_mask);
    r.qfi = best;
    r.attains_bound = best == qfi_upper_bound(t, g.n());
    return r;
}

namespace {

SearchResult search_exhaustive_parallel(const Graph& g, int exhaustive_limit) {
    if (g.n() > exhaustive_limit)
        throw SizeLimitError("exhaustive search limited to n <= " +
                             std::to_string(exhaustive_limit));
    TwinsStructure t = twins_structure(g);
    Fast64 fg(g, t);
    const int64_t total = int64_t{1} << g.n();
    int64_t best = -1;
    uint64_t best_mask = 0;
    // Each thread tracks its own (max qfi, min mask); merged with the same
    // tie-break so the result is schedule-independent.
#pragma omp parallel
    {
        int64_t lbest = -1;
        uint64_t lmask = 0;
#pragma omp for schedule(static)
        for (int64_t m = 1; m < total; ++m) {
            int64_t f = fg.qfi(static_cast<uint64_t>(m));
            if (f > lbest || (f == lbest && static_cast<uint64_t>(m) < lmask)) {
                lbest = f;
                lmask = static_cast<uint64_t>(m);
            }
        }
#pragma omp critical
        {
            if (lbest > best || (lbest == best && lmask < best_mask)) {
                best = lbest;
                best_mask = lmask;
            }
        }
    }
    SearchResult r;
    r.alpha = Bitset::from_mask(g.n(), best_mask);
    r.qfi = best;
    r.attains_bound = best == qfi_upper_bound(t, g.n());
    return r;
}

SearchResult search_greedy(const Graph& g, int restarts, uint64_t seed) {
    TwinsStructure t = twins_structure(g);
    const int n = g.n();
    std::mt19937_64 rng(seed);
    int64_t best = -1;
    Bitset best_alpha(n);
    for (int r = 0; r < restarts; ++r) {
        Bitset alpha(n);
        for (int v = 0; v < n; ++v)
            if (rng() & 1) alpha.set(v);
        if (alpha.none()) alpha.set(static_cast<int>(rng() % n));
        int64_t cur = qfi_alpha(g, t, alpha);
        bool improved = true;
        while (improved) {
            improved = false;
            for (int v = 0; v < n; ++v) {
                alpha.flip(v);
                if (alpha.none()) {
                    alpha.flip(v);
                    continue;
                }
                int64_t f = qfi_alpha(g, t, alpha);
                if (f > cur) {
                    cur = f;
                    improved = true;
                } else {
                    alpha.flip(v);
                }
            }
        }
        if (cur > best) {
            best = cur;
            best_alpha = alpha;
        }
    }
    SearchResult res;
    res.alpha = best_alpha;
    res.qfi = best;
    res.attains_bound = best == qfi_upper_bound(t, n);
    return res;
}

} // namespace

SearchResult search_optimal_alpha(const Graph& g, SearchMode mode, int exhaustive_limit,
                                  int greedy_restarts, uint64_t seed) {
    require_protocol_graph(g);
    if (mode == SearchMode::Exhaustive) return search_exhaustive_parallel(g, exhaustive_limit);
    return search_greedy(g, greedy_restarts, seed);
}

Protocol1Model protocol1_model(const Graph& g, const Bitset& alpha) {
    require_protocol_graph(g);
    if (alpha.none()) throw ValidationError("alpha must be nonempty");
    TwinsStructure t = twins_structure(g);
    Protocol1Model m;
    m.alpha = alpha;
    m.partition = partition_of(g, alpha);
    m.qfi = qfi_alpha(g, t, alpha);
    m.bound = qfi_upper_bound(t, g.n());
    m.attains_bound = m.qfi == m.bound;

    const int n = g.n();
    m.measurement.resize(n, 'Z'); // identity sites measured in Z by convention
    m.partition.s1.for_each([&](std::size_t v) { m.measurement[v] = 'X'; });
    m.partition.s3.for_each([&](std::size_t v) { m.measurement[v] = 'Y'; });

    for (int v = 0; v < n; ++v) {
        bool in_s1 = m.partition.s1.test(v);
        bool in_s3 = m.partition.s3.test(v);
        bool in_s4 = m.partition.s4.test(v);
        bool root = t.roots.test(v);
        char h = 0;
        if ((in_s1 || in_s3) && root) h = 'Z';
        else if ((in_s1 && !root) || (in_s4 && t.u_bar.test(v))) h = 'Y';
        else if ((in_s3 && !root) || (in_s4 && t.u_set.test(v))) h = 'X';
        if (h) m.hamiltonian.emplace_back(h, v);
    }
    return m;
}

std::vector<int64_t> lc_qfi_multiset(const Graph& g, int exhaustive_limit) {
    require_protocol_graph(g);
    if (g.n() > exhaustive_limit)
        throw SizeLimitError("multiset enumeration limited to n <= " +
                             std::to_string(exhaustive_limit));
    TwinsStructure t = twins_structure(g);
    Fast64 fg(g, t);
    const uint64_t total = uint64_t{1} << g.n();
    std::vector<int64_t> out;
    out.reserve(total - 1);
    for (uint64_t m = 1; m < total; ++m) out.push_back(fg.qfi(m));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace qmet
