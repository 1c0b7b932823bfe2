#ifndef QMET_QFI_HPP
#define QMET_QFI_HPP

#include <cstdint>
#include <vector>

#include "qmet/graph.hpp"
#include "qmet/pauli.hpp"

namespace qmet {

// Closed-form QFI of the stabilizer-indexed protocol and its structural
// upper bound.  All values are exact integers.

int64_t qfi_alpha(const Graph& g, const TwinsStructure& t, const Bitset& alpha);
int64_t qfi_alpha(const Graph& g, const Bitset& alpha);
int64_t qfi_upper_bound(const Graph& g);
int64_t qfi_upper_bound(const TwinsStructure& t, int n);

// True iff qfi_alpha(g, alpha) meets the structural upper bound: empty
// identity support, every true-twins class of size >= 2 inside S1+S4,
// every twins class of size >= 2 and every leaf inside S3+S4.
bool attainable(const Graph& g, const TwinsStructure& t, const Bitset& alpha);

enum class SearchMode { Exhaustive, Greedy };

struct SearchResult {
    Bitset alpha;
    int64_t qfi = 0;
    bool attains_bound = false;
};

// Exhaustive mode enumerates all nonempty alpha (requires n <= limit) with
// the smallest bitmask winning ties; greedy mode does single-vertex flips
// from random starts and claims no optimality.
SearchResult search_optimal_alpha(const Graph& g, SearchMode mode,
                                  int exhaustive_limit = 20, int greedy_restarts = 32,
                                  uint64_t seed = 1);

// Serial reference for the exhaustive kernel; the OpenMP version in
// search_optimal_alpha must agree with this exactly.
SearchResult search_exhaustive_serial(const Graph& g, int exhaustive_limit = 20);

// Per-vertex protocol description: Hamiltonian letters per the support
// partition and the graph's root/U structure, measurement letter per the
// stabilizer (Z on identity sites).
struct Protocol1Model {
    Bitset alpha;
    SupportPartition partition;
    std::vector<std::pair<char, int>> hamiltonian; // (letter, vertex)
    std::vector<char> measurement;                 // per-vertex basis letter
    int64_t qfi = 0;
    int64_t bound = 0;
    bool attains_bound = false;
};

Protocol1Model protocol1_model(const Graph& g, const Bitset& alpha);

// Sorted multiset {qfi_alpha(g, alpha)} over all nonempty alpha.
std::vector<int64_t> lc_qfi_multiset(const Graph& g, int exhaustive_limit = 20);

} // namespace qmet

#endif
