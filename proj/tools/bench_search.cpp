// Benchmark: serial vs OpenMP exhaustive subset search on random graphs.
#include <chrono>
#include <cstdio>
#include <random>

#include "qmet/graph.hpp"
#include "qmet/qfi.hpp"

using namespace qmet;

namespace {

Graph random_connected(int n, std::mt19937_64& rng) {
    Graph g(n);
    for (int v = 1; v < n; ++v) g.add_edge(v, static_cast<int>(rng() % v));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (!g.has_edge(a, b) && rng() % 10 < 3) g.add_edge(a, b);
    return g;
}

template <typename F>
double time_ms(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    int max_n = argc > 1 ? std::atoi(argv[1]) : 20;
    std::mt19937_64 rng(12345);
    std::printf("%4s %12s %12s %8s\n", "n", "serial_ms", "parallel_ms", "speedup");
    for (int n = 14; n <= max_n; n += 2) {
        Graph g = random_connected(n, rng);
        SearchResult rs, rp;
        double ts = time_ms([&] { rs = search_exhaustive_serial(g); });
        double tp = time_ms([&] { rp = search_optimal_alpha(g, SearchMode::Exhaustive); });
        if (rs.qfi != rp.qfi || !(rs.alpha == rp.alpha)) {
            std::fprintf(stderr, "mismatch at n=%d\n", n);
            return 1;
        }
        std::printf("%4d %12.2f %12.2f %8.2f\n", n, ts, tp, ts / tp);
    }
    return 0;
}
