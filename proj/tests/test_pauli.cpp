#include <doctest.h>

#include <random>

#include <Eigen/Dense>

#include "fixtures.hpp"
#include "qmet/dense.hpp"
#include "qmet/pauli.hpp"

using namespace qmet;
using qmet::testing::ten_vertex_example;
using qmet::testing::vertex_set;

namespace {

// Dense matrix of a PauliString, used as the oracle for the phase algebra.
Eigen::MatrixXcd dense_pauli(const PauliString& p) {
    const int64_t dim = int64_t{1} << p.n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
    for (int64_t c = 0; c < dim; ++c) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
        e(c) = 1.0;
        m.col(c) = apply_pauli(p, e);
    }
    return m;
}

} // namespace

TEST_CASE("single-qubit products") {
    PauliString x = PauliString::parse("X");
    PauliString z = PauliString::parse("Z");
    PauliString xz = multiply(x, z);
    CHECK(xz.letter(0) == 'Y');
    CHECK(xz.phase == 3); // X*Z = -i Y
    PauliString xx = multiply(x, x);
    CHECK(xx.letter(0) == 'I');
    CHECK(xx.phase == 0);
}

TEST_CASE("two-qubit product with phase cancellation") {
    PauliString p = PauliString::parse("XZ");
    PauliString q = PauliString::parse("ZX");
    PauliString r = multiply(p, q);
    CHECK(r.to_string() == "+YY"); // (-i)(+i) = 1
}

TEST_CASE("multiply matches dense matrix products for n <= 3") {
    std::mt19937_64 rng(5);
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 40; ++trial) {
            PauliString p(n), q(n);
            for (int k = 0; k < n; ++k) {
                p.set_letter(k, "IXYZ"[rng() % 4]);
                q.set_letter(k, "IXYZ"[rng() % 4]);
            }
            p.phase = static_cast<int>(rng() % 4);
            q.phase = static_cast<int>(rng() % 4);
            Eigen::MatrixXcd lhs = dense_pauli(multiply(p, q));
            Eigen::MatrixXcd rhs = dense_pauli(p) * dense_pauli(q);
            CHECK((lhs - rhs).norm() < 1e-12);
            // associativity spot check
            PauliString r(n);
            for (int k = 0; k < n; ++k) r.set_letter(k, "IXYZ"[rng() % 4]);
            PauliString ab_c = multiply(multiply(p, q), r);
            PauliString a_bc = multiply(p, multiply(q, r));
            CHECK(ab_c.to_string() == a_bc.to_string());
        }
    }
}

TEST_CASE("commutation") {
    CHECK(commutes(PauliString::parse("X"), PauliString::parse("X")));
    CHECK_FALSE(commutes(PauliString::parse("X"), PauliString::parse("Z")));
    CHECK(commutes(PauliString::parse("XZ"), PauliString::parse("ZX")));
    CHECK_THROWS_AS(commutes(PauliString::parse("X"), PauliString::parse("XX")),
                    ValidationError);
}

TEST_CASE("vertex stabilizers") {
    Graph g = ten_vertex_example();
    PauliString sa = vertex_stabilizer(g, g.labels["A"]);
    CHECK(sa.to_string() == "+XIZIIIIIII"); // X_A Z_C

    Graph star = standard_graph(StandardGraph::Star, 4);
    CHECK(vertex_stabilizer(star, 0).to_string() == "+XZZZ");

    Graph isolated(2, {});
    CHECK(vertex_stabilizer(isolated, 1).to_string() == "+IX");
}

TEST_CASE("stabilizer element of the worked example") {
    Graph g = ten_vertex_example();
    Bitset alpha = vertex_set(10, {2, 5, 8, 9}); // {C,F,I,J}
    auto [s, part] = stabilizer_element(g, alpha);
    CHECK(part.s1 == vertex_set(10, {2, 5}));    // X on C,F
    CHECK(part.s3 == vertex_set(10, {8, 9}));    // Y on I,J
    CHECK(part.s4 == vertex_set(10, {0, 1, 3, 6})); // Z on A,B,D,G
    CHECK(part.s2 == vertex_set(10, {4, 7}));    // identity on E,H
    CHECK(part.support_size() == 8);
    CHECK(s.is_hermitian());
}

TEST_CASE("stabilizer element basics") {
    Graph g = ten_vertex_example();
    Bitset single = vertex_set(10, {5});
    auto [s, part] = stabilizer_element(g, single);
    CHECK(part.s1 == single);
    CHECK(part.s4 == g.neighborhood(5));
    CHECK_THROWS_AS(stabilizer_element(g, Bitset(10)), ValidationError);

    // K_N with alpha = V and N even: all-Y support
    Graph k4 = standard_graph(StandardGraph::Complete, 4);
    Bitset all = vertex_set(4, {0, 1, 2, 3});
    auto [s4, part4] = stabilizer_element(k4, all);
    CHECK(part4.s3 == all);
}

TEST_CASE("subset products commute and stabilize the graph state") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        int n = 4 + static_cast<int>(rng() % 4);
        Graph g = qmet::testing::random_connected_graph(n, rng);
        DenseState psi = graph_state(g);
        std::vector<std::pair<PauliString, Bitset>> samples;
        for (int i = 0; i < 25; ++i) {
            Bitset alpha = qmet::testing::random_nonempty_subset(n, rng);
            auto [s, part] = stabilizer_element(g, alpha);
            CHECK(stabilizes(s, psi));
            for (const auto& [other, beta] : samples) CHECK(commutes(s, other));
            samples.emplace_back(s, alpha);
        }
    }
}

TEST_CASE("support partition is order independent") {
    Graph g = ten_vertex_example();
    std::mt19937_64 rng(3);
    Bitset alpha = qmet::testing::random_nonempty_subset(10, rng);
    auto [s, part] = stabilizer_element(g, alpha);
    // rebuild multiplying in reverse order
    PauliString rev(10);
    auto vs = alpha.to_vector();
    for (auto it = vs.rbegin(); it != vs.rend(); ++it)
        rev = multiply(rev, vertex_stabilizer(g, *it));
    SupportPartition part2 = support_partition(rev);
    CHECK(part.s1 == part2.s1);
    CHECK(part.s2 == part2.s2);
    CHECK(part.s3 == part2.s3);
    CHECK(part.s4 == part2.s4);
}

TEST_CASE("text round trip") {
    PauliString p = PauliString::parse("-iXYZI");
    CHECK(p.to_string() == "-iXYZI");
    CHECK(p.phase == 3);
    CHECK(PauliString::parse("+IX").to_string() == "+IX");
    CHECK_THROWS_AS(PauliString::parse("XQ"), ValidationError);
}
