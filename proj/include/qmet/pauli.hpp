#ifndef QMET_PAULI_HPP
#define QMET_PAULI_HPP

#include <string>

#include "qmet/bitset.hpp"
#include "qmet/errors.hpp"
#include "qmet/graph.hpp"

namespace qmet {

// N-qubit Pauli operator i^phase * prod_k P_k with P_k determined by the
// (x,z) bit pair: 00=I, 10=X, 11=Y, 01=Z.  Phase exponent is mod 4.
struct PauliString {
    std::size_t n = 0;
    Bitset x_mask;
    Bitset z_mask;
    int phase = 0; // exponent of i

    PauliString() = default;
    explicit PauliString(std::size_t n) : n(n), x_mask(n), z_mask(n) {}

    char letter(std::size_t k) const {
        bool x = x_mask.test(k), z = z_mask.test(k);
        return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
    }
    void set_letter(std::size_t k, char c);

    Bitset support() const { return x_mask | z_mask; }
    bool is_hermitian() const { return phase % 2 == 0; }

    std::string to_string() const;
    static PauliString parse(const std::string& text);
};

PauliString multiply(const PauliString& p, const PauliString& q);
bool commutes(const PauliString& p, const PauliString& q);

// The (S1,S2,S3,S4) = (X, identity, Y, Z) sites of a stabilizer product.
struct SupportPartition {
    Bitset s1, s2, s3, s4;
    std::size_t support_size() const { return s1.count() + s3.count() + s4.count(); }
};

SupportPartition support_partition(const PauliString& p);

// Vertex stabilizer S_i = X_i Z_{A_i}.
PauliString vertex_stabilizer(const Graph& g, int i);

// S_alpha = prod_{i in alpha} S_i, with its support partition.
std::pair<PauliString, SupportPartition> stabilizer_element(const Graph& g,
                                                            const Bitset& alpha);

} // namespace qmet

#endif
