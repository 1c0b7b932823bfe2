#include "qmet/pauli.hpp"

namespace qmet {

void PauliString::set_letter(std::size_t k, char c) {
    switch (c) {
    case 'I': x_mask.reset(k); z_mask.reset(k); break;
    case 'X': x_mask.set(k); z_mask.reset(k); break;
    case 'Y': x_mask.set(k); z_mask.set(k); break;
    case 'Z': x_mask.reset(k); z_mask.set(k); break;
    default: throw ValidationError(std::string("bad Pauli letter '") + c + "'");
    }
}

std::string PauliString::to_string() const {
    static const char* prefix[4] = {"+", "+i", "-", "-i"};
    std::string out = prefix[((phase % 4) + 4) % 4];
    for (std::size_t k = 0; k < n; ++k) out += letter(k);
    return out;
}

PauliString PauliString::parse(const std::string& text) {
    std::size_t pos = 0;
    int phase = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        phase = text[pos] == '-' ? 2 : 0;
        ++pos;
        if (pos < text.size() && text[pos] == 'i') {
            phase += 1;
            ++pos;
        }
    }
    PauliString p(text.size() - pos);
    p.phase = phase;
    for (std::size_t k = 0; pos < text.size(); ++k, ++pos) p.set_letter(k, text[pos]);
    return p;
}

PauliString multiply(const PauliString& p, const PauliString& q) {
    if (p.n != q.n) throw ValidationError("Pauli size mismatch");
    PauliString out(p.n);
    out.x_mask = p.x_mask ^ q.x_mask;
    out.z_mask = p.z_mask ^ q.z_mask;
    // i-exponent for literal products: tab[a][b] with codes I=0,X=1,Z=2,Y=3
    // (code = x + 2z).  Nonzero entries come from X*Z=-iY etc.
    static const int tab[4][4] = {
        {0, 0, 0, 0},  // I*_
        {0, 0, 3, 1},  // X*{I,X,Z,Y}
        {0, 1, 0, 3},  // Z*{I,X,Z,Y}
        {0, 3, 1, 0},  // Y*{I,X,Z,Y}
    };
    int phase = p.phase + q.phase;
    Bitset touched = p.support() | q.support();
    touched.for_each([&](std::size_t k) {
        int a = (p.x_mask.test(k) ? 1 : 0) + (p.z_mask.test(k) ? 2 : 0);
        int b = (q.x_mask.test(k) ? 1 : 0) + (q.z_mask.test(k) ? 2 : 0);
        phase += tab[a][b];
    });
    out.phase = ((phase % 4) + 4) % 4;
    return out;
}

bool commutes(const PauliString& p, const PauliString& q) {
    if (p.n != q.n) throw ValidationError("Pauli size mismatch");
    // symplectic inner product parity
    return (p.x_mask.and_parity(q.z_mask) ^ p.z_mask.and_parity(q.x_mask)) == 0;
}

SupportPartition support_partition(const PauliString& p) {
    SupportPartition sp;
    sp.s1 = Bitset(p.n);
    sp.s2 = Bitset(p.n);
    sp.s3 = Bitset(p.n);
    sp.s4 = Bitset(p.n);
    for (std::size_t k = 0; k < p.n; ++k) {
        bool x = p.x_mask.test(k), z = p.z_mask.test(k);
        if (x && z) sp.s3.set(k);
        else if (x) sp.s1.set(k);
        else if (z) sp.s4.set(k);
        else sp.s2.set(k);
    }
    return sp;
}

PauliString vertex_stabilizer(const Graph& g, int i) {
    PauliString p(g.n());
    p.x_mask.set(i);
    p.z_mask = g.neighborhood(i);
    return p;
}

std::pair<PauliString, SupportPartition> stabilizer_element(const Graph& g,
                                                            const Bitset& alpha) {
    if (alpha.none()) throw ValidationError("alpha must be nonempty");
    PauliString prod(g.n());
    alpha.for_each([&](std::size_t i) {
        prod = multiply(prod, vertex_stabilizer(g, static_cast<int>(i)));
    });
    return {prod, support_partition(prod)};
}

} // namespace qmet
