#include "qmet/dense.hpp"

#include <bit>
#include <cmath>

namespace qmet {

using cd = std::complex<double>;

namespace {

constexpr double kEigCutoff = 1e-12; // lambda_j + lambda_k below this is skipped
constexpr double kProbCutoff = 1e-14;

void check_pure_limit(int n, const OracleLimits& lim) {
    if (n > lim.pure_qubits)
        throw SizeLimitError("pure-state oracle limited to n <= " +
                             std::to_string(lim.pure_qubits));
}

Eigen::Matrix2cd expm_herm(const Eigen::Matrix2cd& h, double factor) {
    // e^{i * factor * h} for Hermitian h
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(h);
    Eigen::Vector2cd d;
    for (int i = 0; i < 2; ++i) d(i) = std::exp(cd(0, factor * es.eigenvalues()(i)));
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

bool is_zero_term(const Eigen::Matrix2cd& m) { return m.norm() < 1e-15; }

} // namespace

DenseState DenseState::from_vector(int n, Eigen::VectorXcd v) {
    if (v.size() != (int64_t{1} << n)) throw ValidationError("state vector dimension mismatch");
    double norm = v.norm();
    if (std::abs(norm - 1.0) > 1e-10) throw ValidationError("state vector not normalized");
    DenseState s;
    s.n = n;
    s.pure = true;
    s.vec = std::move(v);
    return s;
}

DenseState DenseState::from_matrix(int n, Eigen::MatrixXcd m) {
    const int64_t dim = int64_t{1} << n;
    if (m.rows() != dim || m.cols() != dim)
        throw ValidationError("density matrix dimension mismatch");
    if ((m - m.adjoint()).norm() > 1e-10) throw ValidationError("density matrix not Hermitian");
    if (std::abs(m.trace().real() - 1.0) > 1e-10) throw ValidationError("density matrix trace != 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    if (es.eigenvalues().minCoeff() < -1e-10) throw ValidationError("density matrix not PSD");
    DenseState s;
    s.n = n;
    s.pure = false;
    s.mat = std::move(m);
    return s;
}

Eigen::MatrixXcd DenseState::density() const {
    if (pure) return vec * vec.adjoint();
    return mat;
}

Eigen::Matrix2cd pauli_matrix(char letter) {
    Eigen::Matrix2cd m;
    switch (letter) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cd(0, -1), cd(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw ValidationError(std::string("bad Pauli letter '") + letter + "'");
    }
    return m;
}

void apply_single_qubit(Eigen::VectorXcd& v, int n, int qubit, const Eigen::Matrix2cd& u) {
    const int64_t dim = int64_t{1} << n;
    const int64_t bit = int64_t{1} << qubit;
    for (int64_t b = 0; b < dim; ++b) {
        if (b & bit) continue;
        cd a0 = v(b), a1 = v(b | bit);
        v(b) = u(0, 0) * a0 + u(0, 1) * a1;
        v(b | bit) = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

void apply_single_qubit(Eigen::MatrixXcd& rho, int n, int qubit, const Eigen::Matrix2cd& u) {
    const int64_t dim = int64_t{1} << n;
    const int64_t bit = int64_t{1} << qubit;
    Eigen::Matrix2cd ud = u.adjoint();
    for (int64_t c = 0; c < dim; ++c) { // rho <- (u ⊗ I) rho
        for (int64_t b = 0; b < dim; ++b) {
            if (b & bit) continue;
            cd a0 = rho(b, c), a1 = rho(b | bit, c);
            rho(b, c) = u(0, 0) * a0 + u(0, 1) * a1;
            rho(b | bit, c) = u(1, 0) * a0 + u(1, 1) * a1;
        }
    }
    for (int64_t r = 0; r < dim; ++r) { // rho <- rho (u ⊗ I)^dagger
        for (int64_t b = 0; b < dim; ++b) {
            if (b & bit) continue;
            cd a0 = rho(r, b), a1 = rho(r, b | bit);
            rho(r, b) = a0 * ud(0, 0) + a1 * ud(1, 0);
            rho(r, b | bit) = a0 * ud(0, 1) + a1 * ud(1, 1);
        }
    }
}

Eigen::VectorXcd apply_pauli(const PauliString& p, const Eigen::VectorXcd& v) {
    if (v.size() != (int64_t{1} << p.n)) throw ValidationError("Pauli/state dimension mismatch");
    Eigen::VectorXcd out = v;
    for (std::size_t k = 0; k < p.n; ++k) {
        char c = p.letter(k);
        if (c != 'I') apply_single_qubit(out, static_cast<int>(p.n), static_cast<int>(k),
                                         pauli_matrix(c));
    }
    static const cd iphase[4] = {cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};
    return iphase[((p.phase % 4) + 4) % 4] * out;
}

Eigen::VectorXcd apply_hamiltonian(const std::vector<Eigen::Matrix2cd>& h_terms, int n,
                                   const Eigen::VectorXcd& v) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
    for (int q = 0; q < n; ++q) {
        if (is_zero_term(h_terms[q])) continue;
        Eigen::VectorXcd tmp = v;
        apply_single_qubit(tmp, n, q, h_terms[q]);
        out += tmp;
    }
    return out;
}

DenseState graph_state(const Graph& g, const OracleLimits& lim) {
    const int n = g.n();
    check_pure_limit(n, lim);
    const int64_t dim = int64_t{1} << n;
    Eigen::VectorXcd v = Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(double(dim)));
    for (auto [i, j] : g.edges()) {
        const int64_t mask = (int64_t{1} << i) | (int64_t{1} << j);
        for (int64_t b = 0; b < dim; ++b)
            if ((b & mask) == mask) v(b) = -v(b);
    }
    return DenseState::from_vector(n, std::move(v));
}

DenseState ghz_state(int n, const OracleLimits& lim) {
    check_pure_limit(n, lim);
    const int64_t dim = int64_t{1} << n;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    const double amp = 1.0 / std::sqrt(double(dim) / 2.0);
    for (int64_t b = 0; b < dim; ++b)
        if (std::popcount(static_cast<uint64_t>(b)) % 2 == 0) v(b) = amp;
    return DenseState::from_vector(n, std::move(v));
}

DenseState computational_zero(int n, const OracleLimits& lim) {
    check_pure_limit(n, lim);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(int64_t{1} << n);
    v(0) = 1.0;
    return DenseState::from_vector(n, std::move(v));
}

bool stabilizes(const PauliString& p, const DenseState& state, double tol) {
    if (static_cast<int>(p.n) != state.n) throw ValidationError("dimension mismatch");
    if (state.pure) return (apply_pauli(p, state.vec) - state.vec).norm() < tol;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(state.mat);
    for (int j = 0; j < es.eigenvalues().size(); ++j) {
        if (es.eigenvalues()(j) < 1e-10) continue;
        Eigen::VectorXcd v = es.eigenvectors().col(j);
        if ((apply_pauli(p, v) - v).norm() > tol) return false;
    }
    return true;
}

double qfi(const DenseState& state, const std::vector<Eigen::Matrix2cd>& h_terms) {
    for (const auto& h : h_terms)
        if ((h - h.adjoint()).norm() > 1e-12) throw ValidationError("Hamiltonian term not Hermitian");
    if (state.pure) {
        Eigen::VectorXcd hv = apply_hamiltonian(h_terms, state.n, state.vec);
        double mean = state.vec.dot(hv).real();
        double second = hv.squaredNorm();
        return second - mean * mean;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(state.mat);
    const auto& lam = es.eigenvalues();
    const auto& vecs = es.eigenvectors();
    // <j|H|k> for all pairs, H applied column-wise
    Eigen::MatrixXcd hv(vecs.rows(), vecs.cols());
    for (int k = 0; k < vecs.cols(); ++k)
        hv.col(k) = apply_hamiltonian(h_terms, state.n, vecs.col(k));
    Eigen::MatrixXcd helem = vecs.adjoint() * hv;
    double f = 0.0;
    for (int j = 0; j < lam.size(); ++j)
        for (int k = 0; k < lam.size(); ++k) {
            double s = lam(j) + lam(k);
            if (s <= kEigCutoff) continue;
            double d = lam(j) - lam(k);
            // generator H/2: 2 * (d^2/s) |<j|H/2|k>|^2 = (d^2/s) |<j|H|k>|^2 / 2
            f += 0.5 * d * d / s * std::norm(helem(j, k));
        }
    return f;
}

ProbabilityTable measurement_statistics(const LocalModel& model) {
    const int n = model.probe.n;
    const int64_t dim = int64_t{1} << n;
    if (static_cast<int>(model.h_terms.size()) != n || static_cast<int>(model.omegas.size()) != n)
        throw ValidationError("model term lists must cover every qubit");

    // Per-qubit rotated observable and its eigenbasis.
    std::vector<Eigen::Matrix2cd> basis(n);
    for (int q = 0; q < n; ++q) {
        Eigen::Matrix2cd r = expm_herm(model.h_terms[q], -model.theta / 2.0);
        Eigen::Matrix2cd w = r * model.omegas[q] * r.adjoint();
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(w);
        if (std::abs(es.eigenvalues()(1) - es.eigenvalues()(0)) < 1e-12)
            throw ValidationError("degenerate single-qubit observable on qubit " +
                                  std::to_string(q));
        basis[q] = es.eigenvectors();
    }

    ProbabilityTable table;
    table.p.resize(dim);
    table.dp.resize(dim);
    table.hrho.resize(dim);

    if (model.probe.pure) {
        Eigen::VectorXcd psi = model.probe.vec;
        for (int q = 0; q < n; ++q)
            apply_single_qubit(psi, n, q, expm_herm(model.h_terms[q], -model.theta / 2.0));
        Eigen::VectorXcd hpsi = apply_hamiltonian(model.h_terms, n, psi);
        // amplitudes in the joint measurement eigenbasis
        Eigen::VectorXcd a = psi, b = hpsi;
        for (int q = 0; q < n; ++q) {
            Eigen::Matrix2cd ud = basis[q].adjoint();
            apply_single_qubit(a, n, q, ud);
            apply_single_qubit(b, n, q, ud);
        }
        for (int64_t x = 0; x < dim; ++x) {
            table.p[x] = std::norm(a(x));
            // d p = <v|(-i/2)[H,rho]|v> = Im(<v|H psi> conj(<v|psi>))
            table.dp[x] = std::imag(b(x) * std::conj(a(x)));
            table.hrho[x] = std::norm(b(x));
        }
        return table;
    }

    Eigen::MatrixXcd rho = model.probe.mat;
    for (int q = 0; q < n; ++q)
        apply_single_qubit(rho, n, q, expm_herm(model.h_terms[q], -model.theta / 2.0));
    // full H as dense matrix at mixed-oracle scale
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (int q = 0; q < n; ++q) {
        if (is_zero_term(model.h_terms[q])) continue;
        Eigen::MatrixXcd term = Eigen::MatrixXcd::Zero(dim, dim);
        for (int64_t c = 0; c < dim; ++c) {
            Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
            e(c) = 1.0;
            apply_single_qubit(e, n, q, model.h_terms[q]);
            term.col(c) = e;
        }
        h += term;
    }
    Eigen::MatrixXcd drho = cd(0, -0.5) * (h * rho - rho * h);
    Eigen::MatrixXcd hrhoh = h * rho * h;
    for (int q = 0; q < n; ++q) {
        Eigen::Matrix2cd ud = basis[q].adjoint();
        apply_single_qubit(rho, n, q, ud);
        apply_single_qubit(drho, n, q, ud);
        apply_single_qubit(hrhoh, n, q, ud);
    }
    for (int64_t x = 0; x < dim; ++x) {
        table.p[x] = rho(x, x).real();
        table.dp[x] = drho(x, x).real();
        table.hrho[x] = hrhoh(x, x).real();
    }
    return table;
}

double cfi_local(const LocalModel& model) {
    ProbabilityTable t = measurement_statistics(model);
    double f = 0.0;
    for (std::size_t x = 0; x < t.p.size(); ++x) {
        if (t.p[x] < kProbCutoff) {
            // p(theta) vanishes to second order here; (dp)^2/p tends to
            // <v|H rho H|v> (and dp = 0 exactly since rho is PSD).
            f += t.hrho[x];
            continue;
        }
        f += t.dp[x] * t.dp[x] / t.p[x];
    }
    return f;
}

TheoremCheck theorem_check(const LocalModel& model, const PauliString& k, double tol) {
    if (static_cast<int>(k.n) != model.probe.n) throw ValidationError("dimension mismatch");
    TheoremCheck out;
    out.stabilizes_support = stabilizes(k, model.probe, tol * 100);

    out.omega_anticommutes_h = true;
    out.omega_commutes_k = true;
    out.k_anticommutes_h = true;
    for (int q = 0; q < model.probe.n; ++q) {
        Eigen::Matrix2cd kq = pauli_matrix(k.letter(q));
        const auto& hq = model.h_terms[q];
        const auto& wq = model.omegas[q];
        if (!is_zero_term(hq)) {
            if ((wq * hq + hq * wq).norm() > tol) out.omega_anticommutes_h = false;
            if ((kq * hq + hq * kq).norm() > tol) out.k_anticommutes_h = false;
        }
        if ((wq * kq - kq * wq).norm() > tol) out.omega_commutes_k = false;
    }
    return out;
}

LocalModel local_model(const Graph& g, const Protocol1Model& proto, double theta,
                       const OracleLimits& lim) {
    LocalModel m;
    m.probe = graph_state(g, lim);
    m.theta = theta;
    const int n = g.n();
    m.h_terms.assign(n, Eigen::Matrix2cd::Zero());
    for (auto [letter, v] : proto.hamiltonian) m.h_terms[v] = pauli_matrix(letter);
    m.omegas.resize(n);
    for (int q = 0; q < n; ++q) m.omegas[q] = pauli_matrix(proto.measurement[q]);
    return m;
}

LocalModel corollary_protocol(const PauliString& k, const DenseState& probe, double theta) {
    if (static_cast<int>(k.n) != probe.n) throw ValidationError("dimension mismatch");
    LocalModel m;
    m.probe = probe;
    m.theta = theta;
    m.h_terms.resize(probe.n);
    m.omegas.resize(probe.n);
    auto next_letter = [](char c) { return c == 'X' ? 'Y' : c == 'Y' ? 'Z' : 'X'; };
    for (int q = 0; q < probe.n; ++q) {
        char c = k.letter(q);
        if (c == 'I')
            throw ValidationError("stabilizer has an identity factor on qubit " +
                                  std::to_string(q) + "; traceless factors required");
        m.omegas[q] = pauli_matrix(c);
        m.h_terms[q] = pauli_matrix(next_letter(c));
    }
    return m;
}

std::vector<SaturationRow> saturation_report(LocalModel model,
                                             const std::vector<double>& thetas) {
    std::vector<SaturationRow> rows;
    const double f_q = qfi(model.probe, model.h_terms); // unitary family: theta-independent
    for (double th : thetas) {
        model.theta = th;
        double f_c = cfi_local(model);
        rows.push_back({th, f_q, f_c, f_q - f_c});
    }
    return rows;
}

} // namespace qmet
