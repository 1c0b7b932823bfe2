#ifndef QMET_DENSE_HPP
#define QMET_DENSE_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qmet/graph.hpp"
#include "qmet/pauli.hpp"
#include "qmet/qfi.hpp"

namespace qmet {

struct OracleLimits {
    int pure_qubits = 16;
    int mixed_qubits = 10;
};

// Brute-force state: either a 2^n state vector or a 2^n x 2^n density
// matrix.  Only used for verification at small n.
struct DenseState {
    int n = 0;
    bool pure = true;
    Eigen::VectorXcd vec;
    Eigen::MatrixXcd mat;

    static DenseState from_vector(int n, Eigen::VectorXcd v);
    static DenseState from_matrix(int n, Eigen::MatrixXcd m);
    Eigen::MatrixXcd density() const;
};

// Phase estimation model rho_theta = e^{-i(theta/2)H} rho e^{i(theta/2)H}
// with strictly local H and per-qubit measured observables.
struct LocalModel {
    DenseState probe;
    std::vector<Eigen::Matrix2cd> h_terms; // per qubit, zero matrix = no term
    std::vector<Eigen::Matrix2cd> omegas;  // per qubit
    double theta = 0.0;
};

Eigen::Matrix2cd pauli_matrix(char letter);

// In-place single-qubit gate on a state vector / density matrix.
void apply_single_qubit(Eigen::VectorXcd& v, int n, int qubit, const Eigen::Matrix2cd& u);
void apply_single_qubit(Eigen::MatrixXcd& rho, int n, int qubit, const Eigen::Matrix2cd& u);

Eigen::VectorXcd apply_pauli(const PauliString& p, const Eigen::VectorXcd& v);
Eigen::VectorXcd apply_hamiltonian(const std::vector<Eigen::Matrix2cd>& h_terms, int n,
                                   const Eigen::VectorXcd& v);

// CZ-on-edges applied to |+>^n.
DenseState graph_state(const Graph& g, const OracleLimits& lim = {});
// X-basis GHZ: (|+>^n + |->^n)/sqrt(2), i.e. uniform over even-parity strings.
DenseState ghz_state(int n, const OracleLimits& lim = {});
DenseState computational_zero(int n, const OracleLimits& lim = {});

bool stabilizes(const PauliString& p, const DenseState& state, double tol = 1e-10);

// QFI of the family e^{-i(theta/2)H} rho e^{i(theta/2)H}: Var(H) for pure
// states, the spectral formula with generator H/2 for mixed states.
double qfi(const DenseState& state, const std::vector<Eigen::Matrix2cd>& h_terms);

struct ProbabilityTable {
    std::vector<double> p;
    std::vector<double> dp;   // analytic d p / d theta
    std::vector<double> hrho; // <v_x| H rho H |v_x>, the p -> 0 limit of (dp)^2/p
};

// Outcome statistics of the rotated product measurement Omega_V(theta):
// projectors fixed at the working theta, state derivative -(i/2)[H, rho].
ProbabilityTable measurement_statistics(const LocalModel& model);
double cfi_local(const LocalModel& model);

struct TheoremCheck {
    bool stabilizes_support = false; // (i)
    bool omega_anticommutes_h = false;
    bool omega_commutes_k = false;
    bool k_anticommutes_h = false;
    bool all() const {
        return stabilizes_support && omega_anticommutes_h && omega_commutes_k &&
               k_anticommutes_h;
    }
};

TheoremCheck theorem_check(const LocalModel& model, const PauliString& k,
                           double tol = 1e-10);

// Build the dense model for a stabilizer-indexed graph protocol.
LocalModel local_model(const Graph& g, const Protocol1Model& proto, double theta,
                       const OracleLimits& lim = {});

// Local stabilizer K = prod K_i with traceless factors everywhere: measure
// Omega_i = K_i, drive with the cyclically next Pauli letter.
LocalModel corollary_protocol(const PauliString& k, const DenseState& probe,
                              double theta = 0.0);

struct SaturationRow {
    double theta, qfi, cfi, gap;
};

std::vector<SaturationRow> saturation_report(LocalModel model,
                                             const std::vector<double>& thetas);

} // namespace qmet

#endif
