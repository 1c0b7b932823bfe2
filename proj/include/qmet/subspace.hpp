#ifndef QMET_SUBSPACE_HPP
#define QMET_SUBSPACE_HPP

#include <optional>
#include <string>
#include <vector>

#include "qmet/dense.hpp"
#include "qmet/pauli.hpp"

namespace qmet {

// Partition of the qubits into m+1 blocks of size >= 2; defines the
// 2^m-dimensional stabilized subspace P_K.
struct SubspaceSpec {
    int n = 0;
    std::vector<std::vector<int>> blocks;

    int m() const { return static_cast<int>(blocks.size()) - 1; }
    void validate() const;
    double block_fraction(int omega) const {
        return double(blocks[omega].size()) / double(n);
    }
};

// State in P_K given by a Hermitian PSD unit-trace coefficient matrix in
// the |d_lambda> basis, lambda indexing F_2^m.
struct SubspaceState {
    SubspaceSpec spec;
    Eigen::MatrixXcd coeffs;

    void validate() const;
};

// {Z_V} plus the intra-block XX generators; n - m independent commuting
// Pauli strings.
std::vector<PauliString> subspace_generators(const SubspaceSpec& spec);

// |d_lambda> = prod_{omega >= 2} Z_{K_omega}^{lambda_{omega-1}} |GHZ_N>.
DenseState basis_state(const SubspaceSpec& spec, uint32_t lambda,
                       const OracleLimits& lim = {});

DenseState to_dense(const SubspaceState& state, const OracleLimits& lim = {});

int64_t h_lambda(const SubspaceSpec& spec, uint32_t lambda);

// Closed-form QFI from the diagonal coefficients only.
double qfi_subspace(const SubspaceState& state);

struct ExtremalQfi {
    double max;
    double min;
    double r_min;
};

ExtremalQfi extremal_qfi(const SubspaceSpec& spec);

// epsilon = -log(r_min)/log(N); infinity when r_min = 0.
double tolerance(const SubspaceSpec& spec);

enum class PartitionFamily { I, II, III };

struct FamilyResult {
    SubspaceSpec spec;
    double epsilon;
    double epsilon_bound; // the family's stated bound (infinity if none given)
    std::string note;
};

// family I:  params = {dominant block size b}, (1+delta)/2 < b/n < 1
// family II: params = {m}, m even, m+1 equal blocks
// family III: params = {m, k1}, m odd, xi_1 << 1/(2m), xi_2 = 1/m - xi_1
FamilyResult family_partition(PartitionFamily kind, int n, const std::vector<int>& params);

bool membership_check(const DenseState& state, const SubspaceSpec& spec, double tol = 1e-10);

// Extract |d_lambda> basis coefficients of a dense state (valid when the
// state lies in P_K).
SubspaceState project_to_subspace(const DenseState& state, const SubspaceSpec& spec,
                                  const OracleLimits& lim = {});

using KrausChannel = std::vector<Eigen::MatrixXcd>;

DenseState apply_channel(const KrausChannel& kraus, const DenseState& state);

struct RobustnessReport {
    bool in_some_subspace = false;
    bool qfi_in_band = false;
    std::optional<SubspaceSpec> found_spec;
    double qfi = 0.0;
    int candidates_tried = 0;
};

// Searches candidate partitions (blocks >= 2, capped enumeration) for one
// whose subspace contains the channel output, then checks the QFI band
// [N^{2-eps}, N^2].
RobustnessReport scaling_robustness_check(const SubspaceState& state,
                                          const KrausChannel& channel, double eps,
                                          int candidate_limit = 100000,
                                          const OracleLimits& lim = {});

std::vector<SubspaceSpec> enumerate_partitions(int n, int candidate_limit);

} // namespace qmet

#endif
