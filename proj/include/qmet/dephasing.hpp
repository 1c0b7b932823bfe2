#ifndef QMET_DEPHASING_HPP
#define QMET_DEPHASING_HPP

#include <optional>
#include <string>
#include <vector>

#include "qmet/dense.hpp"
#include "qmet/subspace.hpp"

namespace qmet {

// i.i.d. X-basis dephasing applied during the X-encoding of theta.
struct DephasingModel {
    double p = 0.0;
    double theta = 0.0;

    void validate_sweep() const {
        if (p < 0.0 || p > 1.0) throw ValidationError("dephasing probability outside [0,1]");
    }
};

// Per-qubit channel p X R rho R^dag X + (1-p) R rho R^dag with
// R = e^{-i(theta/2)X}, applied qubit by qubit.
DenseState apply_dephasing_encoding(const DenseState& rho, const DephasingModel& model,
                                    const OracleLimits& lim = {});

// Closed-form decay N^2 (1-2p)^{2N} for the GHZ probe.
double ghz_dephasing_qfi(int n, double p);
// Closed form N (1-2p)^2 for the separable |0...0> probe.
double separable_dephasing_qfi(int n, double p);

// QFI of the dephased encoded family at theta (mixed spectral formula,
// analytic state derivative).
double f_dap(const DenseState& rho, double p, double theta, const OracleLimits& lim = {});
double f_dap(const SubspaceState& rho, double p, double theta, const OracleLimits& lim = {});

// Maximizes f_dap over pure states of the subspace via multi-start
// Nelder-Mead on the real parameterization of the coefficient vector.
// budget = function evaluations per restart; 0 degrades to the best basis
// state.  Best found only, no global-optimality claim.
std::pair<SubspaceState, double> optimize_robust_state(const SubspaceSpec& spec, double p,
                                                       double theta, int budget,
                                                       int restarts = 16, uint64_t seed = 7,
                                                       const OracleLimits& lim = {});

struct SweepRow {
    std::string probe_id;
    int n;
    double p;
    double theta;
    double f_dap;
    std::string method; // closed_form or oracle
};

struct ProbeSpec {
    enum class Kind { Ghz, Separable, SubspaceHalf, Custom };
    std::string id;
    Kind kind = Kind::Ghz;
    std::optional<SubspaceState> state; // Custom
    int budget = 200;                   // SubspaceHalf optimizer budget
};

std::vector<SweepRow> noise_sweep(const std::vector<ProbeSpec>& probes,
                                  const std::vector<double>& p_grid,
                                  const std::vector<int>& n_grid, double theta,
                                  const OracleLimits& lim = {});

} // namespace qmet

#endif
