#include "qmet/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace qmet {

void SubspaceSpec::validate() const {
    if (n <= 0) throw ValidationError("partition needs positive n");
    if (blocks.size() < 2) throw ValidationError("partition needs m >= 1 (at least 2 blocks)");
    std::vector<bool> seen(n, false);
    std::size_t total = 0;
    for (const auto& b : blocks) {
        if (b.size() < 2) throw ValidationError("every block must have size >= 2");
        for (int v : b) {
            if (v < 0 || v >= n) throw ValidationError("block vertex out of range");
            if (seen[v]) throw ValidationError("blocks must be disjoint");
            seen[v] = true;
        }
        total += b.size();
    }
    if (total != static_cast<std::size_t>(n)) throw ValidationError("blocks must cover all qubits");
    if (m() > 30) throw ValidationError("too many blocks");
}

void SubspaceState::validate() const {
    spec.validate();
    const int64_t dim = int64_t{1} << spec.m();
    if (coeffs.rows() != dim || coeffs.cols() != dim)
        throw ValidationError("coefficient matrix must be 2^m x 2^m");
    if ((coeffs - coeffs.adjoint()).norm() > 1e-10)
        throw ValidationError("coefficient matrix not Hermitian");
    if (std::abs(coeffs.trace().real() - 1.0) > 1e-10)
        throw ValidationError("coefficient matrix trace != 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(coeffs);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw ValidationError("coefficient matrix not PSD");
}

std::vector<PauliString> subspace_generators(const SubspaceSpec& spec) {
    spec.validate();
    std::vector<PauliString> gens;
    PauliString zv(spec.n);
    for (int q = 0; q < spec.n; ++q) zv.z_mask.set(q);
    gens.push_back(zv);
    for (const auto& block : spec.blocks) {
        for (std::size_t j = 1; j < block.size(); ++j) {
            PauliString xx(spec.n);
            xx.x_mask.set(block[0]);
            xx.x_mask.set(block[j]);
            gens.push_back(xx);
        }
    }
    return gens;
}

DenseState basis_state(const SubspaceSpec& spec, uint32_t lambda, const OracleLimits& lim) {
    spec.validate();
    if (lambda >= (uint32_t{1} << spec.m())) throw ValidationError("lambda out of range");
    DenseState s = ghz_state(spec.n, lim);
    for (int omega = 1; omega <= spec.m(); ++omega) {
        if (!((lambda >> (omega - 1)) & 1)) continue;
        for (int q : spec.blocks[omega])
            apply_single_qubit(s.vec, spec.n, q, pauli_matrix('Z'));
    }
    return s;
}

DenseState to_dense(const SubspaceState& state, const OracleLimits& lim) {
    state.validate();
    const int m = state.spec.m();
    const uint32_t dim_sub = uint32_t{1} << m;
    std::vector<Eigen::VectorXcd> basis(dim_sub);
    for (uint32_t l = 0; l < dim_sub; ++l) basis[l] = basis_state(state.spec, l, lim).vec;
    const int64_t dim = int64_t{1} << state.spec.n;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (uint32_t a = 0; a < dim_sub; ++a)
        for (uint32_t b = 0; b < dim_sub; ++b)
            if (std::abs(state.coeffs(a, b)) > 0) rho += state.coeffs(a, b) * basis[a] * basis[b].adjoint();
    return DenseState::from_matrix(state.spec.n, std::move(rho));
}

int64_t h_lambda(const SubspaceSpec& spec, uint32_t lambda) {
    int64_t h = spec.n;
    for (int omega = 1; omega <= spec.m(); ++omega)
        if ((lambda >> (omega - 1)) & 1) h -= 2 * static_cast<int64_t>(spec.blocks[omega].size());
    return h;
}

double qfi_subspace(const SubspaceState& state) {
    state.validate();
    double f = 0.0;
    const uint32_t dim_sub = uint32_t{1} << state.spec.m();
    for (uint32_t l = 0; l < dim_sub; ++l) {
        double h = static_cast<double>(h_lambda(state.spec, l));
        f += state.coeffs(l, l).real() * h * h;
    }
    return f;
}

ExtremalQfi extremal_qfi(const SubspaceSpec& spec) {
    spec.validate();
    const double n2 = double(spec.n) * double(spec.n);
    double r_min = 1.0;
    const uint32_t dim_sub = uint32_t{1} << spec.m();
    for (uint32_t l = 0; l < dim_sub; ++l) {
        double r = double(h_lambda(spec, l)) / double(spec.n);
        r_min = std::min(r_min, r * r);
    }
    return {n2, n2 * r_min, r_min};
}

double tolerance(const SubspaceSpec& spec) {
    double r_min = extremal_qfi(spec).r_min;
    if (r_min <= 0.0) return std::numeric_limits<double>::infinity();
    return -std::log(r_min) / std::log(double(spec.n));
}

namespace {

std::vector<std::vector<int>> blocks_from_sizes(const std::vector<int>& sizes) {
    std::vector<std::vector<int>> blocks;
    int v = 0;
    for (int s : sizes) {
        std::vector<int> b(s);
        for (int i = 0; i < s; ++i) b[i] = v++;
        blocks.push_back(std::move(b));
    }
    return blocks;
}

} // namespace

FamilyResult family_partition(PartitionFamily kind, int n, const std::vector<int>& params) {
    FamilyResult res;
    res.epsilon_bound = std::numeric_limits<double>::infinity();
    switch (kind) {
    case PartitionFamily::I: {
        if (params.size() != 1) throw ValidationError("family i takes one parameter: dominant block size");
        int b = params[0];
        double xi = double(b) / n;
        double delta = 2 * xi - 1;
        if (delta <= 0.0 || xi >= 1.0)
            throw ValidationError("family i needs (1+delta)/2 < b/n < 1 with 0 < delta < 1");
        std::vector<int> sizes{b};
        int rest = n - b;
        if (rest < 2) throw ValidationError("family i remainder too small for a block");
        while (rest > 0) {
            int s = (rest == 3 || rest == 2) ? rest : 2;
            sizes.push_back(s);
            rest -= s;
        }
        res.spec.n = n;
        res.spec.blocks = blocks_from_sizes(sizes);
        res.epsilon_bound = -2.0 * std::log(delta) / std::log(double(n));
        break;
    }
    case PartitionFamily::II: {
        if (params.size() != 1) throw ValidationError("family ii takes one parameter: m");
        int m = params[0];
        if (m < 2 || m % 2 != 0) throw ValidationError("family ii requires even m >= 2");
        if (n % (m + 1) != 0) throw ValidationError("family ii requires (m+1) | n");
        int s = n / (m + 1);
        if (s < 2) throw ValidationError("family ii block size below 2");
        res.spec.n = n;
        res.spec.blocks = blocks_from_sizes(std::vector<int>(m + 1, s));
        break;
    }
    case PartitionFamily::III: {
        if (params.size() != 2) throw ValidationError("family iii takes parameters: m, k1");
        int m = params[0], k1 = params[1];
        if (m < 1 || m % 2 != 1) throw ValidationError("family iii requires odd m");
        if (n % m != 0) throw ValidationError("family iii requires m | n");
        if (k1 < 2) throw ValidationError("family iii block K1 below size 2");
        if (2 * m * k1 >= n) throw ValidationError("family iii requires k1/n < 1/(2m)");
        int k2 = n / m - k1;
        if (k2 < 2) throw ValidationError("family iii block K2 below size 2");
        std::vector<int> sizes{k1, k2};
        for (int i = 3; i <= m + 1; ++i) sizes.push_back(n / m);
        res.spec.n = n;
        res.spec.blocks = blocks_from_sizes(sizes);
        res.note = "block sizes normalized to fractions of n; the source text mixes "
                   "absolute and fractional conventions for this family";
        break;
    }
    }
    res.spec.validate();
    res.epsilon = tolerance(res.spec);
    return res;
}

bool membership_check(const DenseState& state, const SubspaceSpec& spec, double tol) {
    if (state.n != spec.n) throw ValidationError("dimension mismatch");
    for (const auto& gen : subspace_generators(spec))
        if (!stabilizes(gen, state, tol)) return false;
    return true;
}

SubspaceState project_to_subspace(const DenseState& state, const SubspaceSpec& spec,
                                  const OracleLimits& lim) {
    spec.validate();
    const uint32_t dim_sub = uint32_t{1} << spec.m();
    std::vector<Eigen::VectorXcd> basis(dim_sub);
    for (uint32_t l = 0; l < dim_sub; ++l) basis[l] = basis_state(spec, l, lim).vec;
    SubspaceState out;
    out.spec = spec;
    out.coeffs = Eigen::MatrixXcd::Zero(dim_sub, dim_sub);
    Eigen::MatrixXcd rho = state.density();
    for (uint32_t a = 0; a < dim_sub; ++a)
        for (uint32_t b = 0; b < dim_sub; ++b)
            out.coeffs(a, b) = basis[a].dot(rho * basis[b]);
    return out;
}

DenseState apply_channel(const KrausChannel& kraus, const DenseState& state) {
    if (kraus.empty()) throw ValidationError("channel needs at least one Kraus operator");
    Eigen::MatrixXcd rho = state.density();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
    for (const auto& k : kraus) out += k * rho * k.adjoint();
    return DenseState::from_matrix(state.n, std::move(out));
}

std::vector<SubspaceSpec> enumerate_partitions(int n, int candidate_limit) {
    std::vector<SubspaceSpec> out;
    std::vector<std::vector<int>> current;
    std::vector<int> remaining(n);
    for (int i = 0; i < n; ++i) remaining[i] = i;

    // Recursive set-partition enumeration: the lowest unassigned vertex
    // anchors a new block joined by any nonempty subset of the rest.
    std::function<void(std::vector<int>&)> rec = [&](std::vector<int>& rem) {
        if (static_cast<int>(out.size()) >= candidate_limit) return;
        if (rem.empty()) {
            if (current.size() >= 2) {
                SubspaceSpec s;
                s.n = n;
                s.blocks = current;
                out.push_back(s);
            }
            return;
        }
        int anchor = rem[0];
        std::vector<int> rest(rem.begin() + 1, rem.end());
        const uint32_t subsets = uint32_t{1} << rest.size();
        for (uint32_t mask = 1; mask < subsets; ++mask) {
            std::vector<int> block{anchor};
            std::vector<int> next;
            for (std::size_t i = 0; i < rest.size(); ++i)
                ((mask >> i) & 1 ? block : next).push_back(rest[i]);
            if (block.size() < 2) continue;
            current.push_back(block);
            rec(next);
            current.pop_back();
            if (static_cast<int>(out.size()) >= candidate_limit) return;
        }
    };
    rec(remaining);
    return out;
}

RobustnessReport scaling_robustness_check(const SubspaceState& state,
                                          const KrausChannel& channel, double eps,
                                          int candidate_limit, const OracleLimits& lim) {
    state.validate();
    const int n = state.spec.n;
    DenseState output = apply_channel(channel, to_dense(state, lim));
    RobustnessReport report;
    for (const auto& spec : enumerate_partitions(n, candidate_limit)) {
        ++report.candidates_tried;
        if (!membership_check(output, spec)) continue;
        report.in_some_subspace = true;
        report.found_spec = spec;
        report.qfi = qfi_subspace(project_to_subspace(output, spec, lim));
        double lo = std::pow(double(n), 2.0 - eps);
        double hi = double(n) * double(n);
        report.qfi_in_band = report.qfi >= lo - 1e-9 && report.qfi <= hi + 1e-9;
        break;
    }
    return report;
}

} // namespace qmet
