#include "qmet/dephasing.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qmet {

using cd = std::complex<double>;

DenseState apply_dephasing_encoding(const DenseState& rho, const DephasingModel& model,
                                    const OracleLimits& lim) {
    model.validate_sweep();
    const int n = rho.n;
    if (n > lim.mixed_qubits)
        throw SizeLimitError("dephasing channel limited to n <= " +
                             std::to_string(lim.mixed_qubits));
    Eigen::MatrixXcd out = rho.density();
    const double c = std::cos(model.theta / 2.0), s = std::sin(model.theta / 2.0);
    Eigen::Matrix2cd rot;
    rot << c, cd(0, -s), cd(0, -s), c; // e^{-i(theta/2)X}
    Eigen::Matrix2cd x = pauli_matrix('X');
    for (int q = 0; q < n; ++q) {
        Eigen::MatrixXcd unflipped = out;
        apply_single_qubit(unflipped, n, q, rot);
        Eigen::MatrixXcd flipped = unflipped;
        apply_single_qubit(flipped, n, q, x);
        out = model.p * flipped + (1.0 - model.p) * unflipped;
    }
    return DenseState::from_matrix(n, std::move(out));
}

double ghz_dephasing_qfi(int n, double p) {
    return double(n) * double(n) * std::pow(1.0 - 2.0 * p, 2 * n);
}

double separable_dephasing_qfi(int n, double p) {
    return double(n) * (1.0 - 2.0 * p) * (1.0 - 2.0 * p);
}

double f_dap(const DenseState& rho, double p, double theta, const OracleLimits& lim) {
    DephasingModel model{p, theta};
    DenseState encoded = apply_dephasing_encoding(rho, model, lim);
    std::vector<Eigen::Matrix2cd> h(rho.n, pauli_matrix('X'));
    return qfi(encoded, h);
}

double f_dap(const SubspaceState& rho, double p, double theta, const OracleLimits& lim) {
    return f_dap(to_dense(rho, lim), p, theta, lim);
}

namespace {

// Objective shared by the optimizer.  The X Kraus operators and the X
// encoding are both diagonal in the X product basis, and the subspace basis
// |d_a> = (|s_a> + |sbar_a>)/sqrt(2) involves only the 2^{m+1} block-sign
// patterns, which the drive maps to themselves.  The dephased family and
// its QFI are therefore computed exactly in that 2^{m+1}-dimensional space:
// the channel multiplies the pattern dyad |u><v| by (1-2p)^{hamming(u,v)}.
class DapObjective {
public:
    DapObjective(const SubspaceSpec& spec, double p, double theta, const OracleLimits&)
        : dim_sub_(uint32_t{1} << spec.m()), dim_(2 * dim_sub_) {
        const int m = spec.m();
        // pattern index (a, bar): h eigenvalue and per-block signs
        std::vector<int64_t> h(dim_);
        std::vector<uint32_t> neg(dim_); // per-block negative-sign bits, m+1 blocks
        for (uint32_t a = 0; a < dim_sub_; ++a) {
            h[a] = h_lambda(spec, a);
            h[dim_sub_ + a] = -h[a];
            neg[a] = a << 1; // block 0 positive, block w sign = bit (w-1) of a
            neg[dim_sub_ + a] = ~neg[a] & ((uint32_t{1} << (m + 1)) - 1);
        }
        decay_.resize(dim_, std::vector<double>(dim_));
        phase_.resize(dim_, std::vector<cd>(dim_));
        for (uint32_t u = 0; u < dim_; ++u)
            for (uint32_t v = 0; v < dim_; ++v) {
                uint32_t diff = neg[u] ^ neg[v];
                int dist = 0;
                for (int w = 0; w <= m; ++w)
                    if ((diff >> w) & 1) dist += static_cast<int>(spec.blocks[w].size());
                decay_[u][v] = std::pow(1.0 - 2.0 * p, dist);
                phase_[u][v] = std::exp(cd(0, -theta / 2.0 * double(h[u] - h[v])));
            }
        h_ = std::move(h);
    }

    // params: 2 * dim_sub reals -> normalized complex coefficient vector
    double operator()(const std::vector<double>& params) const {
        Eigen::VectorXcd c(dim_sub_);
        for (uint32_t l = 0; l < dim_sub_; ++l) c(l) = cd(params[2 * l], params[2 * l + 1]);
        double norm = c.norm();
        if (norm < 1e-12) return 0.0;
        c /= norm;
        // |psi> = sum_a c_a (|a,0> + |a,1>)/sqrt(2) in the pattern basis
        Eigen::VectorXcd amp(dim_);
        for (uint32_t a = 0; a < dim_sub_; ++a)
            amp(a) = amp(dim_sub_ + a) = c(a) / std::sqrt(2.0);
        Eigen::MatrixXcd rho(dim_, dim_);
        for (uint32_t u = 0; u < dim_; ++u)
            for (uint32_t v = 0; v < dim_; ++v)
                rho(u, v) = amp(u) * std::conj(amp(v)) * phase_[u][v] * decay_[u][v];
        // spectral QFI with the diagonal generator H/2 on the pattern space
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
        const auto& lam = es.eigenvalues();
        const auto& vecs = es.eigenvectors();
        Eigen::MatrixXcd hv = vecs;
        for (uint32_t u = 0; u < dim_; ++u) hv.row(u) *= double(h_[u]);
        Eigen::MatrixXcd helem = vecs.adjoint() * hv;
        double f = 0.0;
        for (uint32_t j = 0; j < dim_; ++j)
            for (uint32_t k = 0; k < dim_; ++k) {
                double s = lam(j) + lam(k);
                if (s <= 1e-12) continue;
                double d = lam(j) - lam(k);
                f += 0.5 * d * d / s * std::norm(helem(j, k));
            }
        return f;
    }

    uint32_t dim_sub() const { return dim_sub_; }

private:
    uint32_t dim_sub_, dim_;
    std::vector<int64_t> h_;
    std::vector<std::vector<double>> decay_;
    std::vector<std::vector<cd>> phase_;
};

// Minimal Nelder-Mead on f to MAXIMIZE; returns best point seen.
std::pair<std::vector<double>, double> nelder_mead(
    const DapObjective& f, std::vector<double> start, int max_evals, double tol = 1e-6) {
    const std::size_t d = start.size();
    std::vector<std::pair<double, std::vector<double>>> simplex; // (-value, point)
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return -f(x);
    };
    simplex.emplace_back(eval(start), start);
    for (std::size_t i = 0; i < d && evals < max_evals; ++i) {
        auto x = start;
        x[i] += 0.25;
        simplex.emplace_back(eval(x), x);
    }
    auto order = [&] { std::sort(simplex.begin(), simplex.end()); };
    order();
    while (evals < max_evals && simplex.size() == d + 1) {
        if (std::abs(simplex.back().first - simplex.front().first) < tol) break;
        std::vector<double> centroid(d, 0.0);
        for (std::size_t i = 0; i + 1 < simplex.size(); ++i)
            for (std::size_t j = 0; j < d; ++j) centroid[j] += simplex[i].second[j] / double(d);
        auto blend = [&](double t) {
            std::vector<double> x(d);
            for (std::size_t j = 0; j < d; ++j)
                x[j] = centroid[j] + t * (simplex.back().second[j] - centroid[j]);
            return x;
        };
        auto refl = blend(-1.0);
        double fr = eval(refl);
        if (fr < simplex.front().first) {
            auto exp_pt = blend(-2.0);
            double fe = eval(exp_pt);
            simplex.back() = fe < fr ? std::make_pair(fe, exp_pt) : std::make_pair(fr, refl);
        } else if (fr < simplex[d - 1].first) {
            simplex.back() = {fr, refl};
        } else {
            auto con = blend(0.5);
            double fc = eval(con);
            if (fc < simplex.back().first) {
                simplex.back() = {fc, con};
            } else {
                for (std::size_t i = 1; i < simplex.size(); ++i) {
                    for (std::size_t j = 0; j < d; ++j)
                        simplex[i].second[j] =
                            0.5 * (simplex[i].second[j] + simplex[0].second[j]);
                    simplex[i].first = eval(simplex[i].second);
                    if (evals >= max_evals) break;
                }
            }
        }
        order();
    }
    return {simplex.front().second, -simplex.front().first};
}

} // namespace

std::pair<SubspaceState, double> optimize_robust_state(const SubspaceSpec& spec, double p,
                                                       double theta, int budget, int restarts,
                                                       uint64_t seed, const OracleLimits& lim) {
    spec.validate();
    DapObjective objective(spec, p, theta, lim);
    const uint32_t dim_sub = objective.dim_sub();

    auto state_from = [&](const Eigen::VectorXcd& c) {
        SubspaceState s;
        s.spec = spec;
        s.coeffs = c * c.adjoint();
        return s;
    };

    // Basis states are always candidates (and all of them when budget = 0).
    Eigen::VectorXcd best_vec = Eigen::VectorXcd::Zero(dim_sub);
    double best = -1.0;
    for (uint32_t l = 0; l < dim_sub; ++l) {
        std::vector<double> params(2 * dim_sub, 0.0);
        params[2 * l] = 1.0;
        double v = objective(params);
        if (v > best) {
            best = v;
            best_vec = Eigen::VectorXcd::Zero(dim_sub);
            best_vec(l) = 1.0;
        }
    }
    if (budget > 0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss;
        for (int r = 0; r < restarts; ++r) {
            std::vector<double> start(2 * dim_sub);
            for (auto& x : start) x = gauss(rng);
            auto [pt, val] = nelder_mead(objective, start, budget);
            if (val > best) {
                best = val;
                Eigen::VectorXcd c(dim_sub);
                for (uint32_t l = 0; l < dim_sub; ++l) c(l) = cd(pt[2 * l], pt[2 * l + 1]);
                best_vec = c / c.norm();
            }
        }
    }
    return {state_from(best_vec), best};
}

std::vector<SweepRow> noise_sweep(const std::vector<ProbeSpec>& probes,
                                  const std::vector<double>& p_grid,
                                  const std::vector<int>& n_grid, double theta,
                                  const OracleLimits& lim) {
    std::vector<SweepRow> rows;
    for (const auto& probe : probes) {
        std::vector<int> sizes = n_grid;
        if (probe.kind == ProbeSpec::Kind::Custom) {
            if (!probe.state) throw ValidationError("custom probe needs a state");
            sizes = {probe.state->spec.n};
        }
        for (int n : sizes) {
            for (double p : p_grid) {
                DephasingModel{p, theta}.validate_sweep();
                SweepRow row{probe.id, n, p, theta, 0.0, "closed_form"};
                switch (probe.kind) {
                case ProbeSpec::Kind::Ghz:
                    row.f_dap = ghz_dephasing_qfi(n, p);
                    break;
                case ProbeSpec::Kind::Separable:
                    row.f_dap = separable_dephasing_qfi(n, p);
                    break;
                case ProbeSpec::Kind::SubspaceHalf: {
                    SubspaceSpec spec;
                    spec.n = n;
                    std::vector<int> first(n / 2), second(n - n / 2);
                    for (int i = 0; i < n / 2; ++i) first[i] = i;
                    for (int i = n / 2; i < n; ++i) second[i - n / 2] = i;
                    spec.blocks = {first, second};
                    row.f_dap = optimize_robust_state(spec, p, theta, probe.budget, 8,
                                                      11 + n, lim)
                                    .second;
                    row.method = "oracle";
                    break;
                }
                case ProbeSpec::Kind::Custom:
                    row.f_dap = f_dap(*probe.state, p, theta, lim);
                    row.method = "oracle";
                    break;
                }
                rows.push_back(row);
            }
        }
    }
    return rows;
}

} // namespace qmet
