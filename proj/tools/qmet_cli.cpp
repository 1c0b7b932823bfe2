// qmet: analyze graphs, search measurement protocols, verify them against
// the brute-force oracle, evaluate subspace protocols and noise sweeps, and
// build composite graph families.
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmet/construct.hpp"
#include "qmet/dephasing.hpp"
#include "qmet/dense.hpp"
#include "qmet/errors.hpp"
#include "qmet/json_io.hpp"
#include "qmet/qfi.hpp"
#include "qmet/subspace.hpp"

using nlohmann::json;
using namespace qmet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSizeLimit = 2;
constexpr int kExitVerification = 3;

struct CommonOpts {
    std::string input;
    std::string output;
    std::string format = "json";
    uint64_t seed = 1;
    int oracle_limit = 0; // 0 = library defaults
};

OracleLimits limits_from(const CommonOpts& c) {
    OracleLimits lim;
    if (c.oracle_limit > 0) {
        lim.pure_qubits = c.oracle_limit;
        lim.mixed_qubits = c.oracle_limit;
    }
    return lim;
}

void emit(const CommonOpts& c, const std::string& text) {
    if (c.output.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(c.output);
    if (!out) throw ValidationError("cannot write " + c.output);
    out << text << "\n";
}

std::string render(const CommonOpts& c, const json& j,
                   const std::vector<std::vector<std::string>>& csv_rows = {}) {
    if (c.format == "json") return j.dump(2);
    if (c.format == "csv") {
        if (csv_rows.empty())
            throw ValidationError("csv output is not available for this command");
        std::ostringstream out;
        for (std::size_t r = 0; r < csv_rows.size(); ++r) {
            for (std::size_t i = 0; i < csv_rows[r].size(); ++i)
                out << (i ? "," : "") << csv_rows[r][i];
            if (r + 1 < csv_rows.size()) out << "\n";
        }
        return out.str();
    }
    throw ValidationError("format must be json or csv");
}

json bitset_json(const Bitset& b) { return json(b.to_vector()); }

json classes_json(const std::vector<Bitset>& classes) {
    json out = json::array();
    for (const auto& c : classes) out.push_back(bitset_json(c));
    return out;
}

Bitset parse_alpha(const Graph& g, const std::string& text) {
    Bitset alpha(g.n());
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        int v;
        try {
            std::size_t used = 0;
            v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            auto it = g.labels.find(tok);
            if (it == g.labels.end())
                throw ValidationError("unknown vertex label \"" + tok + "\"");
            v = it->second;
        }
        if (v < 0 || v >= g.n()) throw ValidationError("vertex out of range: " + tok);
        alpha.set(v);
    }
    if (alpha.none()) throw ValidationError("alpha must name at least one vertex");
    return alpha;
}

json protocol_json(const Graph& g, const Protocol1Model& m) {
    json j;
    j["alpha"] = bitset_json(m.alpha);
    j["partition"] = {{"s1", bitset_json(m.partition.s1)},
                      {"s2", bitset_json(m.partition.s2)},
                      {"s3", bitset_json(m.partition.s3)},
                      {"s4", bitset_json(m.partition.s4)}};
    j["qfi"] = m.qfi;
    j["bound"] = m.bound;
    j["attainable"] = m.attains_bound;
    json ham = json::array();
    for (auto [letter, v] : m.hamiltonian) ham.push_back({std::string(1, letter), v});
    j["hamiltonian"] = ham;
    j["measurement"] = std::string(m.measurement.begin(), m.measurement.end());
    (void)g;
    return j;
}

int cmd_analyze(const CommonOpts& c) {
    Graph g = load_graph(c.input);
    TwinsStructure t = twins_structure(g);
    json j;
    j["n"] = g.n();
    j["twins_classes"] = classes_json(t.twins_classes);
    j["true_twins_classes"] = classes_json(t.true_twins_classes);
    j["leaves"] = bitset_json(t.leaves);
    j["roots"] = bitset_json(t.roots);
    j["u"] = bitset_json(t.u_set);
    j["u_bar"] = bitset_json(t.u_bar);
    j["bound"] = qfi_upper_bound(t, g.n());
    j["connected"] = g.is_connected();
    emit(c, render(c, j));
    return kExitOk;
}

int cmd_search(const CommonOpts& c, const std::string& mode, const std::string& alpha_text) {
    Graph g = load_graph(c.input);
    Bitset alpha(g.n());
    if (!alpha_text.empty()) {
        alpha = parse_alpha(g, alpha_text);
    } else {
        SearchMode m;
        if (mode == "exhaustive") m = SearchMode::Exhaustive;
        else if (mode == "greedy") m = SearchMode::Greedy;
        else throw ValidationError("mode must be exhaustive or greedy");
        alpha = search_optimal_alpha(g, m, 20, 32, c.seed).alpha;
    }
    emit(c, render(c, protocol_json(g, protocol1_model(g, alpha))));
    return kExitOk;
}

int cmd_verify(const CommonOpts& c, const std::string& alpha_text,
               const std::string& measurement_override, std::vector<double> thetas,
               double tol) {
    Graph g = load_graph(c.input);
    OracleLimits lim = limits_from(c);
    Bitset alpha = alpha_text.empty() ? search_optimal_alpha(g, SearchMode::Exhaustive).alpha
                                      : parse_alpha(g, alpha_text);
    Protocol1Model proto = protocol1_model(g, alpha);
    if (!measurement_override.empty()) {
        if (static_cast<int>(measurement_override.size()) != g.n())
            throw ValidationError("measurement override must name one letter per qubit");
        proto.measurement.assign(measurement_override.begin(), measurement_override.end());
    }
    if (thetas.empty()) thetas = {0.0, 0.3, 1.0};
    auto [k, part] = stabilizer_element(g, alpha);

    LocalModel model = local_model(g, proto, 0.0, lim);
    TheoremCheck check = theorem_check(model, k);
    auto rows = saturation_report(model, thetas);

    bool ok = check.all();
    json j;
    j["alpha"] = bitset_json(alpha);
    j["conditions"] = {{"stabilizes_support", check.stabilizes_support},
                       {"omega_anticommutes_h", check.omega_anticommutes_h},
                       {"omega_commutes_k", check.omega_commutes_k},
                       {"k_anticommutes_h", check.k_anticommutes_h}};
    json table = json::array();
    std::vector<std::vector<std::string>> csv{{"theta", "qfi", "cfi", "gap"}};
    for (const auto& row : rows) {
        if (std::abs(row.gap) > tol) ok = false;
        table.push_back({{"theta", row.theta}, {"qfi", row.qfi}, {"cfi", row.cfi},
                         {"gap", row.gap}});
        csv.push_back({std::to_string(row.theta), std::to_string(row.qfi),
                       std::to_string(row.cfi), std::to_string(row.gap)});
    }
    j["rows"] = table;
    j["saturated"] = ok;
    emit(c, render(c, j, csv));
    return ok ? kExitOk : kExitVerification;
}

int cmd_protocol2(const CommonOpts& c, const std::string& partition_path,
                  const std::string& state_path, bool uniform) {
    SubspaceSpec spec = partition_from_json(load_json_file(partition_path));
    const int64_t dim = int64_t{1} << spec.m();
    SubspaceState state;
    if (!state_path.empty()) {
        state = subspace_state_from_json(load_json_file(state_path));
        if (state.spec.n != spec.n || state.spec.blocks != spec.blocks)
            throw ValidationError("state partition does not match the partition file");
    } else {
        state.spec = spec;
        state.coeffs = Eigen::MatrixXcd::Zero(dim, dim);
        if (uniform)
            state.coeffs = Eigen::MatrixXcd::Identity(dim, dim) / double(dim);
        else
            state.coeffs(0, 0) = 1.0; // GHZ-like basis state
    }
    ExtremalQfi ext = extremal_qfi(spec);
    json j;
    j["n"] = spec.n;
    j["m"] = spec.m();
    j["qfi"] = qfi_subspace(state);
    j["max"] = ext.max;
    j["min"] = ext.min;
    j["r_min"] = ext.r_min;
    double eps = tolerance(spec);
    if (std::isinf(eps)) j["tolerance"] = "infinity";
    else j["tolerance"] = eps;
    emit(c, render(c, j));
    return kExitOk;
}

int cmd_noise(const CommonOpts& c) {
    json preset = load_json_file(c.input);
    std::vector<ProbeSpec> probes;
    for (const auto& p : preset.at("probes")) {
        ProbeSpec spec;
        spec.id = p.at("id").get<std::string>();
        std::string kind = p.at("kind").get<std::string>();
        if (kind == "ghz") spec.kind = ProbeSpec::Kind::Ghz;
        else if (kind == "separable") spec.kind = ProbeSpec::Kind::Separable;
        else if (kind == "subspace_half") spec.kind = ProbeSpec::Kind::SubspaceHalf;
        else if (kind == "custom") spec.kind = ProbeSpec::Kind::Custom;
        else throw ValidationError("probe kind must be ghz, separable, subspace_half, or custom");
        if (p.contains("budget")) spec.budget = p["budget"].get<int>();
        if (spec.kind == ProbeSpec::Kind::Custom)
            spec.state = subspace_state_from_json(p.at("state"));
        probes.push_back(std::move(spec));
    }
    auto p_grid = preset.at("p_grid").get<std::vector<double>>();
    auto n_grid = preset.at("n_grid").get<std::vector<int>>();
    double theta = preset.value("theta", 0.0);
    auto rows = noise_sweep(probes, p_grid, n_grid, theta, limits_from(c));

    json j = json::array();
    std::vector<std::vector<std::string>> csv{{"probe_id", "n", "p", "theta", "f_dap",
                                               "method"}};
    for (const auto& r : rows) {
        j.push_back({{"probe_id", r.probe_id}, {"n", r.n}, {"p", r.p}, {"theta", r.theta},
                     {"f_dap", r.f_dap}, {"method", r.method}});
        std::ostringstream f;
        f.precision(12);
        f << r.f_dap;
        csv.push_back({r.probe_id, std::to_string(r.n), std::to_string(r.p),
                       std::to_string(r.theta), f.str(), r.method});
    }
    emit(c, render(c, j, csv));
    return kExitOk;
}

int cmd_construct(const CommonOpts& c) {
    json preset = load_json_file(c.input);
    json j;
    if (preset.contains("meta")) {
        MetaGraph meta = meta_graph_from_json(preset["meta"]);
        CompositeGraph composite = meta.join_mode == JoinMode::Bridge
                                       ? build_a_type(meta)
                                       : build_b_type(meta);
        j["graph"] = graph_to_json(composite.graph);
        j["fragment_offset"] = composite.fragment_offset;
        j["rule_warnings"] = composite.rule_warnings;
        j["bound"] = qfi_upper_bound(composite.graph);
    }
    if (preset.contains("scaling")) {
        const json& s = preset["scaling"];
        std::string builder_name = s.at("builder").get<std::string>();
        std::function<Graph(int)> builder;
        if (builder_name == "cluster") builder = a_type_cluster;
        else if (builder_name == "star")
            builder = [](int n) { return standard_graph(StandardGraph::Star, n); };
        else if (builder_name == "cycle")
            builder = [](int n) { return standard_graph(StandardGraph::Cycle, n); };
        else throw ValidationError("scaling builder must be cluster, star, or cycle");
        std::string mode_name = s.value("mode", "greedy");
        SearchMode mode = mode_name == "exhaustive" ? SearchMode::Exhaustive
                                                    : SearchMode::Greedy;
        ScalingResult r = scaling_experiment(builder, s.at("n_values").get<std::vector<int>>(),
                                             mode, c.seed);
        json points = json::array();
        for (const auto& pt : r.points)
            points.push_back({{"n", pt.n}, {"best_qfi", pt.best_qfi}, {"bound", pt.bound}});
        j["scaling"] = {{"points", points},
                        {"exponent", r.exponent},
                        {"bound_exponent", r.bound_exponent}};
    }
    if (j.empty()) throw ValidationError("construct preset needs \"meta\" and/or \"scaling\"");
    emit(c, render(c, j));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stabilizer metrology workbench"};
    app.require_subcommand(1);

    CommonOpts common;
    std::string mode = "exhaustive", alpha_text, measurement_override;
    std::string partition_path, state_path;
    std::vector<double> thetas;
    double tol = 1e-7;
    bool uniform = false;

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        auto* opt = sub->add_option("--input", common.input, "input file");
        if (needs_input) opt->required();
        sub->add_option("--output", common.output, "output file (default: stdout)");
        sub->add_option("--format", common.format, "json or csv");
        sub->add_option("--seed", common.seed, "random seed");
        sub->add_option("--oracle-limit", common.oracle_limit, "max oracle qubits");
    };

    auto* analyze = app.add_subcommand("analyze", "twins structure and the QFI bound");
    add_common(analyze, true);

    auto* search = app.add_subcommand("search", "best (or forced) stabilizer protocol");
    add_common(search, true);
    search->add_option("--mode", mode, "exhaustive or greedy");
    search->add_option("--alpha", alpha_text, "comma-separated vertices or labels");

    auto* verify = app.add_subcommand("verify", "oracle saturation check");
    add_common(verify, true);
    verify->add_option("--alpha", alpha_text, "comma-separated vertices or labels");
    verify->add_option("--theta", thetas, "phase working points");
    verify->add_option("--tolerance", tol, "max |qfi - cfi|");
    verify->add_option("--measurement", measurement_override,
                       "override per-qubit measurement letters");

    auto* protocol2 = app.add_subcommand("protocol2", "subspace protocol report");
    add_common(protocol2, false);
    protocol2->add_option("--partition", partition_path, "partition JSON")->required();
    protocol2->add_option("--state", state_path, "subspace state JSON");
    protocol2->add_flag("--uniform", uniform, "uniform diagonal state instead of GHZ");

    auto* noise = app.add_subcommand("noise", "dephasing sweep from a preset");
    add_common(noise, true);

    auto* construct = app.add_subcommand("construct", "composite families and scaling fits");
    add_common(construct, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) return cmd_analyze(common);
        if (*search) return cmd_search(common, mode, alpha_text);
        if (*verify) return cmd_verify(common, alpha_text, measurement_override, thetas, tol);
        if (*protocol2) return cmd_protocol2(common, partition_path, state_path, uniform);
        if (*noise) return cmd_noise(common);
        if (*construct) return cmd_construct(common);
    } catch (const SizeLimitError& e) {
        std::cerr << "size limit: " << e.what() << "\n";
        return kExitSizeLimit;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
