// resnet: effective resistance, spectral gaps and lattice Green integrals
// on finite truncations of infinite networks.

#include <CLI11.hpp>
#include <chrono>
#include <ctime>
#include <cxxabi.h>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <sstream>
#include <typeinfo>

#include "resnet/lattice.hpp"
#include "resnet/network.hpp"
#include "resnet/network_io.hpp"
#include "resnet/operators.hpp"
#include "resnet/resistance.hpp"
#include "resnet/spectral.hpp"
#include "resnet/threads.hpp"
#include "resnet/verify.hpp"
#include "resnet/walk.hpp"

namespace {

using nlohmann::ordered_json;
using namespace resnet;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::string error_name(const std::exception& e) {
    int status = 0;
    std::unique_ptr<char, void (*)(void*)> demangled(
        abi::__cxa_demangle(typeid(e).name(), nullptr, nullptr, &status), std::free);
    std::string name = status == 0 && demangled ? demangled.get() : typeid(e).name();
    if (const auto pos = name.rfind("::"); pos != std::string::npos) name = name.substr(pos + 2);
    return name;
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Report skeleton; "timestamp" is the only run-dependent field, so byte
/// comparison after dropping it is stable across reruns.
struct Report {
    ordered_json j;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    explicit Report(const std::string& command) {
        j["command"] = command;
        j["timestamp"] = nullptr;
        j["inputs"] = ordered_json::object();
        j["outputs"] = ordered_json::object();
        j["provenance"] = ordered_json::object();
    }

    int emit(bool ok) {
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        j["timestamp"] = {{"utc", iso_timestamp()}, {"wall_s", wall}};
        std::cout << j.dump(2) << std::endl;
        return ok ? kExitOk : kExitFailure;
    }
};

void write_text(const std::string& dir, const std::string& name, const std::string& text) {
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / name);
    out << text;
}

// ---------------------------------------------------------------------------
// generator selection shared by the resistance/spectral/walk commands

struct GenOptions {
    int lattice_d = 0;
    bool tree = false;
    bool product = false;
    std::string net_file;
    int path_n = 0;
    bool k3 = false;

    void add_flags(CLI::App* cmd, bool allow_small_fixtures) {
        cmd->add_option("--lattice", lattice_d, "integer lattice Z^d, give d");
        cmd->add_flag("--tree", tree, "binary tree");
        cmd->add_flag("--product", product, "binary tree crossed with Z");
        cmd->add_option("--net", net_file, "network JSON file");
        if (allow_small_fixtures) {
            cmd->add_option("--path", path_n, "path on n vertices");
            cmd->add_flag("--k3", k3, "triangle with unit conductances");
        }
    }

    ExhaustionSpec spec() const {
        const int picked = (lattice_d > 0) + tree + product + !net_file.empty();
        if (picked != 1)
            throw CLI::ValidationError("pick exactly one of --lattice/--tree/--product/--net");
        if (lattice_d > 0) return ExhaustionSpec::lattice(lattice_d);
        if (tree) return ExhaustionSpec::tree();
        if (product) return ExhaustionSpec::tree_cross_line();
        return ExhaustionSpec::from_network(load_network(net_file));
    }

    std::string describe() const {
        if (lattice_d > 0) return "lattice-" + std::to_string(lattice_d);
        if (tree) return "tree";
        if (product) return "tree-x-line";
        if (path_n > 0) return "path-" + std::to_string(path_n);
        if (k3) return "k3";
        return net_file;
    }
};

ordered_json json_vector(const std::vector<double>& v) {
    return ordered_json(v);
}

ordered_json quadrature_json(const QuadratureValue& q) {
    ordered_json out;
    out["value"] = q.value;
    out["grids"] = q.grids;
    out["level_values"] = json_vector(q.level_values);
    out["converged"] = q.converged;
    out["tolerance"] = q.tolerance;
    return out;
}

const char* kPrefactorNote =
    "resistance integrand uses the factor 4 sin^2((x-y).t/2) produced by the "
    "2 - 2cos algebra; the displayed closed form omits it and fails the d=1 "
    "sanity value R(0,e1)=1";

// ---------------------------------------------------------------------------

int cmd_resistance(const GenOptions& gen, const std::vector<std::string>& pair,
                   std::vector<int> depths, double gamma, const std::string& out_dir) {
    Report rep("resistance");
    rep.j["inputs"] = {{"generator", gen.describe()},
                      {"pair", pair},
                      {"depths", depths}};
    rep.j["provenance"] = {{"gap_tolerance", 1e-3}, {"solver_rel_tol", 1e-12}};

    const ExhaustionSpec spec = gen.spec();
    const ResistanceBracket bracket = resistance_bracket(spec, pair[0], pair[1], depths);

    ordered_json rows = ordered_json::array();
    for (size_t i = 0; i < bracket.depths.size(); ++i)
        rows.push_back({{"depth", bracket.depths[i]},
                        {"wired", bracket.wired_values[i]},
                        {"free", bracket.free_values[i]},
                        {"gap", bracket.free_values[i] - bracket.wired_values[i]}});
    rep.j["outputs"]["bracket"] = rows;
    rep.j["outputs"]["converged"] = bracket.converged;
    rep.j["outputs"]["final_gap"] = bracket.final_gap();
    if (gamma > 0.0) {
        rep.j["outputs"]["gap_bound_2_over_gamma"] = gap_resistance_bound(gamma);
        rep.j["provenance"]["gamma"] = gamma;
    }

    if (!out_dir.empty()) {
        std::ostringstream csv;
        bracket.write_csv(csv);
        write_text(out_dir, "bracket.csv", csv.str());
        rep.j["outputs"]["csv"] = out_dir + "/bracket.csv";
    }
    return rep.emit(true);
}

int cmd_spectral(const GenOptions& gen, std::vector<int> depths,
                 const std::vector<std::string>& measure, int measure_depth,
                 std::uint64_t seed, const std::string& out_dir) {
    Report rep("spectral");
    rep.j["inputs"] = {{"generator", gen.describe()}, {"depths", depths}};
    rep.j["provenance"] = {{"lanczos_iters", 400}, {"seed", seed}};

    const ExhaustionSpec spec = gen.spec();
    ordered_json rows = ordered_json::array();
    const DirichletGapSequence seq = dirichlet_gap(spec, depths, 400, seed);
    for (const auto& p : seq.points)
        rows.push_back({{"depth", p.depth}, {"lambda_min", p.lambda_min}});
    rep.j["outputs"]["dirichlet_gap"] = rows;
    rep.j["outputs"]["note"] = "upper estimate of gamma (Dirichlet truncation values)";

    if (!out_dir.empty()) {
        std::ostringstream csv;
        seq.write_csv(csv);
        write_text(out_dir, "gap.csv", csv.str());
        rep.j["outputs"]["csv"] = out_dir + "/gap.csv";
    }

    if (!measure.empty()) {
        if (measure.size() != 2 || measure[0] != "delta")
            throw CLI::ValidationError("--measure takes: delta <vertex label>");
        const WiredCollapse wc = spec.wired_truncation(measure_depth);
        GroundedSystem gs(wc.network);
        VertexFunction xi = VertexFunction::Zero(wc.network.size());
        xi[wc.network.vertex_by_label(measure[1])] = 1.0;
        const DiscreteSpectralMeasure mu = spectral_measure(gs, xi);
        ordered_json atoms = ordered_json::array();
        for (const auto& a : mu.atoms) atoms.push_back({{"lambda", a.lambda}, {"mass", a.mass}});
        rep.j["outputs"]["measure"] = {{"depth", measure_depth},
                                      {"xi", "delta " + measure[1]},
                                      {"total", mu.total},
                                      {"atoms", atoms}};
        if (!out_dir.empty()) {
            std::ostringstream csv;
            mu.write_csv(csv);
            write_text(out_dir, "measure.csv", csv.str());
        }
    }
    return rep.emit(true);
}

int cmd_lattice(int d, int points, int refinements, const std::vector<std::string>& res_pair,
                const std::vector<std::string>& dip_pair, const std::string& monopole_at,
                bool transience, const std::string& ell2_kind, std::vector<int> radii,
                bool energy_only, int cross_check_depth) {
    Report rep("lattice");
    TorusQuadrature q = TorusQuadrature::defaults(d);
    if (points > 0) q.points_per_axis = points;
    if (refinements >= 0) q.refinements = refinements;
    rep.j["inputs"] = {{"d", d}};
    rep.j["provenance"] = {{"base_grid", q.base_grid()},
                          {"refinements", q.refinements},
                          {"tolerance", q.tolerance},
                          {"origin_refine_levels", q.origin_refine_levels},
                          {"origin_refine_shells", q.origin_refine_shells}};

    const int picked = !res_pair.empty() + !dip_pair.empty() + !monopole_at.empty() +
                       transience + !ell2_kind.empty() + energy_only;
    if (picked != 1)
        throw CLI::ValidationError(
            "pick one of --resistance/--dipole/--monopole/--energy/--transience/--ell2");

    bool converged = true;
    if (!res_pair.empty()) {
        const auto x = parse_lattice_point(res_pair[0], d);
        const auto y = parse_lattice_point(res_pair[1], d);
        const QuadratureValue v = lattice_resistance(d, x, y, q);
        rep.j["inputs"]["pair"] = res_pair;
        rep.j["outputs"]["resistance"] = quadrature_json(v);
        rep.j["outputs"]["discrepancy_notes"] = kPrefactorNote;
        converged = v.converged;
        if (cross_check_depth > 0) {
            const FourierSpectralPair pair =
                fourier_spectral_consistency(d, x, y, cross_check_depth, q);
            rep.j["outputs"]["wired_truncation_cross_check"] = {
                {"depth", pair.depth},
                {"spectral_value", pair.spectral_value},
                {"quadrature_value", pair.quadrature_value},
                {"abs_diff", std::abs(pair.spectral_value - pair.quadrature_value)}};
        }
    } else if (!dip_pair.empty()) {
        const auto x = parse_lattice_point(dip_pair[0], d);
        const auto y = parse_lattice_point(dip_pair[1], d);
        const QuadratureValue v = lattice_dipole_value(d, x, y, q);
        rep.j["inputs"]["x"] = dip_pair[0];
        rep.j["inputs"]["y"] = dip_pair[1];
        rep.j["outputs"]["dipole_value"] = quadrature_json(v);
        rep.j["outputs"]["representative"] =
            "vanishes at infinity; v_x(0) = -v_x(x), not the v_x(o)=0 normalization";
        converged = v.converged;
    } else if (!monopole_at.empty()) {
        const auto x = parse_lattice_point(monopole_at, d);
        const QuadratureValue v = lattice_monopole_value(d, x, q);
        rep.j["inputs"]["x"] = monopole_at;
        rep.j["outputs"]["monopole_value"] = quadrature_json(v);
        converged = v.converged;
    } else if (energy_only) {
        const QuadratureValue v = monopole_energy(d, q);
        rep.j["outputs"]["monopole_energy"] = quadrature_json(v);
        rep.j["outputs"]["note"] = "E(w_o) = w_o(0)";
        converged = v.converged;
    } else if (transience) {
        const TransienceReport t = transience_probe(d, q);
        rep.j["outputs"]["transient"] = t.transient;
        rep.j["outputs"]["grids"] = t.grids;
        rep.j["outputs"]["level_values"] = json_vector(t.level_values);
        rep.j["outputs"]["diffs"] = json_vector(t.diffs);
        rep.j["outputs"]["cauchy_tolerance"] = t.cauchy_tolerance;
    } else {
        if (radii.empty()) radii = d <= 3 ? std::vector<int>{2, 4, 8, 16}
                                          : std::vector<int>{1, 2, 3, 4};
        const LatticeFunctionKind kind = ell2_kind == "monopole"
                                             ? LatticeFunctionKind::monopole
                                             : LatticeFunctionKind::dipole;
        if (ell2_kind != "monopole" && ell2_kind != "dipole")
            throw CLI::ValidationError("--ell2 takes dipole or monopole");
        const Ell2Report e = ell2_membership_probe(kind, d, radii, q);
        rep.j["inputs"]["kind"] = ell2_kind;
        rep.j["outputs"]["radii"] = e.radii;
        rep.j["outputs"]["partial_sums"] = json_vector(e.partial_sums);
        rep.j["outputs"]["log_log_slope"] = e.slope;
        rep.j["outputs"]["verdict"] = e.bounded_verdict ? "bounded" : "unbounded";
        rep.j["outputs"]["slope_threshold"] = e.slope_threshold;
    }
    rep.j["outputs"]["all_converged"] = converged;
    return rep.emit(true);
}

int cmd_walk(const GenOptions& gen, int depth, bool wired,
             const std::vector<std::string>& pair, std::int64_t episodes,
             std::int64_t step_cap, std::uint64_t seed, bool absorb_omega) {
    Report rep("walk");
    rep.j["inputs"] = {{"generator", gen.describe()},
                      {"pair", pair},
                      {"episodes", episodes},
                      {"step_cap", step_cap},
                      {"absorb_omega", absorb_omega}};
    rep.j["provenance"] = {{"seed", seed}};

    std::optional<Network> net;
    if (gen.path_n > 0) {
        net = path_graph(gen.path_n);
    } else if (gen.k3) {
        net = complete_graph(3);
    } else {
        const ExhaustionSpec spec = gen.spec();
        if (depth <= 0) throw CLI::ValidationError("give --depth for generator-based walks");
        net = wired ? spec.wired_truncation(depth).network : spec.truncation(depth);
        rep.j["inputs"]["depth"] = depth;
        rep.j["inputs"]["wired"] = wired;
    }
    const int o = net->vertex_by_label(pair[0]);
    const int x = net->vertex_by_label(pair[1]);

    WalkOptions opts;
    opts.absorb_ground = absorb_omega;
    const double exact = hitting_probability_exact(*net, o, x, opts);
    const WalkEstimate mc = hitting_probability_mc(*net, o, x, episodes, step_cap, seed, opts);

    rep.j["outputs"]["exact"] = exact;
    rep.j["outputs"]["mc"] = {{"p_hat", mc.p_hat}, {"ci95", mc.ci95},
                             {"episodes", mc.episodes}, {"successes", mc.successes},
                             {"failures", mc.failures}, {"truncated", mc.truncated},
                             {"seed", mc.seed}};
    rep.j["outputs"]["mc_within_3ci"] = std::abs(mc.p_hat - exact) <= 3.0 * mc.ci95;
    if (absorb_omega)
        rep.j["outputs"]["bias_note"] =
            "episodes absorbed at omega count as failures; p_hat is biased downward "
            "against the infinite-network value";

    // resistance cross-check runs in ordinary-vertex semantics
    const double via_walk = resistance_via_walk(*net, o, x);
    const double direct = free_resistance(*net, x, o);
    rep.j["outputs"]["resistance_identity"] = {
        {"one_over_cP", via_walk},
        {"free_resistance", direct},
        {"rel_dev", std::abs(via_walk - direct) / std::max(direct, 1e-30)}};
    return rep.emit(true);
}

int cmd_verify(const std::string& module, bool inject_fault, const std::string& out_dir) {
    Report rep("verify");
    rep.j["inputs"] = {{"module", module.empty() ? "all" : module},
                      {"inject_fault", inject_fault}};
    VerifyOptions opts;
    opts.module_filter = module;
    opts.inject_fault = inject_fault;
    const auto results = run_verification(opts);

    int passed = 0;
    ordered_json rows = ordered_json::array();
    for (const auto& r : results) {
        rows.push_back({{"module", r.module}, {"name", r.name}, {"pass", r.pass},
                        {"detail", r.detail}});
        passed += r.pass;
    }
    rep.j["outputs"]["checks"] = rows;
    rep.j["outputs"]["passed"] = passed;
    rep.j["outputs"]["failed"] = static_cast<int>(results.size()) - passed;
    const bool ok = all_passed(results) && !results.empty();
    rep.j["outputs"]["ok"] = ok;
    if (!out_dir.empty()) write_text(out_dir, "verify.json", rep.j.dump(2));
    return rep.emit(ok);
}

int cmd_generate(const GenOptions& gen, int depth, bool wired, const std::string& out_file) {
    const ExhaustionSpec spec = gen.spec();
    const Network net = wired ? spec.wired_truncation(depth).network : spec.truncation(depth);
    const std::string text = network_to_json(net);
    if (out_file.empty()) {
        std::cout << text << std::endl;
    } else {
        std::ofstream out(out_file);
        out << text << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"network Laplacians, effective resistance and spectral measures "
                 "on finite truncations"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "cap worker threads (env: RESNET_THREADS)");
    std::string out_dir;
    app.add_option("--out-dir", out_dir, "directory for CSV side files");

    // resistance
    auto* res = app.add_subcommand("resistance", "free/wired resistance bracket");
    res->fallthrough();  // global flags may follow the subcommand
    GenOptions res_gen;
    res_gen.add_flags(res, false);
    std::vector<std::string> res_pair;
    res->add_option("--pair", res_pair, "vertex labels x y")->expected(2)->required();
    std::vector<int> res_depths{4, 8, 16};
    res->add_option("--depths", res_depths, "depth schedule")->delimiter(',');
    double res_gamma = 0.0;
    res->add_option("--gamma", res_gamma, "annotate with the 2/gamma bound");

    // spectral
    auto* spec_cmd = app.add_subcommand("spectral", "Dirichlet gap sequence and measures");
    spec_cmd->fallthrough();  // global flags may follow the subcommand
    GenOptions spec_gen;
    spec_gen.add_flags(spec_cmd, false);
    std::vector<int> spec_depths{4, 6, 8};
    spec_cmd->add_option("--depths", spec_depths, "depth schedule")->delimiter(',');
    std::vector<std::string> spec_measure;
    spec_cmd->add_option("--measure", spec_measure, "spectral measure: delta <label>")
        ->expected(2);
    int spec_measure_depth = 6;
    spec_cmd->add_option("--depth", spec_measure_depth, "truncation depth for --measure");
    std::uint64_t spec_seed = 1;
    spec_cmd->add_option("--seed", spec_seed, "lanczos seed");

    // lattice
    auto* lat = app.add_subcommand("lattice", "torus integrals for (Z^d, 1)");
    lat->fallthrough();  // global flags may follow the subcommand
    int lat_d = 0;
    lat->add_option("--d", lat_d, "dimension")->required();
    int lat_points = 0, lat_refines = -1;
    lat->add_option("--points", lat_points, "base grid points per axis");
    lat->add_option("--refinements", lat_refines, "refinement levels");
    std::vector<std::string> lat_res, lat_dip;
    lat->add_option("--resistance", lat_res, "effective resistance between two points")
        ->expected(2);
    lat->add_option("--dipole", lat_dip, "dipole value v_x(y): give x y")->expected(2);
    std::string lat_mono;
    lat->add_option("--monopole", lat_mono, "monopole value w_o(x)");
    bool lat_energy = false;
    lat->add_flag("--energy", lat_energy, "monopole energy E(w_o)");
    bool lat_trans = false;
    lat->add_flag("--transience", lat_trans, "transience probe");
    std::string lat_ell2;
    lat->add_option("--ell2", lat_ell2, "square-summability probe: dipole|monopole");
    std::vector<int> lat_radii;
    lat->add_option("--radii", lat_radii, "radius schedule for --ell2")->delimiter(',');
    int lat_cross = 0;
    lat->add_option("--cross-check", lat_cross,
                    "also solve a wired truncation at this depth (resistance only)");

    // walk
    auto* walk = app.add_subcommand("walk", "hitting probabilities and the walk identity");
    walk->fallthrough();  // global flags may follow the subcommand
    GenOptions walk_gen;
    walk_gen.add_flags(walk, true);
    int walk_depth = 0;
    walk->add_option("--depth", walk_depth, "truncation depth for generators");
    bool walk_wired = false;
    walk->add_flag("--wired", walk_wired, "use the wired truncation");
    std::vector<std::string> walk_pair;
    walk->add_option("--pair", walk_pair, "vertex labels o x")->expected(2)->required();
    std::int64_t walk_episodes = 100000, walk_cap = 1000000;
    walk->add_option("--episodes", walk_episodes, "episode count");
    walk->add_option("--step-cap", walk_cap, "per-episode step cap");
    std::uint64_t walk_seed = 1;
    walk->add_option("--seed", walk_seed, "rng seed");
    bool walk_absorb = false;
    walk->add_flag("--absorb-omega", walk_absorb,
                   "treat the ground/omega vertex as an absorbing failure");

    // verify
    auto* ver = app.add_subcommand("verify", "run the invariant suite");
    ver->fallthrough();  // global flags may follow the subcommand
    std::string ver_module;
    ver->add_option("--module", ver_module,
                    "network-core|operators|solvers|resistance|spectral|lattice|walk");
    bool ver_fault = false;
    ver->add_flag("--inject-fault", ver_fault, "perturb a fixture; identities must fail");

    // generate
    auto* gen_cmd = app.add_subcommand("generate", "emit a truncation as network JSON");
    gen_cmd->fallthrough();  // global flags may follow the subcommand
    GenOptions gen_gen;
    gen_gen.add_flags(gen_cmd, false);
    int gen_depth = 4;
    gen_cmd->add_option("--depth", gen_depth, "truncation depth");
    bool gen_wired = false;
    gen_cmd->add_flag("--wired", gen_wired, "wired-collapse the truncation");
    std::string gen_out;
    gen_cmd->add_option("-o,--output", gen_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (threads > 0) set_thread_budget(threads);

    try {
        if (*res) return cmd_resistance(res_gen, res_pair, res_depths, res_gamma, out_dir);
        if (*spec_cmd)
            return cmd_spectral(spec_gen, spec_depths, spec_measure, spec_measure_depth,
                                spec_seed, out_dir);
        if (*lat)
            return cmd_lattice(lat_d, lat_points, lat_refines, lat_res, lat_dip, lat_mono,
                               lat_trans, lat_ell2, lat_radii, lat_energy, lat_cross);
        if (*walk)
            return cmd_walk(walk_gen, walk_depth, walk_wired, walk_pair, walk_episodes,
                            walk_cap, walk_seed, walk_absorb);
        if (*ver) return cmd_verify(ver_module, ver_fault, out_dir);
        if (*gen_cmd) return cmd_generate(gen_gen, gen_depth, gen_wired, gen_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const resnet::Error& e) {
        ordered_json err;
        err["error"] = {{"type", error_name(e)}, {"message", e.what()}};
        std::cout << err.dump(2) << std::endl;
        return kExitFailure;
    }
    return kExitUsage;
}
