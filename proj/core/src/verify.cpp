#include "resnet/verify.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

#include "resnet/lattice.hpp"
#include "resnet/network.hpp"
#include "resnet/operators.hpp"
#include "resnet/resistance.hpp"
#include "resnet/solvers.hpp"
#include "resnet/spectral.hpp"
#include "resnet/walk.hpp"

namespace resnet {

namespace {

struct Harness {
    std::vector<CheckResult> results;
    std::string module;
    std::string filter;

    bool runs(const std::string& m) const { return filter.empty() || filter == m; }

    void check(const std::string& name, bool pass, const std::string& detail = "") {
        results.push_back({module, name, pass, detail});
    }

    void check_close(const std::string& name, double a, double b, double tol) {
        const double scale = std::max({std::abs(a), std::abs(b), 1e-30});
        const double dev = std::abs(a - b) / scale;
        std::ostringstream os;
        os << a << " vs " << b << " (rel dev " << dev << ", tol " << tol << ")";
        check(name, dev <= tol, os.str());
    }

    void check_le(const std::string& name, double a, double b, double slack = 0.0) {
        std::ostringstream os;
        os << a << " <= " << b << " + " << slack;
        check(name, a <= b + slack, os.str());
    }
};

double uniform01(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * (1.0 / 9007199254740992.0);
}

Network random_connected_network(int n, std::uint64_t seed, double cmin = 0.1,
                                 double cmax = 10.0) {
    std::uint64_t state = seed;
    std::vector<Edge> edges;
    std::set<std::pair<int, int>> used;
    for (int v = 1; v < n; ++v) {
        const int parent = static_cast<int>(uniform01(state) * v);
        const double c = cmin + (cmax - cmin) * uniform01(state);
        edges.push_back({parent, v, c});
        used.insert({parent, v});
    }
    const int extra = n / 2;
    for (int k = 0; k < extra; ++k) {
        int u = static_cast<int>(uniform01(state) * n);
        int v = static_cast<int>(uniform01(state) * n);
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (used.count({u, v})) continue;
        used.insert({u, v});
        edges.push_back({u, v, cmin + (cmax - cmin) * uniform01(state)});
    }
    return Network(n, std::move(edges), 0);
}

VertexFunction random_grounded_function(const GroundedSystem& gs, std::uint64_t& state) {
    VertexFunction xi = VertexFunction::Zero(gs.network().size());
    for (int v = 0; v < gs.network().size(); ++v)
        if (v != gs.ground()) xi[v] = 2.0 * uniform01(state) - 1.0;
    return xi;
}

bool is_vertex_induced(const Network& inner, const Network& outer) {
    std::vector<int> map(inner.size());
    for (int v = 0; v < inner.size(); ++v) {
        auto w = outer.find_label(inner.label(v));
        if (!w) return false;
        map[v] = *w;
    }
    std::set<std::tuple<int, int, double>> inner_edges, outer_induced;
    for (const auto& e : inner.edges()) {
        int u = map[e.u], v = map[e.v];
        if (u > v) std::swap(u, v);
        inner_edges.insert({u, v, e.conductance});
    }
    std::vector<char> kept(outer.size(), 0);
    for (int v : map) kept[v] = 1;
    for (const auto& e : outer.edges())
        if (kept[e.u] && kept[e.v]) outer_induced.insert({e.u, e.v, e.conductance});
    return inner_edges == outer_induced;
}

/// All-pairs effective resistance through the Laplacian eigensystem;
/// independent of the dipole/green code paths.
Eigen::MatrixXd resistance_matrix(const Network& net) {
    const SpectralDecomposition eig = dense_eig(laplacian_matrix(net));
    const int n = net.size();
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(n, n);
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            double r = 0.0;
            for (int i = 0; i < n; ++i) {
                if (eig.eigenvalues[i] < 1e-12) continue;
                const double diff = eig.eigenvectors(x, i) - eig.eigenvectors(y, i);
                r += diff * diff / eig.eigenvalues[i];
            }
            R(x, y) = R(y, x) = r;
        }
    return R;
}

// ---------------------------------------------------------------------------

void verify_network_core(Harness& h) {
    h.module = "network-core";

    const std::vector<std::pair<std::string, ExhaustionSpec>> gens = {
        {"lattice-1", ExhaustionSpec::lattice(1)},
        {"lattice-2", ExhaustionSpec::lattice(2)},
        {"lattice-3", ExhaustionSpec::lattice(3)},
        {"tree", ExhaustionSpec::tree()},
        {"product", ExhaustionSpec::tree_cross_line()},
    };
    for (const auto& [name, gen] : gens) {
        bool nested = true;
        for (int k = 1; k <= 3; ++k)
            nested = nested && is_vertex_induced(gen.truncation(k), gen.truncation(k + 1));
        h.check("nesting: " + name + " truncations are vertex-induced and connected", nested);
    }

    // collapse conserves the boundary conductance
    {
        const Network outer = lattice_ball(2, 3);
        const Network inner = lattice_ball(2, 2);
        std::vector<int> keep;
        for (int v = 0; v < inner.size(); ++v)
            keep.push_back(outer.vertex_by_label(inner.label(v)));
        const WiredCollapse wc = wired_collapse(outer, keep);
        double omega_side = 0.0;
        const int omega = *wc.network.ground();
        for (const auto& [y, c] : wc.network.neighbors(omega)) {
            (void)y;
            omega_side += c;
        }
        double cut = 0.0;
        std::vector<char> kept(outer.size(), 0);
        for (int v : keep) kept[v] = 1;
        for (const auto& e : outer.edges())
            if (kept[e.u] != kept[e.v]) cut += e.conductance;
        h.check_close("wired collapse conserves boundary conductance", omega_side, cut, 1e-12);
        h.check_close("wired collapse reports the cut", wc.boundary_conductance, cut, 1e-12);
    }

    // c(x) equals the Laplacian diagonal
    {
        const Network net = random_connected_network(30, 99);
        const SparseMatrix L = laplacian_matrix(net);
        bool ok = true;
        for (int v = 0; v < net.size(); ++v)
            ok = ok && std::abs(net_conductance(net, v) - L.coeff(v, v)) < 1e-12;
        h.check("net_conductance matches the Laplacian diagonal", ok);
    }

    h.check_le("denser graphs expand more: K4 vs P5", expansion_constant(path_graph(5)),
               expansion_constant(complete_graph(4)));
    h.check_le("denser graphs expand more: K3 vs P3", expansion_constant(path_graph(3)),
               expansion_constant(complete_graph(3)));
}

void verify_operators(Harness& h, bool inject_fault) {
    h.module = "operators";
    std::uint64_t state = 2024;

    struct Fixture {
        std::string name;
        Network net;
        int ground;
    };
    std::vector<Fixture> fixtures;
    fixtures.push_back({"K3", complete_graph(3), 2});
    fixtures.push_back({"P3", path_graph(3), 2});
    fixtures.push_back({"random-24", random_connected_network(24, 11), 5});
    {
        WiredCollapse wc = ExhaustionSpec::lattice(2).wired_truncation(3);
        fixtures.push_back({"Z2-wired-3", wc.network, *wc.network.ground()});
    }

    for (const auto& fx : fixtures) {
        const Network& net = fx.net;
        GroundedSystem gs(net, fx.ground);

        // Kronecker: L w_x = delta_x off the ground
        double worst = 0.0;
        for (int x = 0; x < net.size(); ++x) {
            if (x == fx.ground) continue;
            const VertexFunction w = gs.monopole(x);
            VertexFunction lw = apply_laplacian(net, w);
            for (int y = 0; y < net.size(); ++y) {
                if (y == fx.ground) continue;
                worst = std::max(worst, std::abs(lw[y] - (y == x ? 1.0 : 0.0)));
            }
        }
        h.check("kronecker identity on " + fx.name, worst < 1e-10,
                "max |L w_x - delta_x| = " + std::to_string(worst));

        // ripple: delta_x = c(x) w_x - sum c_xy w_y
        worst = 0.0;
        for (int x = 0; x < net.size(); ++x) {
            if (x == fx.ground) continue;
            VertexFunction acc = net_conductance(net, x) * gs.monopole(x);
            for (const auto& [y, c] : net.neighbors(x)) {
                if (y == fx.ground) continue;  // w_ground = 0
                acc -= c * gs.monopole(y);
            }
            for (int z = 0; z < net.size(); ++z)
                worst = std::max(worst, std::abs(acc[z] - (z == x ? 1.0 : 0.0)));
        }
        h.check("ripple identity on " + fx.name, worst < 1e-10,
                "max deviation " + std::to_string(worst));

        // isometry, intertwining, commutation, positivity on random vectors
        const Eigen::MatrixXd M = gs.dim() <= GroundedSystem::kDenseGreenCap
                                      ? gram_matrix(gs)
                                      : Eigen::MatrixXd();
        for (int trial = 0; trial < 3; ++trial) {
            const VertexFunction xi = random_grounded_function(gs, state);
            const VertexFunction eta = random_grounded_function(gs, state);
            const VertexFunction phi_xi = gs.phi(xi);
            const VertexFunction phi_eta = gs.phi(eta);

            if (M.size() > 0) {
                const Eigen::VectorXd xr = gs.reduce(xi);
                h.check_close("isometry <xi,M xi> = E(Phi xi) on " + fx.name,
                              xr.dot(M * xr), energy(net, phi_xi, phi_xi), 1e-10);
            }
            h.check_close("intertwining <Phi xi, Lap Phi eta>_E = <xi,eta>_2 on " + fx.name,
                          energy(net, phi_xi, gs.apply_grounded(phi_eta)),
                          gs.reduce(xi).dot(gs.reduce(eta)), 1e-10);

            const VertexFunction lhs = gs.apply_grounded(phi_xi);
            const VertexFunction rhs = gs.phi(gs.extend(gs.matrix() * gs.reduce(xi)));
            h.check("commutation Lap Phi xi = Phi Lap xi on " + fx.name,
                    (lhs - rhs).cwiseAbs().maxCoeff() < 1e-9,
                    "max entry dev " + std::to_string((lhs - rhs).cwiseAbs().maxCoeff()));

            const double positivity = energy(net, phi_xi, gs.apply_grounded(phi_xi));
            h.check_close("positivity <Phi xi, Lap Phi xi>_E = |xi|^2 on " + fx.name,
                          positivity, gs.reduce(xi).squaredNorm(), 1e-10);
        }

        if (M.size() > 0) {
            const Eigen::MatrixXd LM = Eigen::MatrixXd(gs.matrix()) * M;
            const Eigen::MatrixXd ML = M * Eigen::MatrixXd(gs.matrix());
            const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(gs.dim(), gs.dim());
            h.check("Lap M = M Lap = I on " + fx.name,
                    (LM - I).cwiseAbs().maxCoeff() < 1e-10 &&
                        (ML - I).cwiseAbs().maxCoeff() < 1e-10);
        }

        // E(delta_x) = c(x)
        VertexFunction d0 = VertexFunction::Zero(net.size());
        d0[net.origin()] = 1.0;
        h.check_close("E(delta_x) = c(x) on " + fx.name, energy(net, d0, d0),
                      net_conductance(net, net.origin()), 1e-12);

        // summation by parts
        const VertexFunction u = random_grounded_function(gs, state);
        const auto [lhs, rhs] = summation_by_parts_check(net, u, d0);
        h.check_close("summation by parts on " + fx.name, lhs, rhs, 1e-12);
    }

    if (inject_fault) {
        // perturb one conductance after assembling the grounded system;
        // the Kronecker identity must now fail
        Network net = complete_graph(3);
        GroundedSystem gs(net, 2);
        std::vector<Edge> edges = net.edges();
        edges[0].conductance *= 1.01;
        Network perturbed(net.size(), edges, net.origin());
        const VertexFunction w = gs.monopole(0);
        const VertexFunction lw = apply_laplacian(perturbed, w);
        const double dev = std::abs(lw[0] - 1.0);
        h.check("kronecker identity under injected conductance fault", dev < 1e-10,
                "deviation " + std::to_string(dev) + " (fault injected, failure expected)");
    }
}

void verify_solvers(Harness& h) {
    h.module = "solvers";
    std::uint64_t state = 31;

    for (int n : {30, 80}) {
        const Network net = random_connected_network(n, 1000 + n);
        GroundedSystem gs(net, n / 2);
        Eigen::VectorXd b(gs.dim());
        for (int i = 0; i < gs.dim(); ++i) b[i] = 2.0 * uniform01(state) - 1.0;
        const CgResult cg = cg_solve(gs.matrix(), b);
        const Eigen::VectorXd dense = gs.green() * b;
        h.check("cg agrees with the dense inverse (n=" + std::to_string(n) + ")",
                cg.ok() && (cg.x - dense).norm() <= 1e-8 * dense.norm());

        const SpectralDecomposition eig = dense_eig(gs.matrix());
        const Eigen::MatrixXd A = Eigen::MatrixXd(gs.matrix());
        const Eigen::MatrixXd recon = eig.eigenvectors *
                                      eig.eigenvalues.asDiagonal() *
                                      eig.eigenvectors.transpose();
        h.check("dense_eig reconstruction (n=" + std::to_string(n) + ")",
                (recon - A).norm() <= 1e-8 * A.norm());
        const Eigen::MatrixXd gram =
            eig.eigenvectors.transpose() * eig.eigenvectors;
        h.check("dense_eig orthonormality (n=" + std::to_string(n) + ")",
                (gram - Eigen::MatrixXd::Identity(eig.n, eig.n)).cwiseAbs().maxCoeff() < 1e-10);

        const LanczosResult lz = lanczos_smallest(gs.matrix(), 200, 5);
        h.check_close("lanczos matches dense lambda_min (n=" + std::to_string(n) + ")",
                      lz.value, eig.eigenvalues[0], 1e-6);
    }

    // singular input must not return silently
    {
        const Network net = path_graph(2);
        const SparseMatrix L = laplacian_matrix(net);
        Eigen::VectorXd b = Eigen::VectorXd::Zero(2);
        b[0] = 1.0;
        const CgResult res = cg_solve(L, b);
        h.check("cg flags the ungrounded (singular) Laplacian", !res.ok());
    }
}

void verify_resistance(Harness& h) {
    h.module = "resistance";

    for (const auto& [name, net] :
         std::vector<std::pair<std::string, Network>>{
             {"K3", complete_graph(3)},
             {"P4", path_graph(4)},
             {"random-14", random_connected_network(14, 5)},
             {"Z2-ball-2", lattice_ball(2, 2)}}) {
        const Eigen::MatrixXd R = resistance_matrix(net);
        bool sym = true, tri = true, pos = true, lower = true;
        const SpectralDecomposition eig = dense_eig(laplacian_matrix(net));
        const double lambda_max = eig.eigenvalues[eig.n - 1];
        for (int x = 0; x < net.size(); ++x)
            for (int y = 0; y < net.size(); ++y) {
                if (x != y) {
                    pos = pos && R(x, y) > 0;
                    lower = lower && R(x, y) >= 2.0 / lambda_max - 1e-9;
                }
                sym = sym && std::abs(R(x, y) - R(y, x)) < 1e-12;
                for (int z = 0; z < net.size(); ++z)
                    tri = tri && R(x, z) <= R(x, y) + R(y, z) + 1e-9;
            }
        h.check("resistance is a metric on " + name + " (symmetry)", sym);
        h.check("resistance is a metric on " + name + " (triangle inequality)", tri);
        h.check("resistance positivity on " + name, pos);
        h.check("R >= 2/lambda_max on " + name, lower);

        // cross-check one pair against the dipole route
        const double direct = free_resistance(net, 0, net.size() - 1);
        h.check_close("dipole route matches eigen route on " + name, direct,
                      R(0, net.size() - 1), 1e-9);
    }

    // monotone depth sequences
    {
        const auto z1 = resistance_bracket(ExhaustionSpec::lattice(1), "0", "2", {2, 4, 8});
        bool wired_up = true, free_const = true;
        for (size_t i = 0; i + 1 < z1.wired_values.size(); ++i)
            wired_up = wired_up && z1.wired_values[i] <= z1.wired_values[i + 1] + 1e-9;
        for (double f : z1.free_values) free_const = free_const && std::abs(f - 2.0) < 1e-9;
        h.check("Z1 wired values non-decreasing", wired_up);
        h.check("Z1 free values constant at the series value", free_const);
        bool below = true;
        for (size_t i = 0; i < z1.depths.size(); ++i)
            below = below && z1.wired_values[i] <= z1.free_values[i] + 1e-9;
        h.check("wired <= free at every depth (Z1)", below);
    }
    {
        const auto z2 =
            resistance_bracket(ExhaustionSpec::lattice(2), "0,0", "1,0", {2, 4, 8});
        bool wired_up = true, free_down = true, below = true;
        for (size_t i = 0; i + 1 < z2.wired_values.size(); ++i) {
            wired_up = wired_up && z2.wired_values[i] <= z2.wired_values[i + 1] + 1e-9;
            free_down = free_down && z2.free_values[i] >= z2.free_values[i + 1] - 1e-9;
        }
        for (size_t i = 0; i < z2.depths.size(); ++i)
            below = below && z2.wired_values[i] <= z2.free_values[i] + 1e-9;
        h.check("Z2 wired values non-decreasing", wired_up);
        h.check("Z2 free values non-increasing", free_down);
        h.check("wired <= free at every depth (Z2)", below);
    }

    // dipole difference law up to an additive constant
    {
        const Network net = random_connected_network(20, 77);
        const int x = 3, y = 11, o = 0;
        const VertexFunction vxy = dipole_solve(net, x, y);
        const VertexFunction diff = dipole_solve(net, x, o) - dipole_solve(net, y, o);
        const VertexFunction gap = vxy - diff;
        h.check("dipole difference law", gap.maxCoeff() - gap.minCoeff() < 1e-9,
                "oscillation " + std::to_string(gap.maxCoeff() - gap.minCoeff()));
    }

    // Royden split orthogonality and degenerate cases
    {
        const ExhaustionSpec gen = ExhaustionSpec::lattice(2);
        const Network trunc = gen.truncation(4);
        std::uint64_t state = 4242;
        VertexFunction u(trunc.size());
        for (int v = 0; v < trunc.size(); ++v) u[v] = 2.0 * uniform01(state) - 1.0;
        const RoydenSplit split = royden_split(gen, 4, u);
        h.check_close("royden orthogonality E(u) = E(fin) + E(harm)",
                      energy(trunc, u, u),
                      energy(trunc, split.fin, split.fin) +
                          energy(trunc, split.harm, split.harm),
                      1e-8);

        const RoydenSplit harm_only = royden_split(gen, 4, split.harm);
        h.check("projection of a harmonic part has no fin component",
                energy(trunc, harm_only.fin, harm_only.fin) < 1e-16);

        VertexFunction delta_o = VertexFunction::Zero(trunc.size());
        delta_o[trunc.origin()] = 1.0;
        const RoydenSplit interior = royden_split(gen, 4, delta_o);
        h.check("delta at an interior vertex is purely fin",
                energy(trunc, interior.harm, interior.harm) < 1e-16);
    }

    // sup-norm bound: holds on transient fixtures
    {
        const auto [sup_tree, rf_tree] = sup_norm_bound_check(ExhaustionSpec::tree(), 6, "01");
        h.check_le("sup |w_x| <= R^F(x,o) on the tree", sup_tree, rf_tree);
        const auto [sup_z3, rf_z3] = sup_norm_bound_check(ExhaustionSpec::lattice(3), 5, "1,0,0");
        h.check_le("sup |w_x| <= R^F(x,o) on Z3", sup_z3, rf_z3);
    }
}

void verify_spectral(Harness& h) {
    h.module = "spectral";
    std::uint64_t state = 555;

    struct Fixture {
        std::string name;
        Network net;
        int ground;
    };
    std::vector<Fixture> fixtures;
    fixtures.push_back({"K3", complete_graph(3), 2});
    fixtures.push_back({"random-30", random_connected_network(30, 21), 4});
    {
        WiredCollapse wc = ExhaustionSpec::lattice(2).wired_truncation(3);
        fixtures.push_back({"Z2-wired-3", wc.network, *wc.network.ground()});
    }

    for (const auto& fx : fixtures) {
        GroundedSystem gs(fx.net, fx.ground);
        const VertexFunction xi = random_grounded_function(gs, state);

        const DiscreteSpectralMeasure mu = spectral_measure(gs, xi);
        h.check_close("resolution of identity on " + fx.name, mu.total,
                      gs.reduce(xi).squaredNorm(), 1e-10);
        bool atoms_positive = true;
        for (const auto& a : mu.atoms) atoms_positive = atoms_positive && a.lambda > 0;
        h.check("atom locations strictly positive on " + fx.name, atoms_positive);

        double worst = 0.0;
        bool gap_bound = true;
        const SpectralDecomposition eig = dense_eig(gs.matrix());
        const double lambda_min = eig.eigenvalues[0];
        for (int x = 0; x < fx.net.size(); ++x)
            for (int y = x + 1; y < fx.net.size(); ++y) {
                if (x == fx.ground || y == fx.ground) continue;
                const double s = spectral_resistance(gs, x, y);
                const double g = green_resistance(gs, x, y);
                worst = std::max(worst, std::abs(s - g) / std::max(g, 1e-30));
                gap_bound = gap_bound && s <= gap_resistance_bound(lambda_min) + 1e-9;
            }
        h.check("spectral resistance matches the Green form on " + fx.name,
                worst < 1e-9, "max rel dev " + std::to_string(worst));
        h.check("R^W(x,y) <= 2/lambda_min on " + fx.name, gap_bound);

        const auto rows = moment_identity_check(gs, xi, 6);
        double worst_row = 0.0;
        for (const auto& r : rows) worst_row = std::max(worst_row, r.rel_dev);
        h.check("moment identity rows 0..6 on " + fx.name, worst_row < 1e-8,
                "max rel dev " + std::to_string(worst_row));

        h.check("radon-nikodym lambda d mu^F = d mu^l2 on " + fx.name,
                radon_nikodym_check(gs, xi) < 1e-9);

        const InverseSqrtEnergyReport inv = inverse_sqrt_energy(gs, xi);
        h.check_close("inverse sqrt energy: spectral vs edge sum on " + fx.name,
                      inv.spectral_sum, inv.energy_norm, 1e-9);
        h.check("scalar Bochner identity on " + fx.name, inv.bochner_max_rel_dev < 1e-6,
                "max rel dev " + std::to_string(inv.bochner_max_rel_dev));
    }

    // Dirichlet gap sequences are non-increasing
    for (const auto& [name, gen, depths] :
         std::vector<std::tuple<std::string, ExhaustionSpec, std::vector<int>>>{
             {"tree", ExhaustionSpec::tree(), {3, 5, 7}},
             {"Z1", ExhaustionSpec::lattice(1), {4, 8, 16}}}) {
        const DirichletGapSequence seq = dirichlet_gap(gen, depths, 200, 3);
        bool mono = true;
        for (size_t i = 0; i + 1 < seq.points.size(); ++i)
            mono = mono && seq.points[i].lambda_min >= seq.points[i + 1].lambda_min - 1e-9;
        h.check("dirichlet gap sequence non-increasing on " + name, mono);
    }

    // full-network operator-norm bound, literal form
    {
        const Network net = random_connected_network(16, 8);
        const Eigen::MatrixXd R = resistance_matrix(net);
        const SpectralDecomposition eig = dense_eig(laplacian_matrix(net));
        const double bound = 2.0 / eig.eigenvalues[eig.n - 1];
        bool ok = true;
        for (int x = 0; x < net.size(); ++x)
            for (int y = x + 1; y < net.size(); ++y) ok = ok && R(x, y) >= bound - 1e-12;
        h.check("R^F(x,y) >= 2/|Lap| on the full network", ok);
    }
}

void verify_lattice(Harness& h) {
    h.module = "lattice";

    // symbol zero set: S(t) = 0 iff t = 0, sampled
    {
        bool ok = true;
        for (int d : {1, 2, 3}) {
            std::vector<double> zero(d, 0.0);
            ok = ok && symbol(d, zero) == 0.0;
            std::uint64_t state = 17;
            for (int s = 0; s < 200; ++s) {
                std::vector<double> t(d);
                bool nonzero = false;
                for (int j = 0; j < d; ++j) {
                    t[j] = (2.0 * uniform01(state) - 1.0) * 3.14159;
                    nonzero = nonzero || std::abs(t[j]) > 1e-9;
                }
                if (nonzero) ok = ok && symbol(d, t) > 0.0;
            }
        }
        h.check("symbol vanishes only at t = 0 (sampled)", ok);
    }

    const TorusQuadrature q2 = TorusQuadrature::defaults(2);
    const TorusQuadrature q3 = TorusQuadrature::defaults(3);

    // symmetry, translation invariance, coordinate permutation / sign flips
    {
        const std::vector<int> a{0, 0}, b{1, 2}, c{3, -1}, e{4, 1};
        const double r_ab = lattice_resistance(2, a, b, q2).value;
        const double r_ba = lattice_resistance(2, b, a, q2).value;
        const double r_ce = lattice_resistance(2, c, e, q2).value;  // same difference
        h.check_close("lattice resistance symmetric", r_ab, r_ba, 1e-12);
        h.check_close("lattice resistance translation invariant", r_ab, r_ce, 1e-12);
        const std::vector<int> perm{2, 1}, flip{-1, 2};
        h.check_close("lattice resistance permutation invariant", r_ab,
                      lattice_resistance(2, a, perm, q2).value, 1e-12);
        h.check_close("lattice resistance sign-flip invariant", r_ab,
                      lattice_resistance(2, a, flip, q2).value, 1e-12);
    }

    // E(w_o) = w_o(0) and the Fourier-side Kronecker check
    {
        const std::vector<int> origin{0, 0, 0}, e1{1, 0, 0};
        const QuadratureValue energy_q = monopole_energy(3, q3);
        const QuadratureValue w0 = lattice_monopole_value(3, origin, q3);
        const QuadratureValue w1 = lattice_monopole_value(3, e1, q3);
        h.check_close("E(w_o) = w_o(0)", energy_q.value, w0.value, 1e-12);
        h.check("monopole quadrature converged", energy_q.converged);
        h.check_close("pointwise Lap w_o = delta_o at the origin (Fourier form)",
                      6.0 * (w0.value - w1.value), 1.0, 1e-9);

        // truncation oracle: wired monopole energies, Richardson in 1/k
        const MonopoleSolution m10 = monopole_solve(ExhaustionSpec::lattice(3), 10, "0,0,0");
        const MonopoleSolution m12 = monopole_solve(ExhaustionSpec::lattice(3), 12, "0,0,0");
        const double extrapolated =
            m12.energy + (m12.energy - m10.energy) * (1.0 / 12.0) / (1.0 / 10.0 - 1.0 / 12.0);
        h.check_close("quadrature matches extrapolated truncation energies",
                      energy_q.value, extrapolated, 0.02);
    }

    // adjacent values are exact by coordinate symmetry
    {
        const std::vector<int> o1{0}, x1{1};
        h.check_close("R(0,e1) = 1 in d=1",
                      lattice_resistance(1, o1, x1, TorusQuadrature::defaults(1)).value, 1.0,
                      1e-12);
        const std::vector<int> o2{0, 0}, x2{1, 0};
        h.check_close("R(0,e1) = 1/2 in d=2", lattice_resistance(2, o2, x2, q2).value, 0.5,
                      1e-12);
        const std::vector<int> o3{0, 0, 0}, x3{1, 0, 0};
        h.check_close("R(0,e1) = 1/3 in d=3", lattice_resistance(3, o3, x3, q3).value,
                      1.0 / 3.0, 1e-12);
    }

    // transience dichotomy diagnostics
    for (int d : {1, 2}) {
        const TransienceReport rep = transience_probe(d);
        bool growing = true;
        for (size_t i = 0; i + 1 < rep.level_values.size(); ++i)
            growing = growing && rep.level_values[i + 1] > rep.level_values[i];
        h.check("diagnostic integral grows for d=" + std::to_string(d),
                !rep.transient && growing);
    }
    for (int d : {3, 4}) {
        const TransienceReport rep = transience_probe(d);
        h.check("diagnostic integral is Cauchy for d=" + std::to_string(d),
                rep.transient && std::abs(rep.diffs.back()) < rep.cauchy_tolerance);
    }
}

void verify_walk(Harness& h) {
    h.module = "walk";

    // reversibility: c(x) p(x,y) = c(y) p(y,x)
    {
        const Network net = random_connected_network(18, 3);
        bool ok = true;
        for (int x = 0; x < net.size(); ++x)
            for (int y = 0; y < net.size(); ++y)
                ok = ok && std::abs(net_conductance(net, x) * transition_prob(net, x, y) -
                                    net_conductance(net, y) * transition_prob(net, y, x)) < 1e-12;
        h.check("detailed balance with respect to c", ok);
    }

    // walk-resistance identity, two independent code paths
    for (const auto& [name, net] : std::vector<std::pair<std::string, Network>>{
             {"P3", path_graph(3)},
             {"K3", complete_graph(3)},
             {"random-22", random_connected_network(22, 13)}}) {
        const int o = net.origin(), x = net.size() - 1;
        h.check_close("R = 1/(c(o) P[o->x]) on " + name, resistance_via_walk(net, o, x),
                      free_resistance(net, x, o), 1e-9);
    }

    // MC reproducibility and coverage
    {
        const Network p3 = path_graph(3);
        const WalkEstimate a = hitting_probability_mc(p3, 0, 2, 20000, 10000, 7);
        const WalkEstimate b = hitting_probability_mc(p3, 0, 2, 20000, 10000, 7);
        h.check("MC estimate is reproducible for a fixed seed",
                a.p_hat == b.p_hat && a.successes == b.successes);
        const double exact = hitting_probability_exact(p3, 0, 2);
        bool covered = true;
        for (std::uint64_t seed : {11ull, 12ull}) {
            const WalkEstimate e = hitting_probability_mc(p3, 0, 2, 20000, 10000, seed);
            covered = covered && std::abs(e.p_hat - exact) <= 3.0 * e.ci95;
        }
        h.check("exact value within 3 ci95 for fixed seeds", covered);
        h.check("episode accounting adds up",
                a.successes + a.failures + a.truncated == a.episodes);
    }

    // truncated fraction decays as the step cap grows
    {
        const Network net = lattice_ball(2, 2);
        const int o = net.origin(), x = net.vertex_by_label("2,0");
        std::int64_t prev = -1;
        bool decays = true;
        for (std::int64_t cap : {4, 40, 4000}) {
            const WalkEstimate e = hitting_probability_mc(net, o, x, 5000, cap, 99);
            if (prev >= 0) decays = decays && e.truncated <= prev;
            prev = e.truncated;
        }
        decays = decays && prev == 0;
        h.check("truncated episodes vanish as the cap grows", decays);
    }
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
    Harness h;
    h.filter = opts.module_filter;
    if (h.runs("network-core")) verify_network_core(h);
    if (h.runs("operators")) verify_operators(h, opts.inject_fault);
    if (h.runs("solvers")) verify_solvers(h);
    if (h.runs("resistance")) verify_resistance(h);
    if (h.runs("spectral")) verify_spectral(h);
    if (h.runs("lattice")) verify_lattice(h);
    if (h.runs("walk")) verify_walk(h);
    return h.results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace resnet
