#include "resnet/resistance.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "resnet/solvers.hpp"

namespace resnet {

VertexFunction dipole_solve(const Network& net, int x, int y) {
    net.check_vertex(x);
    net.check_vertex(y);
    if (x == y) throw SameVertex("dipole endpoints coincide");
    GroundedSystem gs(net, y);
    return gs.monopole(x);
}

double free_resistance(const Network& net, int x, int y) {
    const VertexFunction v = dipole_solve(net, x, y);
    return energy(net, v, v);
}

namespace {

int resolve_label(const Network& net, const std::string& label) {
    if (auto id = net.find_label(label)) return *id;
    throw VertexOutsideTruncation("label '" + label + "' is not inside the truncation");
}

}  // namespace

double wired_resistance_at_depth(const ExhaustionSpec& gen, int k,
                                 const std::string& x, const std::string& y) {
    const WiredCollapse wc = gen.wired_truncation(k);
    const Network& net = wc.network;
    return free_resistance(net, resolve_label(net, x), resolve_label(net, y));
}

double ResistanceBracket::final_gap() const {
    if (free_values.empty()) return 0.0;
    return free_values.back() - wired_values.back();
}

void ResistanceBracket::write_csv(std::ostream& os) const {
    const auto saved = os.precision(12);
    os << "depth,wired,free,gap\n";
    for (size_t i = 0; i < depths.size(); ++i)
        os << depths[i] << ',' << wired_values[i] << ',' << free_values[i] << ','
           << free_values[i] - wired_values[i] << '\n';
    os.precision(saved);
}

ResistanceBracket resistance_bracket(const ExhaustionSpec& gen,
                                     const std::string& x, const std::string& y,
                                     const std::vector<int>& depths,
                                     double gap_tolerance) {
    if (depths.empty()) throw Error("resistance_bracket needs at least one depth");
    if (!std::is_sorted(depths.begin(), depths.end()))
        throw Error("depth schedule must be increasing");

    ResistanceBracket out;
    out.x = x;
    out.y = y;
    out.depths = depths;
    out.gap_tolerance = gap_tolerance;
    for (int k : depths) {
        const Network trunc = gen.truncation(k);
        out.free_values.push_back(
            free_resistance(trunc, resolve_label(trunc, x), resolve_label(trunc, y)));
        out.wired_values.push_back(wired_resistance_at_depth(gen, k, x, y));
    }
    const double f = out.free_values.back();
    out.converged = f > 0.0 && (f - out.wired_values.back()) / f < gap_tolerance;
    return out;
}

MonopoleSolution monopole_solve(const ExhaustionSpec& gen, int k, const std::string& x) {
    WiredCollapse wc = gen.wired_truncation(k);
    MonopoleSolution out{std::move(wc.network), 0, {}, 0.0, wc.empty_boundary};
    out.center = resolve_label(out.network, x);
    const int ground = wc.empty_boundary ? out.network.origin() : *out.network.ground();
    if (wc.empty_boundary && out.center == ground)
        throw SameVertex("monopole at the origin of an exhausted finite network");
    GroundedSystem gs(out.network, ground);
    out.values = gs.monopole(out.center);
    out.energy = energy(out.network, out.values, out.values);
    return out;
}

RoydenSplit royden_split(const Network& net, const std::vector<int>& boundary,
                         const VertexFunction& u) {
    if (u.size() != net.size()) throw LengthMismatch("royden_split: function length");
    RoydenSplit out;
    out.boundary = boundary;
    if (boundary.empty()) {
        // no boundary: Harm reduces to the constants, which are 0 in H_E
        out.harm = VertexFunction::Zero(net.size());
        out.fin = u;
        return out;
    }

    std::vector<char> is_boundary(net.size(), 0);
    for (int v : boundary) {
        net.check_vertex(v);
        is_boundary[v] = 1;
    }
    std::vector<int> interior;
    for (int v = 0; v < net.size(); ++v)
        if (!is_boundary[v]) interior.push_back(v);

    VertexFunction harm = u;
    if (!interior.empty()) {
        // Dirichlet problem: L_II h_I = -L_IB u_B
        std::vector<int> idx(net.size(), -1);
        for (size_t i = 0; i < interior.size(); ++i) idx[interior[i]] = static_cast<int>(i);
        const int m = static_cast<int>(interior.size());
        std::vector<Eigen::Triplet<double>> trips;
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
        for (const auto& e : net.edges()) {
            const int iu = idx[e.u], iv = idx[e.v];
            if (iu >= 0) trips.emplace_back(iu, iu, e.conductance);
            if (iv >= 0) trips.emplace_back(iv, iv, e.conductance);
            if (iu >= 0 && iv >= 0) {
                trips.emplace_back(iu, iv, -e.conductance);
                trips.emplace_back(iv, iu, -e.conductance);
            } else if (iu >= 0) {
                rhs[iu] += e.conductance * u[e.v];
            } else if (iv >= 0) {
                rhs[iv] += e.conductance * u[e.u];
            }
        }
        SparseMatrix L_II(m, m);
        L_II.setFromTriplets(trips.begin(), trips.end());
        CgConfig cfg;
        cfg.rel_tol = 1e-12;
        cfg.max_iter = 20 * m;
        const CgResult res = cg_solve(L_II, rhs, cfg);
        if (!res.ok() && res.rel_residual > 1e-8)
            throw MaxIterExceeded("harmonic extension solve did not converge");
        for (int i = 0; i < m; ++i) harm[interior[i]] = res.x[i];
    }
    out.harm = std::move(harm);
    out.fin = u - out.harm;
    return out;
}

namespace {

/// Vertices of truncation k with a neighbour outside, detected by comparing
/// degrees against truncation k+1 (label-aligned). Generator-independent.
std::vector<int> truncation_boundary(const ExhaustionSpec& gen, int k, const Network& inner) {
    const Network outer = gen.truncation(k + 1);
    std::vector<int> boundary;
    for (int v = 0; v < inner.size(); ++v) {
        const int w = outer.vertex_by_label(inner.label(v));
        if (outer.degree(w) > inner.degree(v)) boundary.push_back(v);
    }
    return boundary;
}

}  // namespace

RoydenSplit royden_split(const ExhaustionSpec& gen, int k, const VertexFunction& u) {
    const Network inner = gen.truncation(k);
    return royden_split(inner, truncation_boundary(gen, k, inner), u);
}

std::pair<double, double> sup_norm_bound_check(const ExhaustionSpec& gen, int k,
                                               const std::string& x) {
    const MonopoleSolution mono = monopole_solve(gen, k, x);
    const double sup = mono.values.cwiseAbs().maxCoeff();

    const Network trunc = gen.truncation(k);
    const int xid = resolve_label(trunc, x);
    if (xid == trunc.origin()) throw SameVertex("x must differ from the origin");
    const double rf = free_resistance(trunc, xid, trunc.origin());
    return {sup, rf};
}

}  // namespace resnet
