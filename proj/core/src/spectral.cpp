#include "resnet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "resnet/resistance.hpp"

namespace resnet {

namespace {

/// Relative atom cutoff: keeps exact zeros out of the measure without
/// losing any mass the resolution-of-identity check could see.
constexpr double kAtomCutoff = 1e-24;

SpectralDecomposition eig_of(const GroundedSystem& gs) { return dense_eig(gs.matrix()); }

}  // namespace

void DiscreteSpectralMeasure::write_csv(std::ostream& os) const {
    const auto saved = os.precision(12);
    os << "lambda,mass\n";
    for (const auto& a : atoms) os << a.lambda << ',' << a.mass << '\n';
    os.precision(saved);
}

DiscreteSpectralMeasure spectral_measure(const GroundedSystem& gs, const VertexFunction& xi) {
    const Eigen::VectorXd xr = gs.reduce(xi);
    const SpectralDecomposition eig = eig_of(gs);
    const Eigen::VectorXd coeff = eig.eigenvectors.transpose() * xr;
    DiscreteSpectralMeasure out;
    double total = 0.0;
    for (int i = 0; i < eig.n; ++i) total += coeff[i] * coeff[i];
    for (int i = 0; i < eig.n; ++i) {
        const double mass = coeff[i] * coeff[i];
        if (mass > kAtomCutoff * total)
            out.atoms.push_back({eig.eigenvalues[i], mass});
    }
    out.total = total;
    return out;
}

std::vector<MomentRow> moment_identity_check(const GroundedSystem& gs,
                                             const VertexFunction& xi, int n_max) {
    if (n_max < 0 || n_max > 8)
        throw Error("moment_identity_check: n_max must be in 0..8 (conditioning)");
    const VertexFunction w = gs.phi(xi);

    std::vector<MomentRow> rows;
    VertexFunction lap_power_w = w;           // (Dirichlet Lap)^{n+1} w, built up
    Eigen::VectorXd lap_power_xi = gs.reduce(xi);  // L^n xi
    for (int n = 0; n <= n_max; ++n) {
        lap_power_w = gs.apply_grounded(lap_power_w);
        if (n > 0) lap_power_xi = gs.matrix() * lap_power_xi;
        MomentRow row;
        row.n = n;
        row.lhs = energy(gs.network(), w, lap_power_w);
        row.rhs = gs.reduce(xi).dot(lap_power_xi);
        const double scale = std::max(std::abs(row.lhs), std::abs(row.rhs));
        row.rel_dev = scale > 0.0 ? std::abs(row.lhs - row.rhs) / scale : 0.0;
        rows.push_back(row);
    }
    return rows;
}

double radon_nikodym_check(const GroundedSystem& gs, const VertexFunction& xi) {
    const Eigen::VectorXd xr = gs.reduce(xi);
    const SpectralDecomposition eig = eig_of(gs);
    const VertexFunction w = gs.phi(xi);

    // energy-geometry masses of Phi(xi), measured with the edge-sum energy
    // against psi_i = phi_i / sqrt(lambda_i) (E-orthonormal). Atoms below
    // a ppm of the total mass are held against that floor instead of their
    // own size, which is numerical dust.
    double max_dev = 0.0;
    const double total = xr.squaredNorm();
    for (int i = 0; i < eig.n; ++i) {
        const double lambda = eig.eigenvalues[i];
        const VertexFunction psi = gs.extend(eig.eigenvectors.col(i) / std::sqrt(lambda));
        const double a = energy(gs.network(), psi, w);
        const double mass_f = a * a;
        const double mass_l2 = std::pow(eig.eigenvectors.col(i).dot(xr), 2);
        const double dev = std::abs(lambda * mass_f - mass_l2) /
                           std::max(mass_l2, 1e-6 * total);
        max_dev = std::max(max_dev, dev);
    }
    return max_dev;
}

double spectral_resistance(const GroundedSystem& gs, int x, int y) {
    gs.network().check_vertex(x);
    gs.network().check_vertex(y);
    if (x == y) return 0.0;
    VertexFunction xi = VertexFunction::Zero(gs.network().size());
    xi[x] = 1.0;
    xi[y] = -1.0;
    const Eigen::VectorXd xr = gs.reduce(xi);
    const SpectralDecomposition eig = eig_of(gs);
    double sum = 0.0;
    for (int i = 0; i < eig.n; ++i) {
        const double c = eig.eigenvectors.col(i).dot(xr);
        sum += c * c / eig.eigenvalues[i];
    }
    return sum;
}

double green_resistance(const GroundedSystem& gs, int x, int y) {
    if (x == y) return 0.0;
    VertexFunction xi = VertexFunction::Zero(gs.network().size());
    xi[x] = 1.0;
    xi[y] = -1.0;
    const Eigen::VectorXd xr = gs.reduce(xi);
    return xr.dot(gs.solve_reduced(xr));
}

void DirichletGapSequence::write_csv(std::ostream& os) const {
    const auto saved = os.precision(12);
    os << "depth,lambda_min\n";
    for (const auto& p : points) os << p.depth << ',' << p.lambda_min << '\n';
    os.precision(saved);
}

DirichletGapSequence dirichlet_gap(const ExhaustionSpec& gen, const std::vector<int>& depths,
                                   int lanczos_iters, std::uint64_t seed) {
    if (!std::is_sorted(depths.begin(), depths.end()))
        throw Error("depth schedule must be increasing");
    DirichletGapSequence out;
    for (int k : depths) {
        const WiredCollapse wc = gen.wired_truncation(k);
        if (wc.empty_boundary)
            throw Error("dirichlet_gap: truncation has no boundary at depth " +
                        std::to_string(k));
        GroundedSystem gs(wc.network);
        const LanczosResult lr = lanczos_smallest(gs.matrix(), lanczos_iters, seed);
        out.points.push_back({k, lr.value});
    }
    return out;
}

double gap_resistance_bound(double gamma) {
    if (!(gamma > 0.0)) throw NonpositiveGap("spectral gap must be positive");
    return 2.0 / gamma;
}

double bochner_inverse_sqrt(double lambda) {
    if (!(lambda > 0.0)) throw Error("bochner_inverse_sqrt needs lambda > 0");
    // t = s^2 turns pi^{-1/2} int t^{-1/2} e^{-t lambda} dt into
    // 2 pi^{-1/2} int_0^inf e^{-lambda s^2} ds; composite Simpson on a
    // truncated range (tail below 1e-300 at s_max)
    const double s_max = 27.0 / std::sqrt(lambda);
    const int n = 4096;  // even
    const double h = s_max / n;
    auto f = [lambda](double s) { return std::exp(-lambda * s * s); };
    double acc = f(0.0) + f(s_max);
    for (int i = 1; i < n; ++i) acc += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return 2.0 / std::sqrt(std::numbers::pi) * acc * h / 3.0;
}

InverseSqrtEnergyReport inverse_sqrt_energy(const GroundedSystem& gs, const VertexFunction& xi) {
    const Eigen::VectorXd xr = gs.reduce(xi);
    const SpectralDecomposition eig = eig_of(gs);
    InverseSqrtEnergyReport out;
    for (int i = 0; i < eig.n; ++i) {
        const double c = eig.eigenvectors.col(i).dot(xr);
        out.spectral_sum += c * c / eig.eigenvalues[i];
    }
    const VertexFunction w = gs.phi(xi);
    out.energy_norm = energy(gs.network(), w, w);

    // scalar identity at three sampled eigenvalues
    const std::vector<int> picks = {0, eig.n / 2, eig.n - 1};
    for (int i : picks) {
        const double lambda = eig.eigenvalues[i];
        const double quad = bochner_inverse_sqrt(lambda);
        const double exact = 1.0 / std::sqrt(lambda);
        out.bochner_max_rel_dev =
            std::max(out.bochner_max_rel_dev, std::abs(quad - exact) / exact);
    }
    return out;
}

}  // namespace resnet
