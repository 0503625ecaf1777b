#pragma once

#include <iosfwd>
#include <vector>

#include "resnet/operators.hpp"
#include "resnet/solvers.hpp"

namespace resnet {

struct SpectralAtom {
    double lambda = 0.0;
    double mass = 0.0;
};

/// Discrete spectral measure of a vector against a grounded system: atoms
/// (lambda_i, |<phi_i, xi>|^2). Total mass is |xi|_2^2 (resolution of the
/// identity); all atom locations are strictly positive.
struct DiscreteSpectralMeasure {
    std::vector<SpectralAtom> atoms;
    double total = 0.0;

    /// CSV: lambda,mass
    void write_csv(std::ostream& os) const;
};

/// xi is full-length and must vanish at the ground.
DiscreteSpectralMeasure spectral_measure(const GroundedSystem& gs, const VertexFunction& xi);

struct MomentRow {
    int n = 0;
    double lhs = 0.0;      // <Phi xi, Lap^{n+1} Phi xi>_E via the edge sum
    double rhs = 0.0;      // xi' L^n xi via sparse matvec
    double rel_dev = 0.0;
};

/// Moment identity <Phi xi, Lap^{n+1} Phi xi>_E = <xi, Lap^n xi>_2 for
/// n = 0..n_max (n_max <= 8; conditioning).
std::vector<MomentRow> moment_identity_check(const GroundedSystem& gs,
                                             const VertexFunction& xi, int n_max);

/// Verifies lambda * mass^F = mass^{l2} atom by atom, where the
/// energy-geometry masses of Phi(xi) are measured with the edge-sum energy
/// against the energy-normalized eigenbasis. Returns the max relative
/// deviation over atoms.
double radon_nikodym_check(const GroundedSystem& gs, const VertexFunction& xi);

/// R^W via the spectral resolution: sum_i (1/lambda_i) |<phi_i, d_x - d_y>|^2.
double spectral_resistance(const GroundedSystem& gs, int x, int y);

/// Same quantity through the Green matrix: (d_x-d_y)' M (d_x-d_y).
/// Kept as an independent code path against spectral_resistance.
double green_resistance(const GroundedSystem& gs, int x, int y);

struct GapPoint {
    int depth = 0;
    double lambda_min = 0.0;
};

struct DirichletGapSequence {
    std::vector<GapPoint> points;
    /// Every entry is an upper bound for gamma = inf spec of the infinite
    /// Laplacian; the sequence is non-increasing in depth.
    void write_csv(std::ostream& os) const;
};

DirichletGapSequence dirichlet_gap(const ExhaustionSpec& gen, const std::vector<int>& depths,
                                   int lanczos_iters = 400, std::uint64_t seed = 1);

/// Wired-resistance bound 2/gamma from a spectral gap gamma > 0.
double gap_resistance_bound(double gamma);

struct InverseSqrtEnergyReport {
    double spectral_sum = 0.0;    // sum_i lambda_i^{-1} |<phi_i, xi>|^2
    double energy_norm = 0.0;     // E(Phi xi, Phi xi) via the edge sum
    double bochner_max_rel_dev = 0.0;
};

/// |Phi xi|_E^2 = |Lap^{-1/2} xi|_2^2 at finite scale, plus a quadrature
/// validation of the scalar identity
/// pi^{-1/2} int_0^inf t^{-1/2} e^{-t lambda} dt = lambda^{-1/2}
/// at three sampled eigenvalues.
InverseSqrtEnergyReport inverse_sqrt_energy(const GroundedSystem& gs, const VertexFunction& xi);

/// Quadrature of the scalar Bochner integral above.
double bochner_inverse_sqrt(double lambda);

}  // namespace resnet
