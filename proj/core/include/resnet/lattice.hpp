#pragma once

#include <span>
#include <string>
#include <vector>

#include "resnet/errors.hpp"

namespace resnet {

/// Shifted-midpoint tensor grid over (-pi, pi]^d. Nodes sit at
/// (j + 1/2) * 2pi/m - pi with m even, so no node coincides with the
/// symbol's zero at t = 0. The innermost cells around the origin are
/// subdivided dyadically a few extra levels, which is where all the
/// integrands lose smoothness.
struct TorusQuadrature {
    int dimension = 1;
    /// Coarsest grid; rounded up to even. 0 picks a per-dimension default.
    int points_per_axis = 0;
    /// Number of refinement levels (each doubles the grid).
    int refinements = 3;
    /// Converged when the last two levels differ by less than this.
    double tolerance = 1e-3;
    int origin_refine_levels = 3;
    /// Cells with |center|_inf <= shells * h get the dyadic treatment.
    int origin_refine_shells = 2;

    static TorusQuadrature defaults(int d);
    int base_grid() const;
};

struct QuadratureValue {
    double value = 0.0;            // finest level
    std::vector<int> grids;        // points per axis at each level
    std::vector<double> level_values;
    bool converged = false;
    double tolerance = 0.0;
};

/// Fourier symbol of the lattice Laplacian: S(t) = 4 sum_k sin^2(t_k / 2).
double symbol(int d, std::span<const double> t);

/// v_x(y) = (2pi)^-d int (cos((x-y).t) - cos(y.t)) / S(t) dt.
/// This is the representative that vanishes at infinity on transient
/// lattices (antisymmetric between o and x: v_x(0) = -v_x(x)), not the
/// v_x(o) = 0 normalization.
QuadratureValue lattice_dipole_value(int d, std::span<const int> x, std::span<const int> y,
                                     const TorusQuadrature& q);

/// R(x,y) = (2pi)^-d int 4 sin^2((x-y).t/2) / S(t) dt. The factor 4 comes
/// from the 2 - 2cos((x-y).t) = 4 sin^2 step of the derivation; it makes
/// the d=1 adjacent value exactly 1 and the d=2 value exactly 1/2.
QuadratureValue lattice_resistance(int d, std::span<const int> x, std::span<const int> y,
                                   const TorusQuadrature& q);

/// w_o(x) = (2pi)^-d int cos(x.t) / S(t) dt; throws RecurrentLattice for
/// d <= 2, where 1/S is not integrable.
QuadratureValue lattice_monopole_value(int d, std::span<const int> x, const TorusQuadrature& q);

/// E(w_o) = (2pi)^-d int dt / S(t) = w_o(0).
QuadratureValue monopole_energy(int d, const TorusQuadrature& q);

struct TransienceReport {
    int dimension = 0;
    bool transient = false;
    std::vector<int> grids;
    std::vector<double> level_values;   // quadrature of (2pi)^-d int 1/S
    std::vector<double> diffs;          // consecutive level differences
    double cauchy_tolerance = 0.0;
};

/// Transient iff d >= 3: the diagnostic integral converges across
/// refinement levels for d >= 3 and grows without bound for d <= 2.
TransienceReport transience_probe(int d, const TorusQuadrature& q);
TransienceReport transience_probe(int d);

enum class LatticeFunctionKind { dipole, monopole };

struct Ell2Report {
    LatticeFunctionKind kind = LatticeFunctionKind::dipole;
    int dimension = 0;
    std::vector<int> radii;
    std::vector<double> partial_sums;   // sum_{|y|_inf <= r} f(y)^2
    double slope = 0.0;                 // d log(sum) / d log(r), last segment
    bool bounded_verdict = false;
    double slope_threshold = 0.0;
};

/// Growth probe for square-summability of the dipole v_{e1} (l2 iff d >= 3)
/// and the monopole w_o (l2 iff d >= 5). Dipole probes run for any d;
/// monopole probes require d >= 3.
Ell2Report ell2_membership_probe(LatticeFunctionKind kind, int d,
                                 const std::vector<int>& radii, const TorusQuadrature& q);

struct FourierSpectralPair {
    double spectral_value = 0.0;   // wired truncation, spectral resolution
    double quadrature_value = 0.0; // torus integral
    int depth = 0;
};

/// Left side of the measure-conversion identity via spectral_resistance on
/// the wired truncation at `depth`, right side via lattice_resistance.
FourierSpectralPair fourier_spectral_consistency(int d, std::span<const int> x,
                                                 std::span<const int> y, int depth,
                                                 const TorusQuadrature& q);

std::string lattice_label(std::span<const int> x);
std::vector<int> parse_lattice_point(const std::string& s, int d);

}  // namespace resnet
