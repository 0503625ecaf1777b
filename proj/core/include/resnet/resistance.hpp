#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "resnet/network.hpp"
#include "resnet/operators.hpp"

namespace resnet {

/// Dipole: v with Lv = delta_x - delta_y exactly, normalized v(y) = 0.
/// Solved by grounding at y.
VertexFunction dipole_solve(const Network& net, int x, int y);

/// R^F(x,y) = E(v) for the dipole v between x and y; equals v(x) - v(y).
double free_resistance(const Network& net, int x, int y);

/// Effective resistance between the vertices labelled x and y on the
/// wired truncation at depth k (omega participates as an ordinary vertex).
double wired_resistance_at_depth(const ExhaustionSpec& gen, int k,
                                 const std::string& x, const std::string& y);

/// Per-depth (wired lower, free upper) values converging to (R^W, R^F).
struct ResistanceBracket {
    std::string x, y;
    std::vector<int> depths;
    std::vector<double> wired_values;
    std::vector<double> free_values;
    /// (free - wired)/free < gap_tolerance at the final depth.
    bool converged = false;
    double gap_tolerance = 1e-3;

    double final_gap() const;
    /// CSV: depth,wired,free,gap
    void write_csv(std::ostream& os) const;
};

ResistanceBracket resistance_bracket(const ExhaustionSpec& gen,
                                     const std::string& x, const std::string& y,
                                     const std::vector<int>& depths,
                                     double gap_tolerance = 1e-3);

/// Monopole on a wired truncation: Lw = delta_x off the ground, w = 0 at
/// omega, energy E(w) = w(x). When the truncation has no boundary (finite
/// family exhausted) the solve grounds at the origin instead, which is the
/// recurrent-limit degeneration of the monopole into a dipole against o.
struct MonopoleSolution {
    Network network;
    int center = 0;       // id of x within `network`
    VertexFunction values;
    double energy = 0.0;
    bool grounded_at_origin = false;
};

MonopoleSolution monopole_solve(const ExhaustionSpec& gen, int k, const std::string& x);

/// Finite-scale Royden split of u on truncation k: harm agrees with u on
/// the depth-k boundary and is harmonic inside; fin = u - harm. The parts
/// are E-orthogonal, so E(u) = E(fin) + E(harm).
struct RoydenSplit {
    VertexFunction fin;
    VertexFunction harm;
    std::vector<int> boundary;
};

RoydenSplit royden_split(const ExhaustionSpec& gen, int k, const VertexFunction& u);

/// Split against an explicit boundary set on a finite network.
RoydenSplit royden_split(const Network& net, const std::vector<int>& boundary,
                         const VertexFunction& u);

/// Returns (sup|w_x|, R^F(x,o)) at depth k. The bound sup <= R^F is the
/// finite shadow of a transient-network inequality; recurrent families
/// violate it at large depth (the monopole sup diverges).
std::pair<double, double> sup_norm_bound_check(const ExhaustionSpec& gen, int k,
                                               const std::string& x);

}  // namespace resnet
