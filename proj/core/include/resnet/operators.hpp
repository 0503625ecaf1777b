#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>

#include "resnet/network.hpp"

namespace resnet {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Full Laplacian: diag(x) = c(x), offdiag(x,y) = -c_xy. Row sums vanish.
SparseMatrix laplacian_matrix(const Network& net);

/// (Lu)(x) = sum_{y~x} c_xy (u(x) - u(y)), evaluated at every vertex.
VertexFunction apply_laplacian(const Network& net, const VertexFunction& u);

/// Dirichlet energy form E(u,v) = 1/2 sum_{x,y} c_xy (u(x)-u(y))(v(x)-v(y)),
/// accumulated in one pass over the undirected edge list.
double energy(const Network& net, const VertexFunction& u, const VertexFunction& v);
inline double energy(const Network& net, const VertexFunction& u) { return energy(net, u, u); }

/// Returns (E(u,v), <u, Lv>_2); the two agree on ground-free networks.
std::pair<double, double> summation_by_parts_check(const Network& net,
                                                   const VertexFunction& u,
                                                   const VertexFunction& v);

/// The Laplacian restricted to non-ground vertices. The reduced matrix is
/// symmetric positive definite; its inverse is the Green/Gram matrix M with
/// M_xy = <w_x, w_y>_E for the grounded monopoles w_x.
///
/// The dense inverse is materialized lazily for reduced dimension <= 2000;
/// larger systems answer solves column-by-column through conjugate
/// gradients. Immutable and shareable once built.
class GroundedSystem {
public:
    /// Uses net.ground(); throws SingularMatrix when the network has none.
    explicit GroundedSystem(const Network& net);
    GroundedSystem(const Network& net, int ground);

    const Network& network() const { return *net_; }
    int ground() const { return ground_; }
    int dim() const { return static_cast<int>(matrix_.rows()); }

    int to_reduced(int vertex) const;
    int to_full(int index) const;

    const SparseMatrix& matrix() const { return matrix_; }

    /// Dense M = matrix()^{-1}; throws DimensionCap above the dense limit.
    const Eigen::MatrixXd& green() const;
    bool green_materialized() const;

    static constexpr int kDenseGreenCap = 2000;

    /// Solves matrix() * x = rhs (reduced coordinates) via the dense factor
    /// or CG, at relative tolerance ~1e-12.
    Eigen::VectorXd solve_reduced(const Eigen::VectorXd& rhs) const;

    /// Reduces a full-length function that vanishes at the ground.
    Eigen::VectorXd reduce(const VertexFunction& full) const;
    VertexFunction extend(const Eigen::VectorXd& reduced) const;

    /// Dirichlet application: apply the full Laplacian, zero at the ground.
    /// This is the finite-scale energy-space Laplacian.
    VertexFunction apply_grounded(const VertexFunction& u) const;

    /// Phi(xi) = sum_x xi(x) w_x = M xi, extended by 0 at the ground.
    /// xi is full-length and must vanish at the ground.
    VertexFunction phi(const VertexFunction& xi) const;

    /// Grounded monopole w_x: Lw = delta_x off the ground, w(ground) = 0.
    VertexFunction monopole(int x) const;

private:
    void init();
    std::shared_ptr<const Network> net_;
    int ground_;
    std::vector<int> to_reduced_;
    std::vector<int> to_full_;
    SparseMatrix matrix_;
    mutable std::optional<Eigen::MatrixXd> green_;
    mutable std::optional<Eigen::LLT<Eigen::MatrixXd>> llt_;
    mutable std::mutex cache_mutex_;
};

/// M = inverse of the grounded Laplacian, M_xy = <w_x, w_y>_E.
Eigen::MatrixXd gram_matrix(const GroundedSystem& gs);

VertexFunction phi_map(const GroundedSystem& gs, const VertexFunction& xi);

/// MatrixMarket coordinate text, for debugging.
void write_matrix_market(const SparseMatrix& m, std::ostream& os);

}  // namespace resnet
