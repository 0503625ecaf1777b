#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstdint>

#include "resnet/errors.hpp"

namespace resnet {

struct CgConfig {
    double rel_tol = 1e-10;
    /// 0 means the default 10n.
    int max_iter = 0;
    enum class Preconditioner { none, jacobi };
    Preconditioner preconditioner = Preconditioner::jacobi;
};

enum class CgStatus { converged, max_iter_exceeded, not_spd };

struct CgResult {
    Eigen::VectorXd x;       // best iterate
    CgStatus status = CgStatus::converged;
    int iterations = 0;
    double rel_residual = 0.0;

    bool ok() const { return status == CgStatus::converged; }
};

/// Preconditioned conjugate gradients for SPD systems. Non-SPD input is
/// detected through nonpositive curvature p'Ap <= 0 and reported in the
/// status; the best iterate so far is always returned.
CgResult cg_solve(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b,
                  const CgConfig& cfg = {});

/// Eigenvalues ascending, eigenvectors orthonormal in the columns.
struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
    int n = 0;
};

/// Dense symmetric eigendecomposition; throws DimensionCap for n > 4000.
SpectralDecomposition dense_eig(const Eigen::MatrixXd& A);
SpectralDecomposition dense_eig(const Eigen::SparseMatrix<double>& A);

struct LanczosResult {
    double value = 0.0;      // estimate of lambda_min, >= lambda_min
    int iterations = 0;
    int restarts = 0;        // breakdowns recovered with a fresh start vector
};

/// Smallest eigenvalue of an SPD matrix by Lanczos with full
/// reorthogonalization. Deterministic for a fixed seed.
LanczosResult lanczos_smallest(const Eigen::SparseMatrix<double>& A, int iters,
                               std::uint64_t seed);

}  // namespace resnet
