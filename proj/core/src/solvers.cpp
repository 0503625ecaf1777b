#include "resnet/solvers.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace resnet {

CgResult cg_solve(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b,
                  const CgConfig& cfg) {
    if (A.rows() != A.cols()) throw NotSpd("matrix is not square");
    if (b.size() != A.rows()) throw LengthMismatch("cg_solve: rhs length");
    if (!(cfg.rel_tol > 0.0)) throw Error("cg_solve: rel_tol must be positive");
    const int n = static_cast<int>(A.rows());
    const int max_iter = cfg.max_iter > 0 ? cfg.max_iter : 10 * n;
    if (max_iter < 1) throw Error("cg_solve: max_iter must be >= 1");

    Eigen::VectorXd inv_diag;
    if (cfg.preconditioner == CgConfig::Preconditioner::jacobi) {
        inv_diag = A.diagonal();
        for (int i = 0; i < n; ++i) {
            if (!(inv_diag[i] > 0.0)) throw NotSpd("nonpositive diagonal entry");
            inv_diag[i] = 1.0 / inv_diag[i];
        }
    }
    auto precondition = [&](const Eigen::VectorXd& r) -> Eigen::VectorXd {
        if (inv_diag.size() > 0) return inv_diag.asDiagonal() * r;
        return r;
    };

    const double bnorm = b.norm();
    CgResult out;
    out.x = Eigen::VectorXd::Zero(n);
    if (bnorm == 0.0) return out;

    Eigen::VectorXd r = b;
    Eigen::VectorXd z = precondition(r);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    double best_res = r.norm() / bnorm;
    Eigen::VectorXd best_x = out.x;

    for (int it = 0; it < max_iter; ++it) {
        const Eigen::VectorXd Ap = A * p;
        const double curvature = p.dot(Ap);
        if (!(curvature > 0.0)) {
            out.x = best_x;
            out.status = CgStatus::not_spd;
            out.iterations = it;
            out.rel_residual = best_res;
            return out;
        }
        const double alpha = rz / curvature;
        out.x += alpha * p;
        r -= alpha * Ap;
        const double res = r.norm() / bnorm;
        if (res < best_res) {
            best_res = res;
            best_x = out.x;
        }
        out.iterations = it + 1;
        if (res <= cfg.rel_tol) {
            out.rel_residual = res;
            return out;
        }
        z = precondition(r);
        const double rz_next = r.dot(z);
        p = z + (rz_next / rz) * p;
        rz = rz_next;
    }
    out.x = best_x;
    out.status = CgStatus::max_iter_exceeded;
    out.rel_residual = best_res;
    return out;
}

SpectralDecomposition dense_eig(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols()) throw Error("dense_eig: matrix is not square");
    if (A.rows() > 4000)
        throw DimensionCap("dense_eig capped at 4000 (have " + std::to_string(A.rows()) + ")");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A);
    if (solver.info() != Eigen::Success) throw Error("dense_eig failed to converge");
    SpectralDecomposition out;
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
    out.n = static_cast<int>(A.rows());
    return out;
}

SpectralDecomposition dense_eig(const Eigen::SparseMatrix<double>& A) {
    return dense_eig(Eigen::MatrixXd(A));
}

namespace {

// deterministic unit start vector; does not depend on libstdc++'s
// distribution implementations
Eigen::VectorXd seeded_unit_vector(int n, std::uint64_t seed) {
    std::uint64_t s = seed;
    auto next = [&s]() {
        s += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    };
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i)
        v[i] = static_cast<double>(next() >> 11) * (1.0 / 4503599627370496.0) - 1.0;
    const double norm = v.norm();
    if (norm == 0.0) {
        v.setZero();
        v[0] = 1.0;
        return v;
    }
    return v / norm;
}

}  // namespace

LanczosResult lanczos_smallest(const Eigen::SparseMatrix<double>& A, int iters,
                               std::uint64_t seed) {
    if (A.rows() != A.cols()) throw NotSpd("matrix is not square");
    const int n = static_cast<int>(A.rows());
    if (iters < 10) throw Error("lanczos_smallest needs iters >= 10");
    const int steps = std::min(iters, n);

    LanczosResult out;
    double best = std::numeric_limits<double>::infinity();
    const double scale = Eigen::VectorXd(A.diagonal()).cwiseAbs().maxCoeff();
    const double breakdown_tol = 1e-14 * std::max(1.0, scale);

    for (int attempt = 0; attempt < 4; ++attempt) {
        Eigen::MatrixXd Q(n, steps);
        Eigen::VectorXd alpha(steps), beta(steps);
        Q.col(0) = seeded_unit_vector(n, seed + attempt);
        int k = 0;
        bool exhausted = false;
        for (; k < steps; ++k) {
            Eigen::VectorXd w = A * Q.col(k);
            alpha[k] = Q.col(k).dot(w);
            w -= alpha[k] * Q.col(k);
            if (k > 0) w -= beta[k - 1] * Q.col(k - 1);
            // full reorthogonalization, two classical Gram-Schmidt sweeps
            for (int sweep = 0; sweep < 2; ++sweep)
                w -= Q.leftCols(k + 1) * (Q.leftCols(k + 1).transpose() * w);
            const double norm = w.norm();
            if (k + 1 == steps) break;
            if (norm <= breakdown_tol) {
                exhausted = (k + 1 >= n);
                break;
            }
            beta[k] = norm;
            Q.col(k + 1) = w / norm;
        }
        const int dim = std::min(k + 1, steps);
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(dim, dim);
        for (int i = 0; i < dim; ++i) {
            T(i, i) = alpha[i];
            if (i + 1 < dim) T(i, i + 1) = T(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        best = std::min(best, es.eigenvalues()[0]);
        out.value = best;
        out.iterations = dim;
        if (dim == steps || exhausted || dim >= n) return out;
        // invariant subspace hit before the Krylov space was exhausted;
        // restart with a fresh start vector, keeping the best Ritz value
        ++out.restarts;
    }
    return out;
}

}  // namespace resnet
