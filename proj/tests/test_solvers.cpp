#include <doctest.h>

#include <Eigen/Dense>

#include "resnet/network.hpp"
#include "resnet/operators.hpp"
#include "resnet/solvers.hpp"

using namespace resnet;

namespace {

Eigen::SparseMatrix<double> sparse_from(const Eigen::MatrixXd& A) {
    return A.sparseView();
}

}  // namespace

TEST_CASE("cg solves the 2x2 grounded system") {
    Eigen::MatrixXd A(2, 2);
    A << 2, -1, -1, 2;
    Eigen::VectorXd b(2);
    b << 1, 0;
    const CgResult res = cg_solve(sparse_from(A), b);
    REQUIRE(res.ok());
    CHECK(res.x[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(res.x[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("cg on the identity returns b") {
    Eigen::MatrixXd I = Eigen::MatrixXd::Identity(5, 5);
    Eigen::VectorXd b(5);
    b << 3, -1, 2, 0.5, -4;
    const CgResult res = cg_solve(sparse_from(I), b);
    REQUIRE(res.ok());
    CHECK((res.x - b).norm() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(res.iterations <= 2);
}

TEST_CASE("cg flags singular input instead of returning silently") {
    // ungrounded Laplacian with b = delta_0: b is not in the range
    const SparseMatrix L = laplacian_matrix(path_graph(2));
    Eigen::VectorXd b(2);
    b << 1, 0;
    const CgResult res = cg_solve(L, b);
    CHECK(!res.ok());
    CHECK((res.status == CgStatus::not_spd || res.status == CgStatus::max_iter_exceeded));
}

TEST_CASE("cg preconditioner choices agree") {
    const Network net = lattice_ball(2, 3);
    GroundedSystem gs(net, 0);
    Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(gs.dim(), -1.0, 1.0);
    CgConfig none;
    none.preconditioner = CgConfig::Preconditioner::none;
    const CgResult a = cg_solve(gs.matrix(), b, none);
    const CgResult j = cg_solve(gs.matrix(), b);
    REQUIRE(a.ok());
    REQUIRE(j.ok());
    CHECK((a.x - j.x).norm() <= 1e-8 * j.x.norm());
}

TEST_CASE("dense_eig on closed-form spectra") {
    const SpectralDecomposition p2 = dense_eig(laplacian_matrix(path_graph(2)));
    CHECK(p2.eigenvalues[0] == doctest::Approx(0.0));
    CHECK(p2.eigenvalues[1] == doctest::Approx(2.0));

    GroundedSystem k3(complete_graph(3), 2);
    const SpectralDecomposition gk3 = dense_eig(k3.matrix());
    CHECK(gk3.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(gk3.eigenvalues[1] == doctest::Approx(3.0));

    const SpectralDecomposition id = dense_eig(Eigen::MatrixXd::Identity(3, 3));
    for (int i = 0; i < 3; ++i) CHECK(id.eigenvalues[i] == doctest::Approx(1.0));

    CHECK_THROWS_AS(dense_eig(Eigen::MatrixXd::Zero(4001, 4001)), DimensionCap);
}

TEST_CASE("dense_eig reconstruction and orthonormality") {
    GroundedSystem gs(lattice_ball(2, 2), 3);
    const Eigen::MatrixXd A = Eigen::MatrixXd(gs.matrix());
    const SpectralDecomposition eig = dense_eig(gs.matrix());
    const Eigen::MatrixXd recon =
        eig.eigenvectors * eig.eigenvalues.asDiagonal() * eig.eigenvectors.transpose();
    CHECK((recon - A).norm() <= 1e-10 * A.norm());
    const Eigen::MatrixXd gram = eig.eigenvectors.transpose() * eig.eigenvectors;
    CHECK((gram - Eigen::MatrixXd::Identity(eig.n, eig.n)).cwiseAbs().maxCoeff() < 1e-12);
    for (int i = 0; i + 1 < eig.n; ++i) CHECK(eig.eigenvalues[i] <= eig.eigenvalues[i + 1]);
}

TEST_CASE("lanczos smallest eigenvalue") {
    GroundedSystem k3(complete_graph(3), 2);
    const LanczosResult a = lanczos_smallest(k3.matrix(), 50, 1);
    CHECK(a.value == doctest::Approx(1.0).epsilon(1e-8));

    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(3, 3);
    D.diagonal() << 5, 2, 9;
    CHECK(lanczos_smallest(sparse_from(D), 30, 2).value == doctest::Approx(2.0).epsilon(1e-10));

    GroundedSystem seg(lattice_ball(1, 50), 0);
    const SpectralDecomposition dense = dense_eig(seg.matrix());
    const LanczosResult lz = lanczos_smallest(seg.matrix(), 150, 3);
    CHECK(lz.value == doctest::Approx(dense.eigenvalues[0]).epsilon(1e-8));
    CHECK(lz.value >= dense.eigenvalues[0] - 1e-12);  // Ritz values bound from above

    // deterministic for a fixed seed
    const LanczosResult again = lanczos_smallest(seg.matrix(), 150, 3);
    CHECK(lz.value == again.value);

    CHECK_THROWS_AS(lanczos_smallest(k3.matrix(), 5, 1), Error);
}
