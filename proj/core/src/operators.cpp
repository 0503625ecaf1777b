#include "resnet/operators.hpp"

#include <Eigen/Dense>
#include <ostream>

#include "resnet/solvers.hpp"

namespace resnet {

SparseMatrix laplacian_matrix(const Network& net) {
    const int n = net.size();
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(net.edges().size() * 4);
    for (const auto& e : net.edges()) {
        trips.emplace_back(e.u, e.v, -e.conductance);
        trips.emplace_back(e.v, e.u, -e.conductance);
        trips.emplace_back(e.u, e.u, e.conductance);
        trips.emplace_back(e.v, e.v, e.conductance);
    }
    SparseMatrix L(n, n);
    L.setFromTriplets(trips.begin(), trips.end());
    return L;
}

namespace {

void check_length(const Network& net, const VertexFunction& u, const char* what) {
    if (u.size() != net.size())
        throw LengthMismatch(std::string(what) + ": function length " +
                             std::to_string(u.size()) + " vs " +
                             std::to_string(net.size()) + " vertices");
}

}  // namespace

VertexFunction apply_laplacian(const Network& net, const VertexFunction& u) {
    check_length(net, u, "apply_laplacian");
    VertexFunction out = VertexFunction::Zero(net.size());
    for (const auto& e : net.edges()) {
        const double diff = e.conductance * (u[e.u] - u[e.v]);
        out[e.u] += diff;
        out[e.v] -= diff;
    }
    return out;
}

double energy(const Network& net, const VertexFunction& u, const VertexFunction& v) {
    check_length(net, u, "energy");
    check_length(net, v, "energy");
    double acc = 0.0;
    for (const auto& e : net.edges())
        acc += e.conductance * (u[e.u] - u[e.v]) * (v[e.u] - v[e.v]);
    return acc;
}

std::pair<double, double> summation_by_parts_check(const Network& net,
                                                   const VertexFunction& u,
                                                   const VertexFunction& v) {
    const double lhs = energy(net, u, v);
    const double rhs = u.dot(apply_laplacian(net, v));
    return {lhs, rhs};
}

// ---------------------------------------------------------------------------
// GroundedSystem

namespace {

int require_ground(const Network& net) {
    if (!net.ground())
        throw SingularMatrix("network has no ground vertex; the full Laplacian is singular");
    return *net.ground();
}

}  // namespace

GroundedSystem::GroundedSystem(const Network& net) : GroundedSystem(net, require_ground(net)) {}

GroundedSystem::GroundedSystem(const Network& net, int ground)
    : net_(std::make_shared<Network>(net.with_ground(ground))), ground_(ground) {
    init();
}

void GroundedSystem::init() {
    const int n = net_->size();
    to_reduced_.assign(n, -1);
    to_full_.clear();
    for (int v = 0; v < n; ++v) {
        if (v == ground_) continue;
        to_reduced_[v] = static_cast<int>(to_full_.size());
        to_full_.push_back(v);
    }
    const int m = n - 1;
    std::vector<Eigen::Triplet<double>> trips;
    for (const auto& e : net_->edges()) {
        const int ru = to_reduced_[e.u], rv = to_reduced_[e.v];
        if (ru >= 0) trips.emplace_back(ru, ru, e.conductance);
        if (rv >= 0) trips.emplace_back(rv, rv, e.conductance);
        if (ru >= 0 && rv >= 0) {
            trips.emplace_back(ru, rv, -e.conductance);
            trips.emplace_back(rv, ru, -e.conductance);
        }
    }
    matrix_.resize(m, m);
    matrix_.setFromTriplets(trips.begin(), trips.end());
}

int GroundedSystem::to_reduced(int vertex) const {
    net_->check_vertex(vertex);
    if (vertex == ground_) throw SupportTouchesGround("vertex is the ground");
    return to_reduced_[vertex];
}

int GroundedSystem::to_full(int index) const {
    if (index < 0 || index >= dim()) throw UnknownVertex("reduced index out of range");
    return to_full_[index];
}

bool GroundedSystem::green_materialized() const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    return green_.has_value();
}

const Eigen::MatrixXd& GroundedSystem::green() const {
    if (dim() > kDenseGreenCap)
        throw DimensionCap("dense Green matrix capped at " +
                           std::to_string(kDenseGreenCap) + " (have " +
                           std::to_string(dim()) + "); use solve_reduced");
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (!green_) {
        if (!llt_) {
            llt_.emplace(Eigen::MatrixXd(matrix_));
            if (llt_->info() != Eigen::Success)
                throw SingularMatrix("grounded Laplacian is not positive definite");
        }
        green_ = llt_->solve(Eigen::MatrixXd::Identity(dim(), dim()));
    }
    return *green_;
}

Eigen::VectorXd GroundedSystem::solve_reduced(const Eigen::VectorXd& rhs) const {
    if (rhs.size() != dim()) throw LengthMismatch("solve_reduced: rhs length");
    if (dim() <= kDenseGreenCap) {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        if (!llt_) {
            llt_.emplace(Eigen::MatrixXd(matrix_));
            if (llt_->info() != Eigen::Success)
                throw SingularMatrix("grounded Laplacian is not positive definite");
        }
        return llt_->solve(rhs);
    }
    CgConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.max_iter = 20 * dim();
    CgResult res = cg_solve(matrix_, rhs, cfg);
    if (res.status == CgStatus::not_spd)
        throw NotSpd("grounded Laplacian produced nonpositive curvature");
    if (res.status == CgStatus::max_iter_exceeded)
        throw MaxIterExceeded("CG did not reach 1e-12 on the grounded system");
    return res.x;
}

Eigen::VectorXd GroundedSystem::reduce(const VertexFunction& full) const {
    check_length(*net_, full, "reduce");
    if (full[ground_] != 0.0)
        throw SupportTouchesGround("function does not vanish at the ground");
    Eigen::VectorXd r(dim());
    for (int i = 0; i < dim(); ++i) r[i] = full[to_full_[i]];
    return r;
}

VertexFunction GroundedSystem::extend(const Eigen::VectorXd& reduced) const {
    if (reduced.size() != dim()) throw LengthMismatch("extend: reduced length");
    VertexFunction full = VertexFunction::Zero(net_->size());
    for (int i = 0; i < dim(); ++i) full[to_full_[i]] = reduced[i];
    return full;
}

VertexFunction GroundedSystem::apply_grounded(const VertexFunction& u) const {
    VertexFunction out = apply_laplacian(*net_, u);
    out[ground_] = 0.0;
    return out;
}

VertexFunction GroundedSystem::phi(const VertexFunction& xi) const {
    return extend(solve_reduced(reduce(xi)));
}

VertexFunction GroundedSystem::monopole(int x) const {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim());
    rhs[to_reduced(x)] = 1.0;
    return extend(solve_reduced(rhs));
}

Eigen::MatrixXd gram_matrix(const GroundedSystem& gs) { return gs.green(); }

VertexFunction phi_map(const GroundedSystem& gs, const VertexFunction& xi) {
    return gs.phi(xi);
}

void write_matrix_market(const SparseMatrix& m, std::ostream& os) {
    os << "%%MatrixMarket matrix coordinate real general\n";
    os << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
    for (int k = 0; k < m.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(m, k); it; ++it)
            os << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
}

}  // namespace resnet
