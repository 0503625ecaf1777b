#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "resnet/errors.hpp"

namespace resnet {

/// Real-valued function on the vertex set, indexed by vertex id.
using VertexFunction = Eigen::VectorXd;

struct Edge {
    int u = 0;
    int v = 0;
    double conductance = 0.0;
};

/// Finite weighted graph with symmetric positive conductances, a designated
/// origin and an optional ground vertex. Immutable after construction;
/// safe to share across threads.
///
/// Invariants enforced by the constructor: no self-loops, no duplicate
/// unordered pairs, every conductance > 0, and the graph is connected.
class Network {
public:
    /// `edges` use vertex ids 0..n-1; the unordered pair (u,v) is stored
    /// with u < v. `labels`, when nonempty, must have size n; labels give
    /// vertices an identity that is stable across exhaustion depths.
    Network(int n, std::vector<Edge> edges, int origin,
            std::optional<int> ground = std::nullopt,
            std::vector<std::string> labels = {});

    int size() const { return n_; }
    int origin() const { return origin_; }
    std::optional<int> ground() const { return ground_; }
    const std::vector<Edge>& edges() const { return edges_; }

    /// Neighbours of x as (vertex, conductance), ascending by vertex id.
    const std::vector<std::pair<int, double>>& neighbors(int x) const;

    int degree(int x) const { return static_cast<int>(neighbors(x).size()); }

    bool has_labels() const { return !labels_.empty(); }
    const std::string& label(int x) const;
    const std::vector<std::string>& labels() const { return labels_; }

    /// Vertex with the given label; for unlabeled networks decimal ids act
    /// as labels. Duplicate labels resolve to the lowest id. Throws
    /// UnknownLabel if absent.
    int vertex_by_label(const std::string& label) const;
    std::optional<int> find_label(const std::string& label) const;

    Network with_ground(std::optional<int> g) const;
    Network with_origin(int o) const;

    void check_vertex(int x) const;

private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, double>>> adj_;
    int origin_;
    std::optional<int> ground_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> label_index_;
};

/// Validates and builds a network; vertex count is max id + 1.
Network build_network(const std::vector<Edge>& edges, int origin);

/// c(x): sum of the conductances of edges incident to x.
double net_conductance(const Network& net, int x);

// ---------------------------------------------------------------------------
// generators

/// Path on n vertices 0-1-...-(n-1) with unit conductances, origin 0.
Network path_graph(int n);

/// Complete graph on n vertices with unit conductances, origin 0.
Network complete_graph(int n);

/// {x in Z^d : |x|_1 <= k} with unit nearest-neighbour edges; origin is the
/// zero vector; labels are comma-separated coordinates ("0,0", "-1,2").
Network lattice_ball(int d, int k);

/// Binary words of length <= k; each word w joins w0 and w1 with c = 1.
/// Root is the empty word and the origin; labels are the words.
Network binary_tree(int k);

/// Cartesian product: edge between (x,y),(s,t) iff (y=t and x~s, conductance
/// a_xs) or (x=s and y~t, conductance b_yt). Labels combine as "la|lb".
Network cartesian_product(const Network& a, const Network& b);

// ---------------------------------------------------------------------------
// wired collapse

struct WiredCollapse {
    Network network;
    /// keep == whole vertex set: `network` is the input unchanged, no ground.
    bool empty_boundary = false;
    /// Total conductance of the cut edges (sum of the c_{x,omega}).
    double boundary_conductance = 0.0;
};

/// Collapses the complement of `keep` to a single ground vertex omega; each
/// boundary vertex x gains an edge (x, omega) with conductance equal to the
/// sum over its outside neighbours (parallel edges merge by addition).
/// `keep` must contain the origin and induce a connected subgraph.
WiredCollapse wired_collapse(const Network& net, const std::vector<int>& keep);

// ---------------------------------------------------------------------------
// exhaustions

/// Family of nested finite truncations of an infinite (or large) network.
/// truncation(k) is vertex-induced inside truncation(k+1); vertices keep
/// their labels across depths, so alignment is by label, not id.
class ExhaustionSpec {
public:
    enum class Family { lattice, binary_tree, product, file };

    static ExhaustionSpec lattice(int d);
    static ExhaustionSpec tree();
    /// Binary tree crossed with the integer line.
    static ExhaustionSpec tree_cross_line();
    /// Exhaustion of a fixed finite network by graph-distance balls around
    /// its origin; truncations saturate at the full network.
    static ExhaustionSpec from_network(Network base);

    Family family() const { return family_; }
    int dimension() const { return dimension_; }

    /// Free truncation at depth k (no boundary identification).
    Network truncation(int k) const;

    /// Truncation k wired-collapsed inside truncation k+1. Exact for
    /// ball exhaustions: boundary vertices of depth k only neighbour
    /// depth k+1. empty_boundary is set when the family is saturated.
    WiredCollapse wired_truncation(int k) const;

private:
    ExhaustionSpec() = default;
    Family family_ = Family::lattice;
    int dimension_ = 1;
    std::optional<Network> base_;
};

// ---------------------------------------------------------------------------
// expansion constant

/// Exact minimum of |dS|/|S| over nonempty proper vertex subsets S, where
/// |dS| sums the conductances of edges with exactly one end in S.
/// Brute force; throws TooLargeForExact above 20 vertices.
double expansion_constant(const Network& net);

struct ExpansionEstimate {
    double value;       // min ratio found (an upper bound for the infimum)
    int samples;
    std::uint64_t seed;
};

/// Randomized search over subsets for larger networks; a lower-confidence
/// upper estimate of the expansion constant.
ExpansionEstimate expansion_constant_sampled(const Network& net, int samples,
                                             std::uint64_t seed);

}  // namespace resnet
