#include "resnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

namespace resnet {

namespace {

std::string id_string(int x) { return std::to_string(x); }

}  // namespace

Network::Network(int n, std::vector<Edge> edges, int origin,
                 std::optional<int> ground, std::vector<std::string> labels)
    : n_(n), edges_(std::move(edges)), origin_(origin), ground_(ground),
      labels_(std::move(labels)) {
    if (n_ <= 0) throw InvalidNetwork("network needs at least one vertex");
    if (edges_.empty() && n_ > 1) throw InvalidNetwork("edge list is empty");
    if (origin_ < 0 || origin_ >= n_) throw UnknownVertex("origin out of range");
    if (ground_ && (*ground_ < 0 || *ground_ >= n_))
        throw UnknownVertex("ground out of range");
    if (!labels_.empty() && static_cast<int>(labels_.size()) != n_)
        throw InvalidNetwork("label table size does not match vertex count");

    for (auto& e : edges_) {
        if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
            throw UnknownVertex("edge endpoint out of range");
        if (e.u == e.v)
            throw SelfLoop("self-loop at vertex " + id_string(e.u));
        if (!(e.conductance > 0.0) || !std::isfinite(e.conductance))
            throw NonpositiveConductance("conductance must be positive on edge (" +
                                         id_string(e.u) + "," + id_string(e.v) + ")");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.u, a.v) < std::tie(b.u, b.v);
    });
    for (size_t i = 1; i < edges_.size(); ++i)
        if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
            throw DuplicateEdge("duplicate edge (" + id_string(edges_[i].u) + "," +
                                id_string(edges_[i].v) + ")");

    adj_.assign(n_, {});
    for (const auto& e : edges_) {
        adj_[e.u].emplace_back(e.v, e.conductance);
        adj_[e.v].emplace_back(e.u, e.conductance);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());

    // connectivity from the origin
    std::vector<char> seen(n_, 0);
    std::deque<int> queue{origin_};
    seen[origin_] = 1;
    int reached = 1;
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (const auto& [y, c] : adj_[x]) {
            (void)c;
            if (!seen[y]) {
                seen[y] = 1;
                ++reached;
                queue.push_back(y);
            }
        }
    }
    if (reached != n_)
        throw DisconnectedGraph("graph search from the origin reached " +
                                id_string(reached) + " of " + id_string(n_) + " vertices");

    for (int v = 0; v < n_ && !labels_.empty(); ++v)
        label_index_.emplace(labels_[v], v);  // first occurrence wins
}

const std::vector<std::pair<int, double>>& Network::neighbors(int x) const {
    check_vertex(x);
    return adj_[x];
}

const std::string& Network::label(int x) const {
    check_vertex(x);
    static const std::string empty;
    return labels_.empty() ? empty : labels_[x];
}

std::optional<int> Network::find_label(const std::string& label) const {
    if (const auto it = label_index_.find(label); it != label_index_.end())
        return it->second;
    // fall back to decimal ids for unlabeled networks
    if (labels_.empty() && !label.empty() &&
        label.find_first_not_of("0123456789") == std::string::npos) {
        int id = std::atoi(label.c_str());
        if (id >= 0 && id < n_) return id;
    }
    return std::nullopt;
}

int Network::vertex_by_label(const std::string& label) const {
    if (auto id = find_label(label)) return *id;
    throw UnknownLabel("no vertex labelled '" + label + "'");
}

Network Network::with_ground(std::optional<int> g) const {
    return Network(n_, edges_, origin_, g, labels_);
}

Network Network::with_origin(int o) const {
    return Network(n_, edges_, o, ground_, labels_);
}

void Network::check_vertex(int x) const {
    if (x < 0 || x >= n_) throw UnknownVertex("vertex " + id_string(x) + " out of range");
}

Network build_network(const std::vector<Edge>& edges, int origin) {
    if (edges.empty()) throw InvalidNetwork("edge list is empty");
    int n = 0;
    for (const auto& e : edges) n = std::max({n, e.u + 1, e.v + 1});
    n = std::max(n, origin + 1);
    return Network(n, edges, origin);
}

double net_conductance(const Network& net, int x) {
    net.check_vertex(x);
    double c = 0.0;
    for (const auto& [y, cxy] : net.neighbors(x)) {
        (void)y;
        c += cxy;
    }
    return c;
}

// ---------------------------------------------------------------------------
// generators

Network path_graph(int n) {
    if (n < 1) throw InvalidNetwork("path needs at least one vertex");
    std::vector<Edge> edges;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(id_string(i));
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
    if (n == 1) return Network(1, {}, 0, std::nullopt, std::move(labels));
    return Network(n, std::move(edges), 0, std::nullopt, std::move(labels));
}

Network complete_graph(int n) {
    if (n < 2) throw InvalidNetwork("complete graph needs at least two vertices");
    std::vector<Edge> edges;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(id_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
    return Network(n, std::move(edges), 0, std::nullopt, std::move(labels));
}

namespace {

void enumerate_ball(int d, int k, std::vector<int>& point,
                    std::vector<std::vector<int>>& out) {
    if (static_cast<int>(point.size()) == d) {
        out.push_back(point);
        return;
    }
    int used = 0;
    for (int c : point) used += std::abs(c);
    for (int v = -(k - used); v <= k - used; ++v) {
        point.push_back(v);
        enumerate_ball(d, k, point, out);
        point.pop_back();
    }
}

std::string coord_label(const std::vector<int>& x) {
    std::ostringstream os;
    for (size_t i = 0; i < x.size(); ++i) {
        if (i) os << ',';
        os << x[i];
    }
    return os.str();
}

}  // namespace

Network lattice_ball(int d, int k) {
    if (d < 1) throw InvalidNetwork("lattice dimension must be >= 1");
    if (k < 1) throw InvalidNetwork("lattice radius must be >= 1");
    std::vector<std::vector<int>> pts;
    std::vector<int> scratch;
    enumerate_ball(d, k, scratch, pts);
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < pts.size(); ++i) index[pts[i]] = static_cast<int>(i);

    std::vector<Edge> edges;
    std::vector<std::string> labels(pts.size());
    int origin = -1;
    for (size_t i = 0; i < pts.size(); ++i) {
        labels[i] = coord_label(pts[i]);
        bool is_origin = std::all_of(pts[i].begin(), pts[i].end(), [](int c) { return c == 0; });
        if (is_origin) origin = static_cast<int>(i);
        for (int j = 0; j < d; ++j) {
            auto q = pts[i];
            q[j] += 1;
            auto it = index.find(q);
            if (it != index.end()) edges.push_back({static_cast<int>(i), it->second, 1.0});
        }
    }
    return Network(static_cast<int>(pts.size()), std::move(edges), origin,
                   std::nullopt, std::move(labels));
}

Network binary_tree(int k) {
    if (k < 1) throw InvalidNetwork("tree depth must be >= 1");
    // words in depth order, binary counting within a depth
    std::vector<std::string> words{""};
    for (int depth = 1; depth <= k; ++depth) {
        int count = 1 << depth;
        for (int w = 0; w < count; ++w) {
            std::string s(depth, '0');
            for (int b = 0; b < depth; ++b)
                if (w & (1 << (depth - 1 - b))) s[b] = '1';
            words.push_back(s);
        }
    }
    std::unordered_map<std::string, int> index;
    for (size_t i = 0; i < words.size(); ++i) index[words[i]] = static_cast<int>(i);
    std::vector<Edge> edges;
    for (size_t i = 0; i < words.size(); ++i) {
        if (static_cast<int>(words[i].size()) < k) {
            edges.push_back({static_cast<int>(i), index[words[i] + "0"], 1.0});
            edges.push_back({static_cast<int>(i), index[words[i] + "1"], 1.0});
        }
    }
    const int n = static_cast<int>(words.size());
    return Network(n, std::move(edges), 0, std::nullopt, std::move(words));
}

Network cartesian_product(const Network& a, const Network& b) {
    const int na = a.size(), nb = b.size();
    auto id = [nb](int i, int j) { return i * nb + j; };
    std::vector<Edge> edges;
    std::vector<std::string> labels(static_cast<size_t>(na) * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            labels[id(i, j)] = a.label(i) + "|" + b.label(j);
    for (const auto& e : a.edges())
        for (int j = 0; j < nb; ++j)
            edges.push_back({id(e.u, j), id(e.v, j), e.conductance});
    for (const auto& e : b.edges())
        for (int i = 0; i < na; ++i)
            edges.push_back({id(i, e.u), id(i, e.v), e.conductance});
    return Network(na * nb, std::move(edges), id(a.origin(), b.origin()),
                   std::nullopt, std::move(labels));
}

// ---------------------------------------------------------------------------
// wired collapse

WiredCollapse wired_collapse(const Network& net, const std::vector<int>& keep) {
    std::vector<char> in_keep(net.size(), 0);
    for (int v : keep) {
        net.check_vertex(v);
        in_keep[v] = 1;
    }
    if (!in_keep[net.origin()]) throw OriginOutsideKeep("keep set must contain the origin");

    int m = 0;
    std::vector<int> new_id(net.size(), -1);
    for (int v = 0; v < net.size(); ++v)
        if (in_keep[v]) new_id[v] = m++;

    if (m == net.size())
        return WiredCollapse{net, /*empty_boundary=*/true, 0.0};

    std::vector<Edge> edges;
    std::vector<std::string> labels(m + 1);
    for (int v = 0; v < net.size(); ++v)
        if (in_keep[v]) labels[new_id[v]] = net.label(v);
    labels[m] = "omega";

    double cut = 0.0;
    std::vector<double> to_omega(m, 0.0);
    for (const auto& e : net.edges()) {
        bool ku = in_keep[e.u], kv = in_keep[e.v];
        if (ku && kv) {
            edges.push_back({new_id[e.u], new_id[e.v], e.conductance});
        } else if (ku != kv) {
            to_omega[new_id[ku ? e.u : e.v]] += e.conductance;
            cut += e.conductance;
        }
    }
    for (int v = 0; v < m; ++v)
        if (to_omega[v] > 0.0) edges.push_back({v, m, to_omega[v]});

    // The constructor rejects a disconnected induced subgraph: if `keep`
    // splits, some part only reaches the rest through omega, which is not a
    // valid wired truncation of a connected exhaustion. Guard explicitly.
    {
        std::vector<std::vector<int>> internal_adj(m);
        for (const auto& e : edges)
            if (e.u < m && e.v < m) {
                internal_adj[e.u].push_back(e.v);
                internal_adj[e.v].push_back(e.u);
            }
        std::vector<char> seen(m, 0);
        std::deque<int> queue{new_id[net.origin()]};
        seen[new_id[net.origin()]] = 1;
        int reached = 1;
        while (!queue.empty()) {
            int x = queue.front();
            queue.pop_front();
            for (int y : internal_adj[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    ++reached;
                    queue.push_back(y);
                }
        }
        if (reached != m)
            throw DisconnectedGraph("keep set is not connected inside the host network");
    }

    Network collapsed(m + 1, std::move(edges), new_id[net.origin()], m, std::move(labels));
    return WiredCollapse{std::move(collapsed), false, cut};
}

// ---------------------------------------------------------------------------
// exhaustions

ExhaustionSpec ExhaustionSpec::lattice(int d) {
    if (d < 1) throw InvalidNetwork("lattice dimension must be >= 1");
    ExhaustionSpec s;
    s.family_ = Family::lattice;
    s.dimension_ = d;
    return s;
}

ExhaustionSpec ExhaustionSpec::tree() {
    ExhaustionSpec s;
    s.family_ = Family::binary_tree;
    return s;
}

ExhaustionSpec ExhaustionSpec::tree_cross_line() {
    ExhaustionSpec s;
    s.family_ = Family::product;
    return s;
}

ExhaustionSpec ExhaustionSpec::from_network(Network base) {
    ExhaustionSpec s;
    s.family_ = Family::file;
    if (!base.has_labels()) {
        // truncations re-index vertices, so identity across depths needs
        // labels; fall back to the base network's ids
        std::vector<std::string> labels;
        for (int v = 0; v < base.size(); ++v) labels.push_back(std::to_string(v));
        s.base_ = Network(base.size(), base.edges(), base.origin(), base.ground(),
                          std::move(labels));
    } else {
        s.base_ = std::move(base);
    }
    return s;
}

namespace {

/// Graph-distance ball of radius k around the origin of a finite network.
std::vector<int> bfs_ball(const Network& net, int k) {
    std::vector<int> dist(net.size(), -1);
    std::deque<int> queue{net.origin()};
    dist[net.origin()] = 0;
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        if (dist[x] == k) continue;
        for (const auto& [y, c] : net.neighbors(x)) {
            (void)c;
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    std::vector<int> ball;
    for (int v = 0; v < net.size(); ++v)
        if (dist[v] >= 0) ball.push_back(v);
    return ball;
}

Network induced_subnetwork(const Network& net, const std::vector<int>& keep) {
    std::vector<int> new_id(net.size(), -1);
    int m = 0;
    for (int v : keep) new_id[v] = m++;
    std::vector<Edge> edges;
    std::vector<std::string> labels(m);
    for (int v : keep) labels[new_id[v]] = net.label(v);
    for (const auto& e : net.edges())
        if (new_id[e.u] >= 0 && new_id[e.v] >= 0)
            edges.push_back({new_id[e.u], new_id[e.v], e.conductance});
    return Network(m, std::move(edges), new_id[net.origin()], std::nullopt,
                   std::move(labels));
}

}  // namespace

Network ExhaustionSpec::truncation(int k) const {
    if (k < 1) throw InvalidNetwork("truncation depth must be >= 1");
    switch (family_) {
        case Family::lattice:
            return lattice_ball(dimension_, k);
        case Family::binary_tree:
            return binary_tree(k);
        case Family::product:
            return cartesian_product(binary_tree(k), lattice_ball(1, k));
        case Family::file:
            return induced_subnetwork(*base_, bfs_ball(*base_, k));
    }
    throw Error("unreachable");
}

WiredCollapse ExhaustionSpec::wired_truncation(int k) const {
    Network outer = truncation(k + 1);
    Network inner = truncation(k);
    std::vector<int> keep;
    keep.reserve(inner.size());
    for (int v = 0; v < inner.size(); ++v)
        keep.push_back(outer.vertex_by_label(inner.label(v)));
    return wired_collapse(outer, keep);
}

// ---------------------------------------------------------------------------
// expansion constant

namespace {

double boundary_over_size(const Network& net, std::uint32_t mask) {
    int size = 0;
    for (int v = 0; v < net.size(); ++v)
        if (mask & (1u << v)) ++size;
    double boundary = 0.0;
    for (const auto& e : net.edges()) {
        bool iu = mask & (1u << e.u), iv = mask & (1u << e.v);
        if (iu != iv) boundary += e.conductance;
    }
    return boundary / size;
}

}  // namespace

double expansion_constant(const Network& net) {
    const int n = net.size();
    if (n > 20)
        throw TooLargeForExact("exact expansion constant is capped at 20 vertices; "
                               "use expansion_constant_sampled");
    if (n == 1) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    const std::uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1);
    for (std::uint32_t mask = 1; mask < full; ++mask)
        best = std::min(best, boundary_over_size(net, mask));
    return best;
}

ExpansionEstimate expansion_constant_sampled(const Network& net, int samples,
                                             std::uint64_t seed) {
    const int n = net.size();
    std::mt19937_64 rng(seed);
    double best = std::numeric_limits<double>::infinity();
    std::vector<char> in(n, 0);
    auto ratio = [&]() {
        int size = 0;
        for (int v = 0; v < n; ++v) size += in[v];
        if (size == 0 || size == n) return std::numeric_limits<double>::infinity();
        double boundary = 0.0;
        for (const auto& e : net.edges())
            if (in[e.u] != in[e.v]) boundary += e.conductance;
        return boundary / size;
    };
    // singletons and BFS balls are strong candidates; then random subsets
    for (int v = 0; v < n && v < samples; ++v) {
        std::fill(in.begin(), in.end(), 0);
        in[v] = 1;
        best = std::min(best, ratio());
    }
    for (int s = 0; s < samples; ++s) {
        for (int v = 0; v < n; ++v) in[v] = static_cast<char>(rng() & 1u);
        best = std::min(best, ratio());
    }
    return ExpansionEstimate{best, samples, seed};
}

}  // namespace resnet
