#include "resnet/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <vector>

#include "resnet/network.hpp"
#include "resnet/operators.hpp"
#include "resnet/spectral.hpp"
#include "resnet/threads.hpp"

namespace resnet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxDimension = 5;

struct Kahan {
    double sum = 0.0;
    double carry = 0.0;
    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

void check_dimension(int d) {
    if (d < 1) throw Error("lattice dimension must be >= 1");
    if (d > kMaxDimension)
        throw DimensionCap("full tensor quadrature is capped at d <= " +
                           std::to_string(kMaxDimension));
}

std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

/// Midpoint nodes -pi + (j + 1/2) h, j = 0..m-1; m even keeps 0 off-grid.
std::vector<double> axis_nodes(int m) {
    std::vector<double> t(m);
    const double h = 2.0 * kPi / m;
    for (int j = 0; j < m; ++j) t[j] = -kPi + (j + 0.5) * h;
    return t;
}

/// Sum of f over the shifted-midpoint grid with the near-origin box
/// replaced by a dyadic subdivision. Deterministic: fixed block
/// boundaries, Kahan within blocks, ordered combine across blocks.
template <class F>
double torus_mean(int d, int m, int shells, int levels, F&& f) {
    if (m % 2) ++m;
    const double h = 2.0 * kPi / m;
    const std::vector<double> nodes = axis_nodes(m);
    const int near_lo = m / 2 - shells;  // index range of near-origin cells
    const int near_hi = m / 2 + shells;  // exclusive

    const std::int64_t cells = ipow(m, d);
    const std::int64_t block = 1 << 16;
    const std::int64_t blocks = (cells + block - 1) / block;
    std::vector<double> block_sums(blocks, 0.0);

    detail::parallel_blocks(cells, block, [&](std::int64_t begin, std::int64_t end) {
        int idx[kMaxDimension];
        double t[kMaxDimension];
        std::int64_t r = begin;
        for (int j = 0; j < d; ++j) {
            idx[j] = static_cast<int>(r % m);
            t[j] = nodes[idx[j]];
            r /= m;
        }
        Kahan acc;
        for (std::int64_t cell = begin; cell < end; ++cell) {
            bool near = shells > 0;
            for (int j = 0; j < d && near; ++j)
                near = idx[j] >= near_lo && idx[j] < near_hi;
            if (!near) acc.add(f(t));
            // odometer increment
            for (int j = 0; j < d; ++j) {
                if (++idx[j] < m) {
                    t[j] = nodes[idx[j]];
                    break;
                }
                idx[j] = 0;
                t[j] = nodes[0];
            }
        }
        block_sums[(begin / block)] = acc.sum + acc.carry;
    });

    Kahan total;
    for (double s : block_sums) total.add(s);
    double sum = (total.sum + total.carry) * std::pow(h, d);

    if (shells > 0) {
        // dyadic refinement of the near-origin box, serial fixed order
        Kahan refined;
        std::vector<int> idx(d, near_lo);
        std::vector<double> center(d);
        const std::int64_t near_cells = ipow(2 * shells, d);
        for (std::int64_t cell = 0; cell < near_cells; ++cell) {
            for (int j = 0; j < d; ++j) center[j] = nodes[idx[j]];
            // recurse: stack of (center, width, level)
            struct Frame {
                std::vector<double> c;
                double w;
                int lev;
            };
            std::vector<Frame> stack{{center, h, levels}};
            while (!stack.empty()) {
                Frame fr = std::move(stack.back());
                stack.pop_back();
                if (fr.lev == 0) {
                    refined.add(f(fr.c.data()) * std::pow(fr.w, d));
                    continue;
                }
                const std::int64_t children = ipow(2, d);
                for (std::int64_t child = children - 1; child >= 0; --child) {
                    Frame sub{fr.c, fr.w / 2.0, fr.lev - 1};
                    for (int j = 0; j < d; ++j)
                        sub.c[j] += (child & (std::int64_t(1) << j)) ? fr.w / 4.0 : -fr.w / 4.0;
                    stack.push_back(std::move(sub));
                }
            }
            for (int j = 0; j < d; ++j) {
                if (++idx[j] < near_hi) break;
                idx[j] = near_lo;
            }
        }
        sum += refined.sum + refined.carry;
    }
    return sum / std::pow(2.0 * kPi, d);
}

template <class F>
QuadratureValue run_levels(int d, const TorusQuadrature& q, F&& f) {
    QuadratureValue out;
    out.tolerance = q.tolerance;
    int m = q.base_grid();
    for (int level = 0; level <= q.refinements; ++level, m *= 2) {
        out.grids.push_back(m);
        out.level_values.push_back(
            torus_mean(d, m, q.origin_refine_shells, q.origin_refine_levels, f));
    }
    out.value = out.level_values.back();
    const size_t L = out.level_values.size();
    out.converged = L >= 2 &&
                    std::abs(out.level_values[L - 1] - out.level_values[L - 2]) < q.tolerance;
    return out;
}

void check_point(int d, std::span<const int> x, const char* what) {
    if (static_cast<int>(x.size()) != d)
        throw Error(std::string(what) + ": point has wrong dimension");
}

}  // namespace

TorusQuadrature TorusQuadrature::defaults(int d) {
    check_dimension(d);
    TorusQuadrature q;
    q.dimension = d;
    switch (d) {
        case 1:
        case 2: q.points_per_axis = 32; break;
        case 3: q.points_per_axis = 16; break;
        case 4: q.points_per_axis = 8; break;
        default: q.points_per_axis = 4; break;
    }
    if (d >= 4) {
        q.origin_refine_shells = 1;
        q.origin_refine_levels = 2;
    }
    return q;
}

int TorusQuadrature::base_grid() const {
    int m = points_per_axis > 0 ? points_per_axis
                                : TorusQuadrature::defaults(dimension).points_per_axis;
    if (m % 2) ++m;
    const int min_m = 2 * origin_refine_shells + 2;
    return std::max(m, min_m);
}

double symbol(int d, std::span<const double> t) {
    check_dimension(d);
    if (static_cast<int>(t.size()) != d) throw Error("symbol: point has wrong dimension");
    double s = 0.0;
    for (int j = 0; j < d; ++j) {
        const double half = std::sin(t[j] / 2.0);
        s += 4.0 * half * half;
    }
    return s;
}

namespace {

double symbol_raw(int d, const double* t) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) {
        const double half = std::sin(t[j] / 2.0);
        s += 4.0 * half * half;
    }
    return s;
}

}  // namespace

QuadratureValue lattice_dipole_value(int d, std::span<const int> x, std::span<const int> y,
                                     const TorusQuadrature& q) {
    check_dimension(d);
    check_point(d, x, "lattice_dipole_value");
    check_point(d, y, "lattice_dipole_value");
    if (std::all_of(x.begin(), x.end(), [](int c) { return c == 0; }))
        throw SameVertex("dipole base point x must differ from the origin");
    std::vector<int> xv(x.begin(), x.end()), yv(y.begin(), y.end());
    return run_levels(d, q, [d, xv, yv](const double* t) {
        double dot_xy = 0.0, dot_y = 0.0;
        for (int j = 0; j < d; ++j) {
            dot_xy += (xv[j] - yv[j]) * t[j];
            dot_y += yv[j] * t[j];
        }
        return (std::cos(dot_xy) - std::cos(dot_y)) / symbol_raw(d, t);
    });
}

QuadratureValue lattice_resistance(int d, std::span<const int> x, std::span<const int> y,
                                   const TorusQuadrature& q) {
    check_dimension(d);
    check_point(d, x, "lattice_resistance");
    check_point(d, y, "lattice_resistance");
    std::vector<int> diff(d);
    bool same = true;
    for (int j = 0; j < d; ++j) {
        diff[j] = x[j] - y[j];
        same = same && diff[j] == 0;
    }
    if (same) throw SameVertex("resistance endpoints coincide");
    return run_levels(d, q, [d, diff](const double* t) {
        double dot = 0.0;
        for (int j = 0; j < d; ++j) dot += diff[j] * t[j];
        const double s = std::sin(dot / 2.0);
        return 4.0 * s * s / symbol_raw(d, t);
    });
}

QuadratureValue lattice_monopole_value(int d, std::span<const int> x, const TorusQuadrature& q) {
    check_dimension(d);
    check_point(d, x, "lattice_monopole_value");
    if (d <= 2)
        throw RecurrentLattice("1/S is not integrable for d <= 2; no monopole exists "
                               "(transient iff d >= 3)");
    std::vector<int> xv(x.begin(), x.end());
    return run_levels(d, q, [d, xv](const double* t) {
        double dot = 0.0;
        for (int j = 0; j < d; ++j) dot += xv[j] * t[j];
        return std::cos(dot) / symbol_raw(d, t);
    });
}

QuadratureValue monopole_energy(int d, const TorusQuadrature& q) {
    check_dimension(d);
    if (d <= 2)
        throw RecurrentLattice("1/S is not integrable for d <= 2; the monopole energy "
                               "integral diverges");
    return run_levels(d, q, [d](const double* t) { return 1.0 / symbol_raw(d, t); });
}

TransienceReport transience_probe(int d, const TorusQuadrature& q) {
    check_dimension(d);
    TransienceReport out;
    out.dimension = d;
    out.transient = d >= 3;
    out.cauchy_tolerance = q.tolerance;
    const QuadratureValue v =
        run_levels(d, q, [d](const double* t) { return 1.0 / symbol_raw(d, t); });
    out.grids = v.grids;
    out.level_values = v.level_values;
    for (size_t i = 1; i < v.level_values.size(); ++i)
        out.diffs.push_back(v.level_values[i] - v.level_values[i - 1]);
    return out;
}

TransienceReport transience_probe(int d) {
    return transience_probe(d, TorusQuadrature::defaults(d));
}

// ---------------------------------------------------------------------------
// square-summability probes

namespace {

/// Per-y torus sums of cos(y.t) g(t) against a cached grid of g = 1/S (or a
/// dipole kernel variant). Complex per-axis tables avoid a cos() per cell.
class GreenGridCache {
public:
    GreenGridCache(int d, int m, int shells, int levels)
        : d_(d), m_(m % 2 ? m + 1 : m), h_(2.0 * kPi / m_), nodes_(axis_nodes(m_)),
          near_lo_(m_ / 2 - shells), near_hi_(m_ / 2 + shells) {
        const std::int64_t cells = ipow(m_, d_);
        inv_s_.reserve(cells);
        std::vector<int> idx(d_, 0);
        std::vector<double> t(d_, nodes_[0]);
        for (std::int64_t cell = 0; cell < cells; ++cell) {
            bool near = true;
            for (int j = 0; j < d_ && near; ++j)
                near = idx[j] >= near_lo_ && idx[j] < near_hi_;
            inv_s_.push_back(near ? 0.0 : 1.0 / symbol_raw(d_, t.data()));
            for (int j = 0; j < d_; ++j) {
                if (++idx[j] < m_) {
                    t[j] = nodes_[idx[j]];
                    break;
                }
                idx[j] = 0;
                t[j] = nodes_[0];
            }
        }
        // refined leaves once; shared by every y
        std::vector<int> near_idx(d_, near_lo_);
        const std::int64_t near_cells = ipow(2LL * shells, d_);
        for (std::int64_t cell = 0; cell < near_cells; ++cell) {
            std::vector<double> center(d_);
            for (int j = 0; j < d_; ++j) center[j] = nodes_[near_idx[j]];
            append_leaves(center, h_, levels);
            for (int j = 0; j < d_; ++j) {
                if (++near_idx[j] < near_hi_) break;
                near_idx[j] = near_lo_;
            }
        }
        leaf_weight_ = std::pow(h_ / (1 << levels), d_);
    }

    /// mean over the torus of cos(y.t)/S(t)
    double monopole_sum(std::span<const int> y) const {
        // per-axis complex tables e^{i y_j t}
        std::vector<std::vector<std::complex<double>>> table(d_);
        for (int j = 0; j < d_; ++j) {
            table[j].resize(m_);
            for (int i = 0; i < m_; ++i) {
                const double a = y[j] * nodes_[i];
                table[j][i] = {std::cos(a), std::sin(a)};
            }
        }
        std::vector<int> idx(d_, 0);
        // partial products prod[j] = prod_{i >= j} table[i][idx[i]]
        std::vector<std::complex<double>> prod(d_ + 1);
        prod[d_] = 1.0;
        for (int j = d_ - 1; j >= 0; --j) prod[j] = prod[j + 1] * table[j][0];
        Kahan acc;
        const std::int64_t cells = static_cast<std::int64_t>(inv_s_.size());
        for (std::int64_t cell = 0; cell < cells; ++cell) {
            acc.add(prod[0].real() * inv_s_[cell]);
            int j = 0;
            for (; j < d_; ++j) {
                if (++idx[j] < m_) break;
                idx[j] = 0;
            }
            if (j == d_) break;
            for (int i = j; i >= 0; --i) prod[i] = prod[i + 1] * table[i][idx[i]];
        }
        double sum = (acc.sum + acc.carry) * std::pow(h_, d_);

        Kahan leaves;
        for (size_t l = 0; l < leaf_centers_.size(); l += d_) {
            double dot = 0.0;
            const double* t = &leaf_centers_[l];
            for (int j = 0; j < d_; ++j) dot += y[j] * t[j];
            leaves.add(std::cos(dot) / symbol_raw(d_, t));
        }
        sum += (leaves.sum + leaves.carry) * leaf_weight_;
        return sum / std::pow(2.0 * kPi, d_);
    }

    /// mean of (cos((x-y).t) - cos(y.t))/S(t)
    double dipole_sum(std::span<const int> x, std::span<const int> y) const {
        std::vector<int> xy(d_);
        for (int j = 0; j < d_; ++j) xy[j] = x[j] - y[j];
        return monopole_sum(xy) - monopole_sum(y);
    }

private:
    void append_leaves(const std::vector<double>& center, double width, int level) {
        if (level == 0) {
            leaf_centers_.insert(leaf_centers_.end(), center.begin(), center.end());
            return;
        }
        const std::int64_t children = ipow(2, d_);
        for (std::int64_t child = 0; child < children; ++child) {
            std::vector<double> sub = center;
            for (int j = 0; j < d_; ++j)
                sub[j] += (child & (std::int64_t(1) << j)) ? width / 4.0 : -width / 4.0;
            append_leaves(sub, width / 2.0, level - 1);
        }
    }

    int d_;
    int m_;
    double h_;
    std::vector<double> nodes_;
    int near_lo_, near_hi_;
    std::vector<double> inv_s_;        // 0 on near-origin cells
    std::vector<double> leaf_centers_; // flattened, d_ per leaf
    double leaf_weight_ = 0.0;
};

}  // namespace

Ell2Report ell2_membership_probe(LatticeFunctionKind kind, int d,
                                 const std::vector<int>& radii, const TorusQuadrature& q) {
    check_dimension(d);
    if (radii.empty()) throw Error("ell2_membership_probe needs a radius schedule");
    if (!std::is_sorted(radii.begin(), radii.end()))
        throw Error("radius schedule must be increasing");
    if (radii.back() > 20) throw DimensionCap("probe radii are capped at 20");
    if (kind == LatticeFunctionKind::monopole && d <= 2)
        throw RecurrentLattice("no monopole exists for d <= 2");

    // probes favour volume over per-value precision
    GreenGridCache cache(d, q.base_grid(), 1, 2);

    const int r_max = radii.back();
    const std::int64_t side = 2 * r_max + 1;
    const std::int64_t count = ipow(side, d);
    std::vector<double> sq(count, 0.0);
    std::vector<int> e1(d, 0);
    e1[0] = 1;

    detail::parallel_blocks(count, 256, [&](std::int64_t begin, std::int64_t end) {
        std::vector<int> y(d);
        for (std::int64_t p = begin; p < end; ++p) {
            std::int64_t r = p;
            for (int j = 0; j < d; ++j) {
                y[j] = static_cast<int>(r % side) - r_max;
                r /= side;
            }
            const double v = kind == LatticeFunctionKind::monopole
                                 ? cache.monopole_sum(y)
                                 : cache.dipole_sum(e1, y);
            sq[p] = v * v;
        }
    });

    Ell2Report out;
    out.kind = kind;
    out.dimension = d;
    out.radii = radii;
    out.slope_threshold = 0.15;
    for (int r : radii) {
        Kahan acc;
        std::vector<int> y(d);
        for (std::int64_t p = 0; p < count; ++p) {
            std::int64_t rest = p;
            int norm = 0;
            for (int j = 0; j < d; ++j) {
                const int c = static_cast<int>(rest % side) - r_max;
                rest /= side;
                norm = std::max(norm, std::abs(c));
            }
            if (norm <= r) acc.add(sq[p]);
        }
        out.partial_sums.push_back(acc.sum + acc.carry);
    }
    const size_t L = out.partial_sums.size();
    if (L >= 2 && out.partial_sums[L - 1] > 0 && out.partial_sums[L - 2] > 0) {
        out.slope = (std::log(out.partial_sums[L - 1]) - std::log(out.partial_sums[L - 2])) /
                    (std::log(double(out.radii[L - 1])) - std::log(double(out.radii[L - 2])));
    }
    out.bounded_verdict = out.slope < out.slope_threshold;
    return out;
}

FourierSpectralPair fourier_spectral_consistency(int d, std::span<const int> x,
                                                 std::span<const int> y, int depth,
                                                 const TorusQuadrature& q) {
    check_dimension(d);
    FourierSpectralPair out;
    out.depth = depth;
    out.quadrature_value = lattice_resistance(d, x, y, q).value;

    const ExhaustionSpec gen = ExhaustionSpec::lattice(d);
    const WiredCollapse wc = gen.wired_truncation(depth);
    const GroundedSystem gs(wc.network);
    const int xi = wc.network.vertex_by_label(lattice_label(x));
    const int yi = wc.network.vertex_by_label(lattice_label(y));
    out.spectral_value = spectral_resistance(gs, xi, yi);
    return out;
}

std::string lattice_label(std::span<const int> x) {
    std::ostringstream os;
    for (size_t i = 0; i < x.size(); ++i) {
        if (i) os << ',';
        os << x[i];
    }
    return os.str();
}

std::vector<int> parse_lattice_point(const std::string& s, int d) {
    std::vector<int> out;
    std::istringstream in(s);
    std::string part;
    while (std::getline(in, part, ',')) out.push_back(std::atoi(part.c_str()));
    if (static_cast<int>(out.size()) != d)
        throw Error("point '" + s + "' does not have " + std::to_string(d) + " coordinates");
    return out;
}

}  // namespace resnet
