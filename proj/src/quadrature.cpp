#include "carnot/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace carnot {

QuadratureSpec QuadratureSpec::tensor(int res_all_axes) {
    QuadratureSpec s;
    s.kind = Kind::TensorGrid;
    s.resolution.fill(res_all_axes);
    return s;
}

QuadratureSpec QuadratureSpec::tensor(const std::vector<int>& res) {
    QuadratureSpec s;
    s.kind = Kind::TensorGrid;
    s.resolution.fill(0);
    s.axes = static_cast<int>(std::min<size_t>(res.size(), kMaxQ));
    for (int i = 0; i < s.axes; ++i) s.resolution[i] = res[i];
    return s;
}

QuadratureSpec QuadratureSpec::monte_carlo(long samples) {
    QuadratureSpec s;
    s.kind = Kind::MonteCarlo;
    s.samples = samples;
    return s;
}

void QuadratureSpec::validate(int q) const {
    if (kind == Kind::TensorGrid) {
        for (int j = 0; j < q; ++j)
            if (resolution[j] < 1)
                throw std::invalid_argument("quadrature: tensor resolution must be >= 1 on axis " +
                                            std::to_string(j + 1));
    } else if (samples < 1) {
        throw std::invalid_argument("quadrature: monte_carlo samples must be >= 1");
    }
}

std::string QuadratureSpec::str() const {
    if (kind == Kind::MonteCarlo) return "mc:" + std::to_string(samples);
    std::string s = "tensor:";
    if (axes == 0) return s + std::to_string(resolution[0]);
    for (int j = 0; j < axes; ++j) {
        if (j) s += "x";
        s += std::to_string(resolution[j]);
    }
    return s;
}

void for_each_tensor_node(const BoxRegion& region, const std::array<int, kMaxQ>& res,
                          const std::function<void(const Vec&, double)>& cb) {
    const int q = region.dim();
    // 2-pt Gauss offsets relative to the cell center, in units of half-width.
    const double off = 1.0 / std::sqrt(3.0);
    std::array<double, kMaxQ> h{}, halfw{};
    double cellvol = 1.0;
    for (int j = 0; j < q; ++j) {
        h[j] = (region.upper[j] - region.lower[j]) / res[j];
        halfw[j] = 0.5 * h[j];
        cellvol *= h[j];
    }
    const double w = cellvol / std::pow(2.0, q);

    std::array<int, kMaxQ> idx{};
    Vec p(q);
    bool done = false;
    while (!done) {
        // 2^q Gauss nodes of this cell.
        for (int mask = 0; mask < (1 << q); ++mask) {
            for (int j = 0; j < q; ++j) {
                double c = region.lower[j] + (idx[j] + 0.5) * h[j];
                p[j] = c + ((mask >> j) & 1 ? off : -off) * halfw[j];
            }
            cb(p, w);
        }
        int j = 0;
        for (; j < q; ++j) {
            if (++idx[j] < res[j]) break;
            idx[j] = 0;
        }
        done = (j == q);
    }
}

double integrate_box(const BoxRegion& region, const std::function<double(const Vec&)>& f,
                     const QuadratureSpec& spec, const Rng& rng) {
    const int q = region.dim();
    spec.validate(q);
    if (spec.kind == QuadratureSpec::Kind::MonteCarlo) {
        double sum = 0.0;
        for (long s = 0; s < spec.samples; ++s)
            sum += f(region.sample(rng, static_cast<uint64_t>(s)));
        return region.volume() * sum / static_cast<double>(spec.samples);
    }
    double sum = 0.0;
    for_each_tensor_node(region, spec.resolution,
                         [&](const Vec& p, double w) { sum += w * f(p); });
    return sum;
}

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev estimate for the i-th root of P_n on [-1,1].
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        nodes[i] = 0.5 * (1.0 - x); // roots come out in decreasing order of x
        weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
}

double tet_volume(const std::array<Vec, 4>& v) {
    Eigen::Matrix3d M;
    for (int c = 0; c < 3; ++c)
        for (int r = 0; r < 3; ++r) M(r, c) = v[c + 1][r] - v[0][r];
    return std::fabs(M.determinant()) / 6.0;
}

namespace {

Vec edge_point(const Vec& a, double ga, const Vec& b, double gb) {
    double t = ga / (ga - gb);
    return a + t * (b - a);
}

double fan_volume(const std::vector<Vec>& pts, const std::vector<std::array<int, 3>>& tris) {
    Vec c = Vec::Zero(3);
    for (const auto& p : pts) c += p;
    c /= static_cast<double>(pts.size());
    double vol = 0.0;
    for (const auto& t : tris) {
        std::array<Vec, 4> tet = {c, pts[t[0]], pts[t[1]], pts[t[2]]};
        vol += tet_volume(tet);
    }
    return vol;
}

} // namespace

double tet_negative_fraction(const std::array<Vec, 4>& v, const std::array<double, 4>& g,
                             double volume) {
    int neg[4], pos[4], nn = 0, np = 0;
    for (int i = 0; i < 4; ++i) {
        if (g[i] < 0.0) neg[nn++] = i;
        else pos[np++] = i;
    }
    if (nn == 0) return 0.0;
    if (nn == 4) return 1.0;
    if (volume <= 0.0) return 0.0;
    if (nn == 1) {
        int a = neg[0];
        double f = 1.0;
        for (int i = 0; i < 3; ++i) f *= g[a] / (g[a] - g[pos[i]]);
        return std::min(1.0, std::fabs(f));
    }
    if (nn == 3) {
        int a = pos[0];
        double f = 1.0;
        for (int i = 0; i < 3; ++i) f *= g[a] / (g[a] - g[neg[i]]);
        return 1.0 - std::min(1.0, std::fabs(f));
    }
    // Two on each side: the negative region is a convex wedge with two
    // triangular and three (planar) quadrilateral faces.
    int A = neg[0], B = neg[1], C = pos[0], D = pos[1];
    std::vector<Vec> pts = {
        v[A],                                // 0
        v[B],                                // 1
        edge_point(v[A], g[A], v[C], g[C]),  // 2: pAC
        edge_point(v[A], g[A], v[D], g[D]),  // 3: pAD
        edge_point(v[B], g[B], v[C], g[C]),  // 4: pBC
        edge_point(v[B], g[B], v[D], g[D]),  // 5: pBD
    };
    std::vector<std::array<int, 3>> tris = {
        {0, 2, 3},                   // face through A
        {1, 4, 5},                   // face through B
        {0, 2, 4}, {0, 4, 1},        // quad A,pAC,pBC,B
        {0, 3, 5}, {0, 5, 1},        // quad A,pAD,pBD,B
        {2, 3, 5}, {2, 5, 4},        // cut quad pAC,pAD,pBD,pBC
    };
    return std::min(1.0, fan_volume(pts, tris) / volume);
}

} // namespace carnot
