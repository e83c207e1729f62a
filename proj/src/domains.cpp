#include "carnot/domains.hpp"

#include <cmath>
#include <stdexcept>

namespace carnot {

namespace {

Vec euclidean_gradient(const ScalarField& f, const Vec& p, double h = 1e-6) {
    if (f.egrad) return f.egrad(p);
    Vec g(p.size());
    Vec e = p;
    for (int i = 0; i < p.size(); ++i) {
        e[i] = p[i] + h;
        double fp = f.eval(e);
        e[i] = p[i] - h;
        double fm = f.eval(e);
        e[i] = p[i];
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

// Corner offsets of the 6-tetrahedra decomposition of a cube around the main
// diagonal 000-111; every tet is positively oriented and they tile the cube.
constexpr int kTets[6][4] = {
    {0, 1, 3, 7}, {0, 3, 2, 7}, {0, 2, 6, 7}, {0, 6, 4, 7}, {0, 4, 5, 7}, {0, 5, 1, 7},
};

struct CornerGrid {
    int n; // corners per axis
    Vec lo;
    double hx, hy, hz;
    std::vector<double> values;

    CornerGrid(const DomainSpec& d, int res) : n(res + 1), lo(d.bbox.lower) {
        hx = (d.bbox.upper[0] - d.bbox.lower[0]) / res;
        hy = (d.bbox.upper[1] - d.bbox.lower[1]) / res;
        hz = (d.bbox.upper[2] - d.bbox.lower[2]) / res;
        values.resize(static_cast<size_t>(n) * n * n);
        Vec p(3);
        for (int iz = 0; iz < n; ++iz)
            for (int iy = 0; iy < n; ++iy)
                for (int ix = 0; ix < n; ++ix) {
                    p[0] = lo[0] + ix * hx;
                    p[1] = lo[1] + iy * hy;
                    p[2] = lo[2] + iz * hz;
                    values[idx(ix, iy, iz)] = d.level.eval(p);
                }
    }

    size_t idx(int ix, int iy, int iz) const {
        return static_cast<size_t>(ix) + static_cast<size_t>(n) * (iy + static_cast<size_t>(n) * iz);
    }

    Vec corner(int ix, int iy, int iz) const {
        Vec p(3);
        p[0] = lo[0] + ix * hx;
        p[1] = lo[1] + iy * hy;
        p[2] = lo[2] + iz * hz;
        return p;
    }
};

Vec edge_cross(const Vec& a, double ga, const Vec& b, double gb) {
    double t = ga / (ga - gb);
    return a + t * (b - a);
}

double tri_area(const Vec& a, const Vec& b, const Vec& c) {
    Eigen::Vector3d u, v;
    for (int i = 0; i < 3; ++i) {
        u[i] = b[i] - a[i];
        v[i] = c[i] - a[i];
    }
    return 0.5 * u.cross(v).norm();
}

void emit_triangle(const StratifiedAlgebra& a, const DomainSpec& d, const Vec& p0, const Vec& p1,
                   const Vec& p2, std::vector<BoundarySample>& out) {
    double area = tri_area(p0, p1, p2);
    if (area < 1e-30) return;
    BoundarySample s;
    s.point = (p0 + p1 + p2) / 3.0;
    Vec g = euclidean_gradient(d.level, s.point);
    double gn = g.norm();
    if (gn < 1e-8)
        throw std::runtime_error("sample_boundary: level gradient degenerates on '" + d.name +
                                 "' (non-regular level set)");
    s.normal = g / gn;
    s.weight = area;
    attach_horizontal_data(a, s);
    out.push_back(s);
}

// Triangles of the zero set of the linear interpolant on one tetrahedron.
void march_tet(const StratifiedAlgebra& a, const DomainSpec& d, const std::array<Vec, 4>& v,
               const std::array<double, 4>& g, std::vector<BoundarySample>& out) {
    int neg[4], pos[4], nn = 0, np = 0;
    for (int i = 0; i < 4; ++i) {
        if (g[i] < 0.0) neg[nn++] = i;
        else pos[np++] = i;
    }
    if (nn == 0 || nn == 4) return;
    if (nn == 1 || nn == 3) {
        int apex = (nn == 1) ? neg[0] : pos[0];
        int* other = (nn == 1) ? pos : neg;
        Vec p0 = edge_cross(v[apex], g[apex], v[other[0]], g[other[0]]);
        Vec p1 = edge_cross(v[apex], g[apex], v[other[1]], g[other[1]]);
        Vec p2 = edge_cross(v[apex], g[apex], v[other[2]], g[other[2]]);
        emit_triangle(a, d, p0, p1, p2, out);
        return;
    }
    int A = neg[0], B = neg[1], C = pos[0], D = pos[1];
    Vec pac = edge_cross(v[A], g[A], v[C], g[C]);
    Vec pad = edge_cross(v[A], g[A], v[D], g[D]);
    Vec pbc = edge_cross(v[B], g[B], v[C], g[C]);
    Vec pbd = edge_cross(v[B], g[B], v[D], g[D]);
    emit_triangle(a, d, pac, pad, pbd, out);
    emit_triangle(a, d, pac, pbd, pbc, out);
}

std::vector<BoundarySample> mesh_level_set(const StratifiedAlgebra& a, const DomainSpec& d,
                                           int res) {
    if (a.dim() != 3)
        throw std::invalid_argument(
            "sample_boundary: level-set meshing is implemented for q == 3 only; provide "
            "boundary charts for '" + d.name + "'");
    CornerGrid grid(d, res);
    std::vector<BoundarySample> out;
    std::array<Vec, 8> cv;
    std::array<double, 8> cg;
    for (int iz = 0; iz < res; ++iz)
        for (int iy = 0; iy < res; ++iy)
            for (int ix = 0; ix < res; ++ix) {
                bool any_neg = false, any_pos = false;
                for (int b = 0; b < 8; ++b) {
                    int jx = ix + (b & 1), jy = iy + ((b >> 1) & 1), jz = iz + ((b >> 2) & 1);
                    cg[b] = grid.values[grid.idx(jx, jy, jz)];
                    (cg[b] < 0.0 ? any_neg : any_pos) = true;
                }
                if (!any_neg || !any_pos) continue;
                for (int b = 0; b < 8; ++b) {
                    int jx = ix + (b & 1), jy = iy + ((b >> 1) & 1), jz = iz + ((b >> 2) & 1);
                    cv[b] = grid.corner(jx, jy, jz);
                }
                for (const auto& tet : kTets) {
                    std::array<Vec, 4> v = {cv[tet[0]], cv[tet[1]], cv[tet[2]], cv[tet[3]]};
                    std::array<double, 4> g = {cg[tet[0]], cg[tet[1]], cg[tet[2]], cg[tet[3]]};
                    march_tet(a, d, v, g, out);
                }
            }
    return out;
}

} // namespace

void attach_horizontal_data(const StratifiedAlgebra& a, BoundarySample& s) {
    const int m = a.horizontal_dim(), q = a.dim();
    Mat fr = a.frame_coefficients(s.point);
    s.hcoeffs.resize(m);
    for (int j = 0; j < m; ++j) {
        double c = 0.0;
        for (int i = 0; i < q; ++i) c += s.normal[i] * fr(j, i);
        s.hcoeffs[j] = c;
    }
    s.density = s.hcoeffs.norm();
}

std::optional<Vec> horizontal_normal(const StratifiedAlgebra& a, const BoundarySample& s) {
    (void)a;
    if (s.density < kCharacteristicThreshold) return std::nullopt;
    return Vec(s.hcoeffs / s.density);
}

std::vector<BoundarySample> sample_boundary(const StratifiedAlgebra& a, const DomainSpec& d,
                                            int resolution) {
    if (resolution < 1) throw std::invalid_argument("sample_boundary: resolution must be >= 1");
    std::vector<BoundarySample> out;
    if (!d.charts.empty()) {
        for (const auto& chart : d.charts) {
            const int pd = chart.param.dim();
            std::array<int, kMaxQ> res{};
            for (int j = 0; j < pd; ++j) res[j] = resolution;
            std::array<int, kMaxQ> idx{};
            Vec uv(pd);
            std::array<double, kMaxQ> h{};
            double cellvol = 1.0;
            for (int j = 0; j < pd; ++j) {
                h[j] = (chart.param.upper[j] - chart.param.lower[j]) / resolution;
                cellvol *= h[j];
            }
            bool done = false;
            while (!done) {
                for (int j = 0; j < pd; ++j)
                    uv[j] = chart.param.lower[j] + (idx[j] + 0.5) * h[j];
                BoundarySample s;
                double ae = 1.0;
                chart.map(uv, s.point, s.normal, ae);
                s.normal.normalize();
                s.weight = ae * cellvol;
                attach_horizontal_data(a, s);
                out.push_back(s);
                int j = 0;
                for (; j < pd; ++j) {
                    if (++idx[j] < resolution) break;
                    idx[j] = 0;
                }
                done = (j == pd);
            }
        }
    } else {
        out = mesh_level_set(a, d, resolution);
    }
    if (out.empty())
        throw std::runtime_error("sample_boundary: empty boundary for '" + d.name + "'");
    return out;
}

double h_perimeter(const std::vector<BoundarySample>& samples) {
    double sum = 0.0;
    for (const auto& s : samples) sum += s.density * s.weight;
    return sum;
}

double h_perimeter(const StratifiedAlgebra& a, const DomainSpec& d, int resolution) {
    return h_perimeter(sample_boundary(a, d, resolution));
}

double boundary_integral(const std::vector<BoundarySample>& samples,
                         const std::function<double(const BoundarySample&)>& g) {
    double sum = 0.0;
    for (const auto& s : samples) {
        if (s.density < kCharacteristicThreshold) continue;
        sum += g(s) * s.density * s.weight;
    }
    return sum;
}

double boundary_integral(const StratifiedAlgebra& a, const DomainSpec& d,
                         const std::function<double(const BoundarySample&)>& g, int resolution) {
    return boundary_integral(sample_boundary(a, d, resolution), g);
}

double volume_integral(const StratifiedAlgebra& a, const DomainSpec& d, const ScalarField& f,
                       const QuadratureSpec& quad, const Rng& rng) {
    const int q = a.dim();
    quad.validate(q);
    if (quad.kind == QuadratureSpec::Kind::MonteCarlo) {
        double sum = 0.0;
        for (long s = 0; s < quad.samples; ++s) {
            Vec p = d.bbox.sample(rng, static_cast<uint64_t>(s));
            if (d.inside(p)) sum += f.eval(p);
        }
        return d.bbox.volume() * sum / static_cast<double>(quad.samples);
    }

    if (q != 3) {
        // Indicator-weighted tensor rule; adequate when the domain boundary
        // is grid-aligned or absent.
        double sum = 0.0;
        for_each_tensor_node(d.bbox, quad.resolution, [&](const Vec& p, double w) {
            if (d.inside(p)) sum += w * f.eval(p);
        });
        return sum;
    }

    // q == 3: resolve boundary cells by an exact plane-cut volume fraction on
    // the 6-tetrahedra decomposition of each cell.
    const int res = quad.resolution[0];
    if (quad.resolution[1] != res || quad.resolution[2] != res)
        throw std::invalid_argument("volume_integral: cut-cell grid must be isotropic");
    CornerGrid grid(d, res);
    const double off = 1.0 / std::sqrt(3.0);
    const double cellvol = grid.hx * grid.hy * grid.hz;
    double sum = 0.0;
    Vec p(3);
    std::array<Vec, 8> cv;
    std::array<double, 8> cg;
    for (int iz = 0; iz < res; ++iz)
        for (int iy = 0; iy < res; ++iy)
            for (int ix = 0; ix < res; ++ix) {
                bool any_neg = false, any_pos = false;
                for (int b = 0; b < 8; ++b) {
                    cg[b] = grid.values[grid.idx(ix + (b & 1), iy + ((b >> 1) & 1),
                                                 iz + ((b >> 2) & 1))];
                    (cg[b] < 0.0 ? any_neg : any_pos) = true;
                }
                if (!any_neg) continue;
                if (!any_pos) {
                    // Interior cell: 2-pt Gauss per axis.
                    for (int mask = 0; mask < 8; ++mask) {
                        p[0] = grid.lo[0] + (ix + 0.5 + ((mask & 1) ? off : -off) * 0.5) * grid.hx;
                        p[1] = grid.lo[1] + (iy + 0.5 + ((mask & 2) ? off : -off) * 0.5) * grid.hy;
                        p[2] = grid.lo[2] + (iz + 0.5 + ((mask & 4) ? off : -off) * 0.5) * grid.hz;
                        sum += cellvol / 8.0 * f.eval(p);
                    }
                    continue;
                }
                for (int b = 0; b < 8; ++b)
                    cv[b] = grid.corner(ix + (b & 1), iy + ((b >> 1) & 1), iz + ((b >> 2) & 1));
                for (const auto& tet : kTets) {
                    std::array<Vec, 4> v = {cv[tet[0]], cv[tet[1]], cv[tet[2]], cv[tet[3]]};
                    std::array<double, 4> g = {cg[tet[0]], cg[tet[1]], cg[tet[2]], cg[tet[3]]};
                    double vol = cellvol / 6.0;
                    double frac = tet_negative_fraction(v, g, vol);
                    if (frac <= 0.0) continue;
                    Vec c = 0.25 * (v[0] + v[1] + v[2] + v[3]);
                    sum += frac * vol * f.eval(c);
                }
            }
    return sum;
}

DomainSpec dilate_domain(const StratifiedAlgebra& a, const DomainSpec& d, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("dilate_domain: lambda must be positive");
    const int q = a.dim();
    DomainSpec out;
    out.name = d.name + "_dil";
    ScalarField base = d.level;
    out.level.eval = [&a, base, lambda](const GroupPoint& p) {
        return base.eval(a.dilate(1.0 / lambda, p));
    };
    if (base.egrad) {
        out.level.egrad = [&a, base, lambda, q](const GroupPoint& p) {
            Vec g = base.egrad(a.dilate(1.0 / lambda, p));
            for (int i = 0; i < q; ++i) g[i] *= std::pow(lambda, -a.degree(i));
            return g;
        };
    }
    Vec lo(q), hi(q);
    for (int i = 0; i < q; ++i) {
        double s = std::pow(lambda, a.degree(i));
        lo[i] = d.bbox.lower[i] * s;
        hi[i] = d.bbox.upper[i] * s;
    }
    out.bbox = BoxRegion(lo, hi);
    return out;
}

DomainSpec negate_domain(const DomainSpec& d) {
    DomainSpec out;
    out.name = "neg_" + d.name;
    out.bbox = d.bbox;
    ScalarField base = d.level;
    out.level.eval = [base](const GroupPoint& p) { return -base.eval(p); };
    if (base.egrad)
        out.level.egrad = [base](const GroupPoint& p) { return Vec(-base.egrad(p)); };
    for (const auto& chart : d.charts) {
        BoundaryChart c = chart;
        auto inner = chart.map;
        c.map = [inner](const Vec& uv, Vec& point, Vec& normal, double& ae) {
            inner(uv, point, normal, ae);
            normal = -normal;
        };
        out.charts.push_back(std::move(c));
    }
    return out;
}

} // namespace carnot
