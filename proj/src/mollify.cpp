#include "carnot/mollify.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace carnot {

namespace {

std::function<double(double)> profile_by_name(const std::string& name) {
    if (name == "linear") return [](double t) { return 1.0 - t; };
    if (name == "quadratic") return [](double t) { return (1.0 - t) * (1.0 - t); };
    throw std::invalid_argument("unknown mollifier profile '" + name +
                                "' (expected linear or quadratic)");
}

} // namespace

Mollifier Mollifier::make(const HomogeneousNorm& norm, const std::string& profile,
                          const Rng& rng, long mc_samples) {
    Mollifier m(norm, profile_by_name(profile), profile);
    const auto& a = norm.algebra();
    const int q = a.dim();
    const int Q = a.hom_dimension();

    BoxRegion cube = BoxRegion::cube(q, 1.0);
    auto ball = haar_volume_mc(cube, [&](const Vec& w) { return norm(w) < 1.0; }, mc_samples,
                               rng.child(1));
    m.mu_ball_ = ball.value;
    m.mu_ball_se_ = ball.std_error;

    std::vector<double> nodes, weights;
    gauss_legendre_01(64, nodes, weights);
    double radial = 0.0;
    for (size_t i = 0; i < nodes.size(); ++i)
        radial += weights[i] * std::pow(nodes[i], Q - 1) * m.profile_(nodes[i]);
    m.c_ = Q * m.mu_ball_ * radial;
    if (!(m.c_ > 0.0)) throw std::runtime_error("mollifier: normalization degenerate");

    // Independent cross-checks: unit mass within 3 combined standard errors,
    // and pointwise symmetry under inversion.
    const Rng check = rng.child(2);
    long n = mc_samples;
    double sum = 0.0, sum2 = 0.0;
    for (long s = 0; s < n; ++s) {
        Vec w = cube.sample(check, static_cast<uint64_t>(s));
        double v = m.rho(w);
        sum += v;
        sum2 += v * v;
    }
    const double vol = cube.volume();
    double mean = sum / n;
    double var = std::max(0.0, sum2 / n - mean * mean);
    double mass = vol * mean;
    double se = vol * std::sqrt(var / n);
    double se_ball_rel = ball.std_error / std::max(1e-300, ball.value);
    double tol = 3.0 * std::sqrt(se * se + se_ball_rel * se_ball_rel) + 1e-9;
    if (std::fabs(mass - 1.0) > tol)
        throw std::runtime_error("mollifier: normalization check failed (mass " +
                                 std::to_string(mass) + ")");

    const Rng sym = rng.child(3);
    for (long s = 0; s < 1000; ++s) {
        Vec w = cube.sample(sym, static_cast<uint64_t>(s));
        Vec wi = a.inverse(w);
        if (std::fabs(m.rho(w) - m.rho(wi)) > 1e-12)
            throw std::runtime_error("mollifier: profile not symmetric under inversion");
    }
    return m;
}

double Mollifier::rho(const GroupPoint& x) const {
    double t = norm_(x);
    if (t >= 1.0) return 0.0;
    return profile_(t) / c_;
}

double Mollifier::rho_eps(double eps, const GroupPoint& x) const {
    const auto& a = norm_.algebra();
    return std::pow(eps, -a.hom_dimension()) * rho(a.dilate(1.0 / eps, x));
}

namespace {

/// Self-normalized quadrature of w -> rho(w) * f(delta_eps(-w) p) over the
/// unit cube in w.
double ball_convolution(const Mollifier& m, double eps, const GroupPoint& p,
                        const std::function<double(const GroupPoint&)>& f,
                        const QuadratureSpec& quad, const Rng& rng) {
    const auto& a = m.algebra();
    const int q = a.dim();
    BoxRegion cube = BoxRegion::cube(q, 1.0);
    double num = 0.0, den = 0.0;
    auto accumulate = [&](const Vec& w, double weight) {
        double r = m.rho(w);
        if (r == 0.0) return;
        Vec y = a.dilate(eps, a.inverse(w));
        num += weight * r * f(a.product(y, p));
        den += weight * r;
    };
    if (quad.kind == QuadratureSpec::Kind::TensorGrid) {
        for_each_tensor_node(cube, quad.resolution, accumulate);
    } else {
        long pairs = (quad.samples + 1) / 2;
        for (long s = 0; s < pairs; ++s) {
            Vec w = cube.sample(rng, static_cast<uint64_t>(s));
            accumulate(w, 1.0);
            accumulate(Vec(-w), 1.0);
        }
    }
    if (den == 0.0) throw std::runtime_error("mollify: quadrature missed the unit ball");
    return num / den;
}

} // namespace

double mollify_scalar(const Mollifier& m, double eps, const ScalarField& f, const GroupPoint& p,
                      const QuadratureSpec& quad, const Rng& rng, const BoxRegion* region) {
    if (!(eps > 0.0)) throw std::domain_error("mollify_scalar: eps must be positive");
    quad.validate(m.algebra().dim());
    if (region && !inner_set_indicator(m.norm(), *region, eps, p))
        throw std::domain_error(
            "mollify_scalar: point is not in the eps-right-inner set of the region");
    return ball_convolution(m, eps, p, f.eval, quad, rng);
}

double right_ball_average(const HomogeneousNorm& norm, const ScalarField& f, const GroupPoint& p,
                          double r, const QuadratureSpec& quad, const Rng& rng,
                          const BoxRegion* region) {
    if (!(r > 0.0)) throw std::domain_error("right_ball_average: radius must be positive");
    const auto& a = norm.algebra();
    quad.validate(a.dim());
    if (region && !inner_set_indicator(norm, *region, r, p))
        throw std::domain_error(
            "right_ball_average: right ball is not contained in the region");
    BoxRegion cube = BoxRegion::cube(a.dim(), 1.0);
    double num = 0.0, den = 0.0;
    auto accumulate = [&](const Vec& w, double weight) {
        if (norm(w) >= 1.0) return;
        Vec y = a.dilate(r, w);
        num += weight * f.eval(a.product(y, p));
        den += weight;
    };
    if (quad.kind == QuadratureSpec::Kind::TensorGrid) {
        for_each_tensor_node(cube, quad.resolution, accumulate);
    } else {
        long pairs = (quad.samples + 1) / 2;
        for (long s = 0; s < pairs; ++s) {
            Vec w = cube.sample(rng, static_cast<uint64_t>(s));
            accumulate(w, 1.0);
            accumulate(Vec(-w), 1.0);
        }
    }
    if (den == 0.0) throw std::runtime_error("right_ball_average: no accepted samples");
    return num / den;
}

double commutation_residual(const Mollifier& m, double eps, const ScalarField& f, int j,
                            const GroupPoint& p, const QuadratureSpec& quad, double h,
                            const Rng& rng, const BoxRegion* region) {
    const auto& a = m.algebra();
    if (!f.hgrad)
        throw std::invalid_argument("commutation_residual: field needs an analytic gradient");
    if (j < 0 || j >= a.horizontal_dim())
        throw std::out_of_range("commutation_residual: frame index out of range");
    if (region && !inner_set_indicator(m.norm(), *region, 2.0 * eps, p))
        throw std::domain_error(
            "commutation_residual: point is not in the 2eps-right-inner set");

    double up = ball_convolution(m, eps, a.flow(p, j, h), f.eval, quad, rng.child(10));
    double dn = ball_convolution(m, eps, a.flow(p, j, -h), f.eval, quad, rng.child(10));
    double lhs = (up - dn) / (2.0 * h);

    ScalarField xjf;
    xjf.eval = [&f, j](const GroupPoint& x) { return f.hgrad(x)[j]; };
    QuadratureSpec other = quad;
    if (other.kind == QuadratureSpec::Kind::TensorGrid) {
        for (int i = 0; i < a.dim(); ++i) other.resolution[i] += 3;
    }
    double rhs = ball_convolution(m, eps, p, xjf.eval, other, rng.child(11));
    return std::fabs(lhs - rhs);
}

double mollified_indicator(const Mollifier& m, double eps, const DomainSpec& E,
                           const GroupPoint& p, long samples, const Rng& rng) {
    const auto& a = m.algebra();
    BoxRegion cube = BoxRegion::cube(a.dim(), 1.0);
    double num = 0.0, den = 0.0;
    long pairs = (samples + 1) / 2;
    for (long s = 0; s < pairs; ++s) {
        Vec w = cube.sample(rng, static_cast<uint64_t>(s));
        for (int sign = 0; sign < 2; ++sign) {
            Vec ws = sign ? Vec(-w) : w;
            double r = m.rho(ws);
            if (r == 0.0) continue;
            Vec y = a.dilate(eps, a.inverse(ws));
            num += r * (E.inside(a.product(y, p)) ? 1.0 : 0.0);
            den += r;
        }
    }
    if (den == 0.0) throw std::runtime_error("mollified_indicator: no mass sampled");
    return num / den;
}

namespace {

/// Uniform bucket index over the first-layer coordinates, cell size eps;
/// candidates for |x_i - y_i| < eps live in the 3^b neighbor cells.
class FirstLayerBuckets {
public:
    FirstLayerBuckets(const std::vector<BoundarySample>& samples, int m, double eps)
        : m_(std::min(m, 3)), eps_(eps) {
        for (size_t i = 0; i < samples.size(); ++i)
            map_[key(samples[i].point)].push_back(static_cast<int>(i));
    }

    template <class F>
    void for_candidates(const Vec& x, F&& fn) const {
        std::array<long, 3> base{};
        for (int d = 0; d < m_; ++d) base[d] = cell(x[d]);
        std::array<long, 3> c = base;
        int n = m_;
        // 3^n neighbor cells
        int total = 1;
        for (int d = 0; d < n; ++d) total *= 3;
        for (int t = 0; t < total; ++t) {
            int tt = t;
            for (int d = 0; d < n; ++d) {
                c[d] = base[d] + (tt % 3) - 1;
                tt /= 3;
            }
            auto it = map_.find(pack(c));
            if (it == map_.end()) continue;
            for (int idx : it->second) fn(idx);
        }
    }

private:
    long cell(double v) const { return static_cast<long>(std::floor(v / eps_)); }
    uint64_t key(const Vec& p) const {
        std::array<long, 3> c{};
        for (int d = 0; d < m_; ++d) c[d] = cell(p[d]);
        return pack(c);
    }
    static uint64_t pack(const std::array<long, 3>& c) {
        uint64_t h = 1469598103934665603ull;
        for (long v : c) {
            h ^= static_cast<uint64_t>(v + (1ll << 40));
            h *= 1099511628211ull;
        }
        return h;
    }

    int m_;
    double eps_;
    std::unordered_map<uint64_t, std::vector<int>> map_;
};

} // namespace

TvBoundResult total_variation_bound_check(const Mollifier& m, double eps, const DomainSpec& E,
                                          const BoxRegion& window, int boundary_resolution,
                                          const QuadratureSpec& volume_quad, const Rng& rng) {
    const auto& a = m.algebra();
    const int mdim = a.horizontal_dim();
    auto samples = sample_boundary(a, E, boundary_resolution);

    TvBoundResult res;
    std::vector<BoundarySample> inside;
    for (auto& s : samples)
        if (window.contains(s.point)) inside.push_back(s);
    res.rhs = h_perimeter(inside);

    FirstLayerBuckets buckets(inside, mdim, eps);
    Vec g(mdim);
    auto gradient_norm = [&](const Vec& x) {
        g.setZero();
        buckets.for_candidates(x, [&](int idx) {
            const auto& s = inside[idx];
            bool skip = false;
            for (int d = 0; d < mdim; ++d)
                if (std::fabs(x[d] - s.point[d]) >= eps) { skip = true; break; }
            if (skip) return;
            double r = m.rho_eps(eps, a.product(x, a.inverse(s.point)));
            if (r == 0.0) return;
            g += (r * s.weight) * s.hcoeffs; // hcoeffs already carries the density

        });
        return g.norm();
    };

    auto integrand = [&](const Vec& x) -> double {
        if (!inner_set_indicator(m.norm(), window, 2.0 * eps, x)) return 0.0;
        ++res.nodes;
        return gradient_norm(x);
    };
    res.lhs = integrate_box(window, integrand, volume_quad, rng);
    return res;
}

} // namespace carnot
