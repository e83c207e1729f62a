#include "carnot/gaussgreen.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace carnot {

GaussGreenReport GaussGreenReport::make(const std::string& scenario, double lhs, double rhs,
                                        double tolerance, const std::string& meta) {
    GaussGreenReport r;
    r.scenario = scenario;
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = std::fabs(lhs - rhs);
    r.tolerance = tolerance;
    r.meta = meta;
    if (std::fabs(rhs) >= 1e-8) {
        r.rel_residual = r.residual / std::fabs(rhs);
        r.absolute_mode = false;
    } else {
        r.rel_residual = r.residual;
        r.absolute_mode = true;
    }
    r.pass = r.rel_residual <= tolerance;
    return r;
}

GreenFunction make_poly_green(const StratifiedAlgebra& a, const Poly& u,
                              const std::string& name) {
    GreenFunction g;
    g.f = make_poly_scalar(a, u, name);
    Poly lap = sub_laplacian_poly(a, u);
    const int q = a.dim();
    g.sublap = [lap, q](const GroupPoint& p) { return lap.eval(p.data(), q); };
    g.name = name;
    return g;
}

GaussGreenReport verify_gauss_green(const StratifiedAlgebra& a, const HorizontalField& F,
                                    const DomainSpec& d, int boundary_resolution,
                                    const QuadratureSpec& volume_quad, double tolerance,
                                    const Rng& rng, const std::string& scenario) {
    if (!F.div)
        throw std::invalid_argument("verify_gauss_green: field needs an analytic divergence");
    ScalarField divf;
    divf.eval = F.div;
    double lhs = volume_integral(a, d, divf, volume_quad, rng.child(1));
    auto samples = sample_boundary(a, d, boundary_resolution);
    double rhs = 0.0;
    for (const auto& s : samples) rhs += F.coeffs(s.point).dot(s.hcoeffs) * s.weight;
    char meta[160];
    std::snprintf(meta, sizeof(meta), "bres=%d;vol=%s;field=%s;domain=%s", boundary_resolution,
                  volume_quad.str().c_str(), F.name.c_str(), d.name.c_str());
    return GaussGreenReport::make(scenario, lhs, rhs, tolerance, meta);
}

GaussGreenReport verify_green_first(const StratifiedAlgebra& a, const GreenFunction& u,
                                    const ScalarField& v, const DomainSpec& d,
                                    int boundary_resolution, const QuadratureSpec& volume_quad,
                                    double tolerance, const Rng& rng,
                                    const std::string& scenario) {
    ScalarField vlap;
    vlap.eval = [&](const GroupPoint& p) { return v.eval(p) * u.sublap(p); };
    double lhs = volume_integral(a, d, vlap, volume_quad, rng.child(1));

    auto samples = sample_boundary(a, d, boundary_resolution);
    double flux = 0.0;
    for (const auto& s : samples)
        flux += v.eval(s.point) * u.f.hgrad(s.point).dot(s.hcoeffs) * s.weight;

    ScalarField dot;
    dot.eval = [&](const GroupPoint& p) {
        return horizontal_gradient(a, v, p).dot(u.f.hgrad(p));
    };
    double bulk = volume_integral(a, d, dot, volume_quad, rng.child(2));

    char meta[160];
    std::snprintf(meta, sizeof(meta), "bres=%d;vol=%s;u=%s;v=%s;domain=%s", boundary_resolution,
                  volume_quad.str().c_str(), u.name.c_str(), v.name.c_str(), d.name.c_str());
    return GaussGreenReport::make(scenario, lhs, flux - bulk, tolerance, meta);
}

GaussGreenReport verify_green_second(const StratifiedAlgebra& a, const GreenFunction& u,
                                     const GreenFunction& v, const DomainSpec& d,
                                     int boundary_resolution, const QuadratureSpec& volume_quad,
                                     double tolerance, const Rng& rng,
                                     const std::string& scenario) {
    ScalarField wronsk;
    wronsk.eval = [&](const GroupPoint& p) {
        return v.f.eval(p) * u.sublap(p) - u.f.eval(p) * v.sublap(p);
    };
    double lhs = volume_integral(a, d, wronsk, volume_quad, rng.child(1));

    auto samples = sample_boundary(a, d, boundary_resolution);
    double rhs = 0.0;
    for (const auto& s : samples) {
        Vec flux = v.f.eval(s.point) * u.f.hgrad(s.point) - u.f.eval(s.point) * v.f.hgrad(s.point);
        rhs += flux.dot(s.hcoeffs) * s.weight;
    }
    char meta[160];
    std::snprintf(meta, sizeof(meta), "bres=%d;vol=%s;u=%s;v=%s;domain=%s", boundary_resolution,
                  volume_quad.str().c_str(), u.name.c_str(), v.name.c_str(), d.name.c_str());
    return GaussGreenReport::make(scenario, lhs, rhs, tolerance, meta);
}

std::vector<GaussGreenReport> verify_half_density(const Mollifier& m, const DomainSpec& d,
                                                  const std::vector<double>& eps_ladder,
                                                  const std::function<double(const BoundarySample&)>& phi,
                                                  int boundary_resolution, long ball_samples,
                                                  const Rng& rng, double final_tol,
                                                  double trend_slack,
                                                  const std::string& scenario) {
    const auto& a = m.algebra();
    if (eps_ladder.empty()) throw std::invalid_argument("half_density: empty eps ladder");
    for (size_t i = 1; i < eps_ladder.size(); ++i)
        if (!(eps_ladder[i] < eps_ladder[i - 1]))
            throw std::invalid_argument("half_density: eps ladder must be strictly decreasing");
    // Keep the boundary patch whose 2*eps_max right balls stay inside the
    // bbox; the patch is fixed across the ladder so the trend is comparable.
    // A compactly contained domain with sufficient margin keeps every sample.
    auto all_samples = sample_boundary(a, d, boundary_resolution);
    const double eps_max = eps_ladder.front();
    std::vector<BoundarySample> samples;
    for (const auto& s : all_samples)
        if (inner_set_indicator(m.norm(), d.bbox, 2.0 * eps_max, s.point))
            samples.push_back(s);
    if (samples.empty())
        throw std::domain_error(
            "half_density: no boundary sample has 2*eps margin inside the bbox");

    double denom = boundary_integral(samples, phi);
    if (std::fabs(denom) < 1e-14)
        throw std::runtime_error("half_density: boundary weight integrates to zero");

    std::vector<GaussGreenReport> out;
    double prev_err = 0.0;
    for (size_t k = 0; k < eps_ladder.size(); ++k) {
        double eps = eps_ladder[k];
        Rng level = rng.child(100 + k);
        double num = 0.0;
        long idx = 0;
        for (const auto& s : samples) {
            if (s.density < kCharacteristicThreshold) { ++idx; continue; }
            double mc = mollified_indicator(m, eps, d, s.point, ball_samples, level.child(idx));
            num += phi(s) * mc * s.density * s.weight;
            ++idx;
        }
        double A = num / denom;
        double err = std::fabs(A - 0.5);
        bool ok = (k + 1 == eps_ladder.size()) ? (err <= final_tol)
                                               : true;
        if (k > 0 && err > prev_err * (1.0 + trend_slack) + 1e-4) ok = false;
        char meta[160];
        std::snprintf(meta, sizeof(meta), "eps=%g;bres=%d;ball_samples=%ld;domain=%s", eps,
                      boundary_resolution, ball_samples, d.name.c_str());
        auto r = GaussGreenReport::make(scenario + "_eps" + std::to_string(k), A, 0.5,
                                        final_tol, meta);
        r.pass = ok;
        out.push_back(r);
        prev_err = err;
    }
    return out;
}

GaussGreenReport verify_trace_locality(const StratifiedAlgebra& a, const HorizontalField& F,
                                       const DomainSpec& d1, const DomainSpec& d2,
                                       const std::function<bool(const Vec&)>& patch,
                                       int boundary_resolution, double tolerance,
                                       const std::string& scenario) {
    auto samples = sample_boundary(a, d1, boundary_resolution);
    long used = 0;
    double worst = 0.0;
    for (const auto& s : samples) {
        if (!patch(s.point)) continue;
        Vec g2 = d2.level.egrad ? d2.level.egrad(s.point) : Vec();
        if (g2.size() == 0)
            throw std::invalid_argument("trace_locality: second domain needs an analytic "
                                        "level gradient");
        double gn = g2.norm();
        if (gn < 1e-8) continue;
        BoundarySample s2;
        s2.point = s.point;
        s2.normal = g2 / gn;
        attach_horizontal_data(a, s2);
        double sign = s.normal.dot(s2.normal) >= 0.0 ? 1.0 : -1.0;
        if (s.density < kCharacteristicThreshold || s2.density < kCharacteristicThreshold)
            continue;
        Vec Fc = F.coeffs(s.point);
        double t1 = Fc.dot(s.hcoeffs) / s.density;
        double t2 = Fc.dot(s2.hcoeffs) / s2.density;
        worst = std::max(worst, std::fabs(t1 - sign * t2));
        ++used;
    }
    if (used == 0) throw std::runtime_error("trace_locality: empty shared patch");
    char meta[160];
    std::snprintf(meta, sizeof(meta), "bres=%d;patch_samples=%ld;d1=%s;d2=%s",
                  boundary_resolution, used, d1.name.c_str(), d2.name.c_str());
    return GaussGreenReport::make(scenario, worst, 0.0, tolerance, meta);
}

std::vector<GaussGreenReport> verify_divergence_free(const StratifiedAlgebra& a,
                                                     const HorizontalField& F,
                                                     const std::vector<ScalarField>& bumps,
                                                     const std::vector<BoxRegion>& regions,
                                                     const QuadratureSpec& quad, double tolerance,
                                                     const Rng& rng, const std::string& scenario) {
    if (bumps.size() != regions.size())
        throw std::invalid_argument("verify_divergence_free: one region per bump required");
    std::vector<GaussGreenReport> out;
    for (size_t i = 0; i < bumps.size(); ++i) {
        double pairing = distributional_divergence_pairing(a, F, bumps[i], regions[i], quad,
                                                           rng.child(i));
        char meta[160];
        std::snprintf(meta, sizeof(meta), "bump=%zu;quad=%s;field=%s", i, quad.str().c_str(),
                      F.name.c_str());
        out.push_back(GaussGreenReport::make(scenario + "_bump" + std::to_string(i), pairing,
                                             0.0, tolerance, meta));
    }
    return out;
}

GaussGreenReport verify_trace_bound(const StratifiedAlgebra& a, const HorizontalField& F,
                                    const DomainSpec& d, int boundary_resolution,
                                    const QuadratureSpec& volume_quad, const Rng& rng,
                                    double tolerance, const std::string& scenario) {
    auto samples = sample_boundary(a, d, boundary_resolution);
    double sup_field = 0.0;
    for (const auto& s : samples) sup_field = std::max(sup_field, F.coeffs(s.point).norm());
    // Interior sup of |F|_g over quadrature nodes of E.
    if (volume_quad.kind == QuadratureSpec::Kind::MonteCarlo) {
        for (long s = 0; s < volume_quad.samples; ++s) {
            Vec p = d.bbox.sample(rng, static_cast<uint64_t>(s));
            if (d.inside(p)) sup_field = std::max(sup_field, F.coeffs(p).norm());
        }
    } else {
        for_each_tensor_node(d.bbox, volume_quad.resolution, [&](const Vec& p, double) {
            if (d.inside(p)) sup_field = std::max(sup_field, F.coeffs(p).norm());
        });
    }
    double worst = 0.0;
    for (const auto& s : samples) {
        if (s.density < kCharacteristicThreshold) continue;
        double trace = std::fabs(F.coeffs(s.point).dot(s.hcoeffs)) / s.density;
        worst = std::max(worst, trace - sup_field);
    }
    worst = std::max(worst, 0.0);
    char meta[160];
    std::snprintf(meta, sizeof(meta), "bres=%d;sup=%.6g;field=%s;domain=%s", boundary_resolution,
                  sup_field, F.name.c_str(), d.name.c_str());
    return GaussGreenReport::make(scenario, worst, 0.0, tolerance, meta);
}

} // namespace carnot
