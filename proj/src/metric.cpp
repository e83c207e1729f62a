#include "carnot/metric.hpp"

#include <cmath>
#include <stdexcept>

namespace carnot {

NormKind norm_kind_from_string(const std::string& s) {
    if (s == "gauge") return NormKind::Gauge;
    if (s == "box") return NormKind::Box;
    throw std::invalid_argument("unknown norm kind '" + s + "' (expected gauge or box)");
}

double HomogeneousNorm::operator()(const GroupPoint& x) const {
    const auto& a = *alg_;
    a.check_point(x, "norm");
    double best = 0.0;
    if (kind_ == NormKind::Gauge) {
        int j = 0;
        for (int layer = 1; layer <= a.step(); ++layer) {
            double s2 = 0.0;
            for (; j < a.dim() && a.degree(j) == layer; ++j) s2 += x[j] * x[j];
            if (s2 > 0.0) best = std::max(best, std::pow(s2, 0.5 / layer));
        }
    } else {
        for (int j = 0; j < a.dim(); ++j)
            if (x[j] != 0.0)
                best = std::max(best, std::pow(std::fabs(x[j]), 1.0 / a.degree(j)));
    }
    return best;
}

double HomogeneousNorm::dist(const GroupPoint& p, const GroupPoint& q) const {
    return (*this)(alg_->product(alg_->inverse(p), q));
}

double HomogeneousNorm::dist_right(const GroupPoint& p, const GroupPoint& q) const {
    return (*this)(alg_->product(p, alg_->inverse(q)));
}

BoxRegion::BoxRegion(Vec lo, Vec hi) : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() != upper.size())
        throw std::invalid_argument("BoxRegion: dimension mismatch");
    for (int j = 0; j < lower.size(); ++j)
        if (!(lower[j] < upper[j]))
            throw std::invalid_argument("BoxRegion: lower must be strictly below upper");
}

BoxRegion BoxRegion::cube(int q, double half_width) {
    Vec lo = Vec::Constant(q, -half_width), hi = Vec::Constant(q, half_width);
    return BoxRegion(lo, hi);
}

double BoxRegion::volume() const {
    double v = 1.0;
    for (int j = 0; j < lower.size(); ++j) v *= upper[j] - lower[j];
    return v;
}

bool BoxRegion::contains(const Vec& p) const {
    for (int j = 0; j < lower.size(); ++j)
        if (p[j] < lower[j] || p[j] > upper[j]) return false;
    return true;
}

Vec BoxRegion::sample(const Rng& rng, uint64_t ctr) const {
    Vec p(lower.size());
    for (int j = 0; j < lower.size(); ++j)
        p[j] = rng.uniform(ctr * kMaxQ + j, lower[j], upper[j]);
    return p;
}

BoxRegion BoxRegion::padded(double pad) const {
    return BoxRegion(lower.array() - pad, upper.array() + pad);
}

bool inner_set_indicator(const HomogeneousNorm& norm, const BoxRegion& region, double eps,
                         const GroupPoint& p) {
    const auto& a = norm.algebra();
    a.check_point(p, "inner_set_indicator");
    if (!(eps > 0.0)) throw std::domain_error("inner_set_indicator: eps must be positive");
    if (region.dim() != a.dim())
        throw std::invalid_argument("inner_set_indicator: region dimension mismatch");
    if (!region.contains(p)) return false;

    // Points of B^R(p, eps) are delta_eps(w) * p with |w| <= 1; the unit ball
    // of either norm kind lies in the coordinate cube |w_j| <= 1.
    std::array<Interval, kMaxQ> w, y, z;
    for (int j = 0; j < a.dim(); ++j) {
        double r = std::pow(eps, a.degree(j));
        w[j] = Interval(-r, r);
        y[j] = Interval(p[j]);
    }
    a.bch(w, y, z);
    for (int j = 0; j < a.dim(); ++j)
        if (z[j].lo < region.lower[j] || z[j].hi > region.upper[j]) return false;
    return true;
}

McEstimate haar_volume_mc(const BoxRegion& region,
                          const std::function<bool(const Vec&)>& indicator, long samples,
                          const Rng& rng) {
    if (samples < 1) throw std::invalid_argument("haar_volume_mc: samples must be >= 1");
    const double vol = region.volume();
    if (!(vol > 0.0)) throw std::invalid_argument("haar_volume_mc: empty region");
    long hits = 0;
    for (long s = 0; s < samples; ++s)
        if (indicator(region.sample(rng, static_cast<uint64_t>(s)))) ++hits;
    const double mean = static_cast<double>(hits) / static_cast<double>(samples);
    double se = 0.0;
    if (samples > 1)
        se = vol * std::sqrt(mean * (1.0 - mean) / static_cast<double>(samples - 1));
    return {vol * mean, se};
}

} // namespace carnot
