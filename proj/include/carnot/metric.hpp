#pragma once

#include "carnot/algebra.hpp"
#include "carnot/rng.hpp"
#include "carnot/types.hpp"

#include <functional>
#include <string>

namespace carnot {

enum class NormKind { Gauge, Box };

NormKind norm_kind_from_string(const std::string& s);

/// Homogeneous quasi-norm in graded coordinates. Both kinds satisfy
/// |delta_r x| = r |x|, vanish only at 0 and are symmetric under inversion.
///   gauge: max over layers i of (Euclidean norm of the layer-i block)^(1/i)
///   box:   max_j |x_j|^(1/d_j)
class HomogeneousNorm {
public:
    HomogeneousNorm(const StratifiedAlgebra& alg, NormKind kind = NormKind::Gauge)
        : alg_(&alg), kind_(kind) {}

    double operator()(const GroupPoint& x) const;

    /// Left-invariant homogeneous distance |p^{-1} q|.
    double dist(const GroupPoint& p, const GroupPoint& q) const;

    /// Right-invariant companion |p q^{-1}|.
    double dist_right(const GroupPoint& p, const GroupPoint& q) const;

    const StratifiedAlgebra& algebra() const { return *alg_; }
    NormKind kind() const { return kind_; }
    std::string kind_name() const { return kind_ == NormKind::Gauge ? "gauge" : "box"; }

private:
    const StratifiedAlgebra* alg_;
    NormKind kind_;
};

/// Axis-aligned box in graded coordinates; quadrature and sampling support.
struct BoxRegion {
    Vec lower, upper;

    BoxRegion() = default;
    BoxRegion(Vec lo, Vec hi);
    static BoxRegion cube(int q, double half_width);

    int dim() const { return static_cast<int>(lower.size()); }
    double volume() const;
    Vec center() const { return 0.5 * (lower + upper); }
    bool contains(const Vec& p) const;
    Vec sample(const Rng& rng, uint64_t ctr) const;
    BoxRegion padded(double pad) const;
};

/// True iff the closed right ball B^R(p, eps) fits inside the open box, i.e.
/// the right distance from p to the box complement exceeds eps. Decided by a
/// conservative interval bound on the coordinates of delta_eps(w) * p over the
/// unit-ball hull |w_j| <= 1; may return false within an O(eps^2) margin of
/// the exact inner set, never true outside it.
bool inner_set_indicator(const HomogeneousNorm& norm, const BoxRegion& region, double eps,
                         const GroupPoint& p);

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Monte Carlo volume of {indicator} inside the region; Haar measure is
/// Lebesgue in graded coordinates. Deterministic per rng key.
McEstimate haar_volume_mc(const BoxRegion& region,
                          const std::function<bool(const Vec&)>& indicator, long samples,
                          const Rng& rng);

} // namespace carnot
