#pragma once

#include "carnot/domains.hpp"
#include "carnot/hcalc.hpp"
#include "carnot/metric.hpp"

#include <functional>
#include <string>

namespace carnot {

/// Group-convolution mollifier rho(x) = eta(|x|) / c with a Lipschitz profile
/// eta on [0,1], eta(1) = 0, scaled as rho_eps(x) = eps^{-Q} rho(delta_{1/eps} x).
///
/// The normalization c is computed from the radial pushforward of Haar
/// measure under the homogeneous norm (mu(B(0,s)) = s^Q mu(B(0,1))):
///   c = Q * mu(B(0,1)) * integral_0^1 s^{Q-1} eta(s) ds,
/// with mu(B(0,1)) estimated once by Monte Carlo. Construction cross-checks
/// the normalization by an independent Monte Carlo integral and the symmetry
/// rho(x) = rho(x^{-1}) by sampling; both throw on failure.
///
/// Immutable after construction; safe for concurrent use.
class Mollifier {
public:
    static Mollifier make(const HomogeneousNorm& norm, const std::string& profile,
                          const Rng& rng, long mc_samples = 400000);

    double profile_value(double t) const { return profile_(t); }
    double rho(const GroupPoint& x) const;
    double rho_eps(double eps, const GroupPoint& x) const;

    const HomogeneousNorm& norm() const { return norm_; }
    const StratifiedAlgebra& algebra() const { return norm_.algebra(); }
    const std::string& profile_name() const { return profile_name_; }
    double unit_ball_volume() const { return mu_ball_; }
    double unit_ball_volume_se() const { return mu_ball_se_; }
    double normalization() const { return c_; }

private:
    Mollifier(HomogeneousNorm norm, std::function<double(double)> profile, std::string name)
        : norm_(norm), profile_(std::move(profile)), profile_name_(std::move(name)) {}

    HomogeneousNorm norm_;
    std::function<double(double)> profile_;
    std::string profile_name_;
    double c_ = 1.0;
    double mu_ball_ = 0.0, mu_ball_se_ = 0.0;
};

/// (rho_eps * f)(p) = integral over the unit ball of rho(w) f(delta_eps(w^{-1}) p) dw.
/// The quadrature runs over the unit-ball bounding cube in w; the estimate is
/// self-normalized by the same-node integral of rho, and Monte Carlo draws
/// antithetic pairs (w, -w). Throws when `region` is given and p is not in
/// its eps-right-inner set.
double mollify_scalar(const Mollifier& m, double eps, const ScalarField& f, const GroupPoint& p,
                      const QuadratureSpec& quad, const Rng& rng,
                      const BoxRegion* region = nullptr);

/// Mean of f over the right ball B^R(p, r), by rejection inside the bounding
/// cube of the ball (antithetic for Monte Carlo).
double right_ball_average(const HomogeneousNorm& norm, const ScalarField& f, const GroupPoint& p,
                          double r, const QuadratureSpec& quad, const Rng& rng,
                          const BoxRegion* region = nullptr);

/// | X_j (rho_eps * f)(p) - (rho_eps * X_j f)(p) |. The left side differences
/// the mollified function along the j-th frame flow; the right side mollifies
/// the analytic derivative on a deliberately decorrelated node set, so the
/// residual reflects quadrature + differencing error rather than shared-node
/// cancellation. Requires f.hgrad; p must lie in the 2eps-right-inner set of
/// `region` when given.
double commutation_residual(const Mollifier& m, double eps, const ScalarField& f, int j,
                            const GroupPoint& p, const QuadratureSpec& quad, double h,
                            const Rng& rng, const BoxRegion* region = nullptr);

struct TvBoundResult {
    double lhs = 0.0; // integral of |grad_H (rho_eps * chi_E)| over the 2eps right-inner set
    double rhs = 0.0; // h-perimeter of E in the window
    long nodes = 0;   // quadrature nodes that landed in the inner set
};

/// Mollified-gradient total variation against the h-perimeter. The gradient
/// of the mollified indicator is evaluated as the group convolution of the
/// boundary measure: grad_H (rho_eps * chi_E)(x) = -sum_s rho_eps(x y_s^{-1})
/// nu(y_s) d|D_H chi_E|(y_s).
TvBoundResult total_variation_bound_check(const Mollifier& m, double eps, const DomainSpec& E,
                                          const BoxRegion& window, int boundary_resolution,
                                          const QuadratureSpec& volume_quad, const Rng& rng);

/// rho_eps * chi_E at p by per-point Monte Carlo over the right ball with
/// antithetic pairs; used by the boundary half-density diagnostics.
double mollified_indicator(const Mollifier& m, double eps, const DomainSpec& E,
                           const GroupPoint& p, long samples, const Rng& rng);

} // namespace carnot
