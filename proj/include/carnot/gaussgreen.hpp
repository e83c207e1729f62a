#pragma once

#include "carnot/domains.hpp"
#include "carnot/mollify.hpp"

#include <string>
#include <vector>

namespace carnot {

/// Outcome of one verified identity. `pass` compares the relative residual
/// against the tolerance, falling back to the absolute residual when the
/// reference side is numerically zero (|rhs| < 1e-8).
struct GaussGreenReport {
    std::string scenario;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double rel_residual = 0.0;
    bool absolute_mode = false;
    bool pass = false;
    double tolerance = 0.0;
    std::string meta;

    static GaussGreenReport make(const std::string& scenario, double lhs, double rhs,
                                 double tolerance, const std::string& meta);
};

/// Scalar function with an analytic sub-Laplacian density, as needed by the
/// Green identities.
struct GreenFunction {
    ScalarField f;                                   // needs hgrad
    std::function<double(const GroupPoint&)> sublap; // density of Delta_H f
    std::string name;
};

GreenFunction make_poly_green(const StratifiedAlgebra& a, const Poly& u,
                              const std::string& name);

/// Divergence theorem: volume integral of div F over E against the flux of F
/// through the reduced boundary in the perimeter measure.
GaussGreenReport verify_gauss_green(const StratifiedAlgebra& a, const HorizontalField& F,
                                    const DomainSpec& d, int boundary_resolution,
                                    const QuadratureSpec& volume_quad, double tolerance,
                                    const Rng& rng, const std::string& scenario);

/// First Green identity:
///   int_E v dLap_H u = int_dE v <grad_H u, nu> dPer - int_E <grad_H v, grad_H u>.
/// lhs is the left integral, rhs the right-hand combination.
GaussGreenReport verify_green_first(const StratifiedAlgebra& a, const GreenFunction& u,
                                    const ScalarField& v, const DomainSpec& d,
                                    int boundary_resolution, const QuadratureSpec& volume_quad,
                                    double tolerance, const Rng& rng,
                                    const std::string& scenario);

/// Second Green identity:
///   int_E (v dLap_H u - u dLap_H v) = int_dE <v grad_H u - u grad_H v, nu> dPer.
GaussGreenReport verify_green_second(const StratifiedAlgebra& a, const GreenFunction& u,
                                     const GreenFunction& v, const DomainSpec& d,
                                     int boundary_resolution, const QuadratureSpec& volume_quad,
                                     double tolerance, const Rng& rng,
                                     const std::string& scenario);

/// Boundary averages A(eps) of the mollified indicator against the perimeter
/// measure, one report per ladder entry (lhs = A(eps), rhs = 1/2). The
/// smallest eps must land within `final_tol` of 1/2 and |A - 1/2| may not
/// grow along the ladder beyond the relative slack.
std::vector<GaussGreenReport> verify_half_density(const Mollifier& m, const DomainSpec& d,
                                                  const std::vector<double>& eps_ladder,
                                                  const std::function<double(const BoundarySample&)>& phi,
                                                  int boundary_resolution, long ball_samples,
                                                  const Rng& rng, double final_tol,
                                                  double trend_slack,
                                                  const std::string& scenario);

/// Normal traces of a continuous field on a shared boundary patch: samples
/// d1's boundary, keeps points selected by `patch`, evaluates <F, nu> for
/// both domains there and compares with the orientation sign. lhs is the
/// worst mismatch.
GaussGreenReport verify_trace_locality(const StratifiedAlgebra& a, const HorizontalField& F,
                                       const DomainSpec& d1, const DomainSpec& d2,
                                       const std::function<bool(const Vec&)>& patch,
                                       int boundary_resolution, double tolerance,
                                       const std::string& scenario);

/// Distributional divergence of a divergence-free field against a list of
/// bumps (each with its own quadrature region containing its support); one
/// report per bump with lhs = pairing value, rhs = 0.
std::vector<GaussGreenReport> verify_divergence_free(const StratifiedAlgebra& a,
                                                     const HorizontalField& F,
                                                     const std::vector<ScalarField>& bumps,
                                                     const std::vector<BoxRegion>& regions,
                                                     const QuadratureSpec& quad, double tolerance,
                                                     const Rng& rng, const std::string& scenario);

/// Per-sample trace bound sup |<F, nu>| <= sup |F|_g over E and its boundary;
/// lhs is the largest violation (clamped at 0).
GaussGreenReport verify_trace_bound(const StratifiedAlgebra& a, const HorizontalField& F,
                                    const DomainSpec& d, int boundary_resolution,
                                    const QuadratureSpec& volume_quad, const Rng& rng,
                                    double tolerance, const std::string& scenario);

} // namespace carnot
