#pragma once

#include "carnot/fields.hpp"
#include "carnot/quadrature.hpp"

namespace carnot {

constexpr double kDefaultFdStep = 1e-5;

/// X_j f(p) by a central difference of t -> f(p * t e_j); exact analytic
/// component when the field carries one. 0-based j < m.
double x_derivative(const StratifiedAlgebra& a, const ScalarField& f, int j,
                    const GroupPoint& p, double h = kDefaultFdStep);

/// All m components of the horizontal gradient.
Vec horizontal_gradient(const StratifiedAlgebra& a, const ScalarField& f, const GroupPoint& p,
                        double h = kDefaultFdStep);

/// Pointwise divergence sum_j X_j F_j(p); analytic when present.
double horizontal_divergence(const StratifiedAlgebra& a, const HorizontalField& F,
                             const GroupPoint& p, double h = kDefaultFdStep);

/// sum_j X_j^2 u(p). Along each frame flow the second derivative reduces to a
/// one-dimensional second difference since p * (s e_j) * (t e_j) = p * ((s+t) e_j).
double sub_laplacian(const StratifiedAlgebra& a, const ScalarField& u, const GroupPoint& p,
                     double h = 1e-4);

/// Distributional divergence applied to a test function:
///   -integral over the region of <F, grad_H phi>.
/// phi must vanish on the region boundary; violation (detected by sampling
/// the faces) throws.
double distributional_divergence_pairing(const StratifiedAlgebra& a, const HorizontalField& F,
                                         const ScalarField& phi, const BoxRegion& region,
                                         const QuadratureSpec& quad, const Rng& rng,
                                         double fd_step = kDefaultFdStep);

} // namespace carnot
