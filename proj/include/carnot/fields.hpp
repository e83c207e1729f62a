#pragma once

#include "carnot/algebra.hpp"
#include "carnot/types.hpp"

#include <functional>
#include <string>

namespace carnot {

/// Real-valued function of a group point. Analytic derivatives are optional;
/// operators fall back to finite differences along frame flows when absent.
/// Evaluation callables must be safe for concurrent calls.
struct ScalarField {
    std::function<double(const GroupPoint&)> eval;
    std::function<Vec(const GroupPoint&)> hgrad;  // m horizontal components, optional
    std::function<Vec(const GroupPoint&)> egrad;  // q Euclidean components, optional
    bool smooth = true;
    std::string name;

    double operator()(const GroupPoint& p) const { return eval(p); }
};

/// Section of the horizontal bundle, F = sum_j F_j X_j, given by its frame
/// coefficients. `div` is the analytic pointwise divergence when known.
struct HorizontalField {
    std::function<Vec(const GroupPoint&)> coeffs; // m components
    std::function<double(const GroupPoint&)> div; // optional
    std::string name;
};

/// X_j applied to a polynomial in the graded coordinates:
/// X_j p = d_j p + sum_{i} a_j^i d_i p with the frame table of the algebra.
Poly horizontal_derivative_poly(const StratifiedAlgebra& a, const Poly& p, int j);

Poly sub_laplacian_poly(const StratifiedAlgebra& a, const Poly& u);

/// Scalar field from a polynomial; horizontal and Euclidean gradients are
/// exact (symbolic).
ScalarField make_poly_scalar(const StratifiedAlgebra& a, const Poly& p,
                             const std::string& name = "");

/// Horizontal field with polynomial frame coefficients and exact divergence.
HorizontalField make_poly_field(const StratifiedAlgebra& a, std::vector<Poly> comps,
                                const std::string& name = "");

/// Smooth bump supported in the Euclidean ball of the given center/radius:
/// exp(1 - 1/(1 - t^2)) with t = |p - c|/r. Exact Euclidean and horizontal
/// gradients.
ScalarField make_bump(const StratifiedAlgebra& a, const Vec& center, double radius);

} // namespace carnot
