#include "carnot/hcalc.hpp"

#include <cmath>
#include <stdexcept>

namespace carnot {

double x_derivative(const StratifiedAlgebra& a, const ScalarField& f, int j,
                    const GroupPoint& p, double h) {
    if (j < 0 || j >= a.horizontal_dim())
        throw std::out_of_range("x_derivative: horizontal index out of range");
    if (f.hgrad) return f.hgrad(p)[j];
    return (f.eval(a.flow(p, j, h)) - f.eval(a.flow(p, j, -h))) / (2.0 * h);
}

Vec horizontal_gradient(const StratifiedAlgebra& a, const ScalarField& f, const GroupPoint& p,
                        double h) {
    if (f.hgrad) return f.hgrad(p);
    Vec g(a.horizontal_dim());
    for (int j = 0; j < a.horizontal_dim(); ++j)
        g[j] = (f.eval(a.flow(p, j, h)) - f.eval(a.flow(p, j, -h))) / (2.0 * h);
    return g;
}

double horizontal_divergence(const StratifiedAlgebra& a, const HorizontalField& F,
                             const GroupPoint& p, double h) {
    if (F.div) return F.div(p);
    double sum = 0.0;
    for (int j = 0; j < a.horizontal_dim(); ++j)
        sum += (F.coeffs(a.flow(p, j, h))[j] - F.coeffs(a.flow(p, j, -h))[j]) / (2.0 * h);
    return sum;
}

double sub_laplacian(const StratifiedAlgebra& a, const ScalarField& u, const GroupPoint& p,
                     double h) {
    double sum = 0.0;
    if (u.hgrad) {
        for (int j = 0; j < a.horizontal_dim(); ++j)
            sum += (u.hgrad(a.flow(p, j, h))[j] - u.hgrad(a.flow(p, j, -h))[j]) / (2.0 * h);
        return sum;
    }
    const double u0 = u.eval(p);
    for (int j = 0; j < a.horizontal_dim(); ++j)
        sum += (u.eval(a.flow(p, j, h)) - 2.0 * u0 + u.eval(a.flow(p, j, -h))) / (h * h);
    return sum;
}

namespace {

void check_compact_support(const ScalarField& phi, const BoxRegion& region) {
    const int q = region.dim();
    const int grid = 5;
    Vec p(q);
    for (int axis = 0; axis < q; ++axis) {
        for (int side = 0; side < 2; ++side) {
            std::array<int, kMaxQ> idx{};
            bool done = false;
            while (!done) {
                for (int j = 0, t = 0; j < q; ++j) {
                    if (j == axis) {
                        p[j] = side ? region.upper[j] : region.lower[j];
                    } else {
                        p[j] = region.lower[j] + (region.upper[j] - region.lower[j]) *
                                                     (idx[t] + 0.5) / grid;
                        ++t;
                    }
                }
                if (std::fabs(phi.eval(p)) > 1e-9)
                    throw std::domain_error(
                        "divergence pairing: test function does not vanish on the "
                        "region boundary");
                int t = 0;
                for (; t < q - 1; ++t) {
                    if (++idx[t] < grid) break;
                    idx[t] = 0;
                }
                done = (t == q - 1) || q == 1;
            }
        }
    }
}

} // namespace

double distributional_divergence_pairing(const StratifiedAlgebra& a, const HorizontalField& F,
                                         const ScalarField& phi, const BoxRegion& region,
                                         const QuadratureSpec& quad, const Rng& rng,
                                         double fd_step) {
    if (region.dim() != a.dim())
        throw std::invalid_argument("divergence pairing: region dimension mismatch");
    check_compact_support(phi, region);
    auto integrand = [&](const Vec& p) {
        Vec g = horizontal_gradient(a, phi, p, fd_step);
        Vec Fc = F.coeffs(p);
        return Fc.dot(g);
    };
    return -integrate_box(region, integrand, quad, rng);
}

} // namespace carnot
