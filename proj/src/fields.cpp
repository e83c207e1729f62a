#include "carnot/fields.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace carnot {

Poly horizontal_derivative_poly(const StratifiedAlgebra& a, const Poly& p, int j) {
    if (j < 0 || j >= a.horizontal_dim())
        throw std::out_of_range("horizontal_derivative_poly: index out of range");
    Poly out = p.derivative(j);
    for (int i = a.horizontal_dim(); i < a.dim(); ++i) {
        Poly di = p.derivative(i);
        if (!di.is_zero()) out += a.frame_poly(j, i) * di;
    }
    return out;
}

Poly sub_laplacian_poly(const StratifiedAlgebra& a, const Poly& u) {
    Poly out;
    for (int j = 0; j < a.horizontal_dim(); ++j)
        out += horizontal_derivative_poly(a, horizontal_derivative_poly(a, u, j), j);
    return out;
}

ScalarField make_poly_scalar(const StratifiedAlgebra& a, const Poly& p,
                             const std::string& name) {
    const int q = a.dim(), m = a.horizontal_dim();
    auto hg = std::make_shared<std::vector<Poly>>();
    auto eg = std::make_shared<std::vector<Poly>>();
    for (int j = 0; j < m; ++j) hg->push_back(horizontal_derivative_poly(a, p, j));
    for (int i = 0; i < q; ++i) eg->push_back(p.derivative(i));
    ScalarField f;
    f.name = name;
    f.eval = [p, q](const GroupPoint& x) { return p.eval(x.data(), q); };
    f.hgrad = [hg, q, m](const GroupPoint& x) {
        Vec g(m);
        for (int j = 0; j < m; ++j) g[j] = (*hg)[j].eval(x.data(), q);
        return g;
    };
    f.egrad = [eg, q](const GroupPoint& x) {
        Vec g(q);
        for (int i = 0; i < q; ++i) g[i] = (*eg)[i].eval(x.data(), q);
        return g;
    };
    return f;
}

HorizontalField make_poly_field(const StratifiedAlgebra& a, std::vector<Poly> comps,
                                const std::string& name) {
    const int q = a.dim(), m = a.horizontal_dim();
    if (static_cast<int>(comps.size()) != m)
        throw std::invalid_argument("make_poly_field: expected one component per frame field");
    Poly divp;
    for (int j = 0; j < m; ++j) divp += horizontal_derivative_poly(a, comps[j], j);
    auto cp = std::make_shared<std::vector<Poly>>(std::move(comps));
    HorizontalField F;
    F.name = name;
    F.coeffs = [cp, q, m](const GroupPoint& x) {
        Vec c(m);
        for (int j = 0; j < m; ++j) c[j] = (*cp)[j].eval(x.data(), q);
        return c;
    };
    F.div = [divp, q](const GroupPoint& x) { return divp.eval(x.data(), q); };
    return F;
}

ScalarField make_bump(const StratifiedAlgebra& a, const Vec& center, double radius) {
    const int q = a.dim(), m = a.horizontal_dim();
    if (center.size() != q) throw std::invalid_argument("make_bump: center dimension mismatch");
    if (!(radius > 0.0)) throw std::invalid_argument("make_bump: radius must be positive");

    auto value = [center, radius](const GroupPoint& p) {
        double t2 = (p - center).squaredNorm() / (radius * radius);
        if (t2 >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - t2));
    };
    auto egrad = [center, radius, value](const GroupPoint& p) {
        Vec g = Vec::Zero(p.size());
        double t2 = (p - center).squaredNorm() / (radius * radius);
        if (t2 >= 1.0) return g;
        double u = 1.0 - t2;
        double dv = -value(p) * 2.0 / (radius * radius * u * u); // d/d|p-c|^2
        g = dv * (p - center);
        return g;
    };

    ScalarField f;
    f.name = "bump";
    f.eval = value;
    f.egrad = egrad;
    f.hgrad = [&a, egrad, m, q](const GroupPoint& p) {
        Vec e = egrad(p);
        Vec g(m);
        if (e.isZero()) {
            g.setZero();
            return g;
        }
        Mat fr = a.frame_coefficients(p);
        for (int j = 0; j < m; ++j) {
            double s = 0.0;
            for (int i = 0; i < q; ++i) s += e[i] * fr(j, i);
            g[j] = s;
        }
        return g;
    };
    return f;
}

} // namespace carnot
