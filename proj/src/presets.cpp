#include "carnot/presets.hpp"

#include "carnot/expr.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

namespace carnot::presets {

using nlohmann::json;

namespace {

std::map<std::string, std::unique_ptr<StratifiedAlgebra>>& algebra_registry() {
    static std::map<std::string, std::unique_ptr<StratifiedAlgebra>> reg = [] {
        std::map<std::string, std::unique_ptr<StratifiedAlgebra>> r;
        // First Heisenberg group; [e1,e2] = 2 e3 so that the frame comes out
        // as X1 = d1 - x2 d3, X2 = d2 + x1 d3.
        r.emplace("heisenberg1", std::make_unique<StratifiedAlgebra>(
                                     std::vector<int>{2, 1},
                                     std::vector<BracketEntry>{{0, 1, 2, 2.0}}));
        // Second Heisenberg group, coordinates (x1, x2, y1, y2, t).
        r.emplace("heisenberg2", std::make_unique<StratifiedAlgebra>(
                                     std::vector<int>{4, 1},
                                     std::vector<BracketEntry>{{0, 2, 4, 2.0}, {1, 3, 4, 2.0}}));
        // Engel group, step 3.
        r.emplace("engel", std::make_unique<StratifiedAlgebra>(
                               std::vector<int>{2, 1, 1},
                               std::vector<BracketEntry>{{0, 1, 2, 1.0}, {0, 2, 3, 1.0}}));
        // Filiform step-4 group; exercises the full group-law expansion.
        r.emplace("filiform4",
                  std::make_unique<StratifiedAlgebra>(
                      std::vector<int>{2, 1, 1, 1},
                      std::vector<BracketEntry>{{0, 1, 2, 1.0}, {0, 2, 3, 1.0}, {0, 3, 4, 1.0}}));
        return r;
    }();
    return reg;
}

json require(const json& j, const char* key, const char* who) {
    if (!j.contains(key))
        throw std::invalid_argument(std::string(who) + ": missing key '" + key + "'");
    return j.at(key);
}

Vec vec_from_json(const json& j, int q, const char* who) {
    if (!j.is_array() || static_cast<int>(j.size()) != q)
        throw std::invalid_argument(std::string(who) + ": expected an array of length " +
                                    std::to_string(q));
    Vec v(q);
    for (int i = 0; i < q; ++i) v[i] = j.at(i).get<double>();
    return v;
}

BoxRegion box_from_json(const json& j, int q, const char* who) {
    return BoxRegion(vec_from_json(require(j, "lower", who), q, who),
                     vec_from_json(require(j, "upper", who), q, who));
}

Poly poly_from_json(const json& j, int q) {
    Poly p;
    for (const auto& term : j) {
        auto powers = require(term, "powers", "poly term");
        if (static_cast<int>(powers.size()) != q)
            throw std::invalid_argument("poly term: powers must have length q");
        Poly mono(require(term, "coeff", "poly term").get<double>());
        for (int i = 0; i < q; ++i)
            for (int k = 0; k < powers.at(i).get<int>(); ++k) mono = mono * Poly::var(i);
        p += mono;
    }
    return p;
}

} // namespace

const StratifiedAlgebra& algebra(const std::string& name) {
    auto& reg = algebra_registry();
    auto it = reg.find(name);
    if (it == reg.end()) throw std::invalid_argument("unknown algebra preset '" + name + "'");
    return *it->second;
}

std::vector<std::string> algebra_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : algebra_registry()) out.push_back(k);
    return out;
}

StratifiedAlgebra algebra_from_json(const json& j) {
    auto dims_j = require(j, "layer_dims", "algebra");
    std::vector<int> dims;
    for (const auto& d : dims_j) dims.push_back(d.get<int>());
    if (j.contains("step") && j.at("step").get<int>() != static_cast<int>(dims.size()))
        throw std::invalid_argument("algebra: step does not match layer_dims length");
    std::vector<BracketEntry> entries;
    if (j.contains("brackets")) {
        for (const auto& b : j.at("brackets")) {
            int i = require(b, "i", "bracket").get<int>() - 1;
            int jj = require(b, "j", "bracket").get<int>() - 1;
            for (const auto& [k, v] : require(b, "coeffs", "bracket").items())
                entries.push_back({i, jj, std::stoi(k) - 1, v.get<double>()});
        }
    }
    return StratifiedAlgebra(dims, entries);
}

std::vector<std::string> domain_names() {
    return {"euclidean_ball", "koranyi_ball", "half_space", "box", "custom"};
}

DomainSpec domain(const StratifiedAlgebra& a, const json& spec) {
    const int q = a.dim();
    std::string name = require(spec, "name", "domain").get<std::string>();
    DomainSpec d;
    d.name = name;

    if (name == "euclidean_ball") {
        double r = spec.value("r", 1.0);
        Vec c = spec.contains("center") ? vec_from_json(spec.at("center"), q, "domain")
                                        : Vec(Vec::Zero(q));
        Poly level(-r * r);
        for (int i = 0; i < q; ++i) {
            Poly xi = Poly::var(i) - Poly(c[i]);
            level += xi * xi;
        }
        d.level = make_poly_scalar(a, level, name);
        double pad = spec.value("bbox_pad", 0.25);
        Vec lo(q), hi(q);
        for (int i = 0; i < q; ++i) {
            lo[i] = c[i] - r - pad;
            hi[i] = c[i] + r + pad;
        }
        d.bbox = spec.contains("bbox") ? box_from_json(spec.at("bbox"), q, "domain")
                                       : BoxRegion(lo, hi);
        return d;
    }

    if (name == "koranyi_ball") {
        if (q != 3)
            throw std::invalid_argument("koranyi_ball is defined on q == 3 groups");
        double r = spec.value("r", 1.0);
        double c = spec.value("c", 16.0);
        Poly x = Poly::var(0), y = Poly::var(1), z = Poly::var(2);
        Poly h2 = x * x + y * y;
        Poly level = h2 * h2 + c * (z * z) - Poly(r * r * r * r);
        d.level = make_poly_scalar(a, level, name);
        double pad = spec.value("bbox_pad", 0.3);
        double zr = r * r / std::sqrt(c);
        Vec lo(3), hi(3);
        lo << -r - pad, -r - pad, -zr - pad;
        hi << r + pad, r + pad, zr + pad;
        d.bbox = spec.contains("bbox") ? box_from_json(spec.at("bbox"), q, "domain")
                                       : BoxRegion(lo, hi);
        return d;
    }

    if (name == "half_space") {
        int axis = spec.value("axis", 1) - 1;
        if (axis < 0 || axis >= q) throw std::invalid_argument("half_space: axis out of range");
        double offset = spec.value("offset", 0.0);
        if (!spec.contains("bbox"))
            throw std::invalid_argument("half_space: bbox is required");
        d.bbox = box_from_json(spec.at("bbox"), q, "domain");
        d.level = make_poly_scalar(a, Poly::var(axis) - Poly(offset), name);
        if (!(offset > d.bbox.lower[axis] && offset < d.bbox.upper[axis]))
            throw std::invalid_argument("half_space: plane must cross the bbox");
        // One chart: the plane piece inside the bbox.
        BoundaryChart chart;
        Vec plo(q - 1), phi(q - 1);
        std::vector<int> axes;
        for (int i = 0; i < q; ++i)
            if (i != axis) axes.push_back(i);
        for (int t = 0; t < q - 1; ++t) {
            plo[t] = d.bbox.lower[axes[t]];
            phi[t] = d.bbox.upper[axes[t]];
        }
        chart.param = BoxRegion(plo, phi);
        chart.map = [q, axis, axes, offset](const Vec& uv, Vec& point, Vec& normal, double& ae) {
            point = Vec::Zero(q);
            point[axis] = offset;
            for (int t = 0; t < q - 1; ++t) point[axes[t]] = uv[t];
            normal = Vec::Zero(q);
            normal[axis] = 1.0;
            ae = 1.0;
        };
        d.charts.push_back(std::move(chart));
        return d;
    }

    if (name == "box") {
        Vec lo = vec_from_json(require(spec, "lower", "box domain"), q, "domain");
        Vec hi = vec_from_json(require(spec, "upper", "box domain"), q, "domain");
        BoxRegion inner(lo, hi);
        ScalarField level;
        level.name = name;
        level.eval = [inner, q](const GroupPoint& p) {
            double v = -1e300;
            for (int i = 0; i < q; ++i)
                v = std::max(v, std::max(inner.lower[i] - p[i], p[i] - inner.upper[i]));
            return v;
        };
        level.egrad = [inner, q](const GroupPoint& p) {
            int best = 0;
            double sign = 1.0, v = -1e300;
            for (int i = 0; i < q; ++i) {
                if (inner.lower[i] - p[i] > v) { v = inner.lower[i] - p[i]; best = i; sign = -1.0; }
                if (p[i] - inner.upper[i] > v) { v = p[i] - inner.upper[i]; best = i; sign = 1.0; }
            }
            Vec g = Vec::Zero(q);
            g[best] = sign;
            return g;
        };
        d.level = level;
        double pad = spec.value("bbox_pad", 0.5);
        d.bbox = spec.contains("bbox") ? box_from_json(spec.at("bbox"), q, "domain")
                                       : inner.padded(pad);
        for (int axis = 0; axis < q; ++axis) {
            for (int side = 0; side < 2; ++side) {
                BoundaryChart chart;
                Vec plo(q - 1), phi(q - 1);
                std::vector<int> axes;
                for (int i = 0; i < q; ++i)
                    if (i != axis) axes.push_back(i);
                for (int t = 0; t < q - 1; ++t) {
                    plo[t] = inner.lower[axes[t]];
                    phi[t] = inner.upper[axes[t]];
                }
                chart.param = BoxRegion(plo, phi);
                double face = side ? inner.upper[axis] : inner.lower[axis];
                double orient = side ? 1.0 : -1.0;
                chart.map = [q, axis, axes, face, orient](const Vec& uv, Vec& point, Vec& normal,
                                                          double& ae) {
                    point = Vec::Zero(q);
                    point[axis] = face;
                    for (int t = 0; t < q - 1; ++t) point[axes[t]] = uv[t];
                    normal = Vec::Zero(q);
                    normal[axis] = orient;
                    ae = 1.0;
                };
                d.charts.push_back(std::move(chart));
            }
        }
        return d;
    }

    if (name == "custom") {
        std::string src = require(spec, "level", "custom domain").get<std::string>();
        auto fn = parse_expression(src, q);
        d.level.eval = [fn](const GroupPoint& p) { return fn(p); };
        d.level.name = "custom";
        d.name = "custom";
        d.bbox = box_from_json(require(spec, "bbox", "custom domain"), q, "domain");
        return d;
    }

    throw std::invalid_argument("unknown domain preset '" + name + "'");
}

std::vector<std::string> field_names() {
    return {"X1", "X2", "x1_X1", "sin_inv_diff", "poly_mixed", "poly"};
}

HorizontalField field(const StratifiedAlgebra& a, const json& spec) {
    const int m = a.horizontal_dim(), q = a.dim();
    std::string name = require(spec, "name", "field").get<std::string>();

    if (name == "X1" || name == "X2") {
        int j = (name == "X2") ? 1 : 0;
        if (j >= m) throw std::invalid_argument("field " + name + ": frame index out of range");
        std::vector<Poly> comps(m, Poly{});
        comps[j] = Poly(1.0);
        return make_poly_field(a, comps, name);
    }
    if (name == "x1_X1") {
        std::vector<Poly> comps(m, Poly{});
        comps[0] = Poly::var(0);
        return make_poly_field(a, comps, name);
    }
    if (name == "poly_mixed") {
        // (x1 + x2 x3) X1 + x2^2 X2; nontrivial polynomial divergence.
        if (m < 2 || q < 3) throw std::invalid_argument("poly_mixed needs m >= 2, q >= 3");
        std::vector<Poly> comps(m, Poly{});
        comps[0] = Poly::var(0) + Poly::var(1) * Poly::var(2);
        comps[1] = Poly::var(1) * Poly::var(1);
        return make_poly_field(a, comps, name);
    }
    if (name == "sin_inv_diff") {
        // sin(1/(x1-x2)) (X1 + X2); divergence vanishes off the plane x1 = x2.
        if (m < 2) throw std::invalid_argument("sin_inv_diff needs m >= 2");
        HorizontalField F;
        F.name = name;
        F.coeffs = [m](const GroupPoint& p) {
            double s = std::sin(1.0 / (p[0] - p[1]));
            Vec c = Vec::Zero(m);
            c[0] = s;
            c[1] = s;
            return c;
        };
        F.div = [](const GroupPoint&) { return 0.0; };
        return F;
    }
    if (name == "poly") {
        auto comps_j = require(spec, "components", "poly field");
        if (static_cast<int>(comps_j.size()) != m)
            throw std::invalid_argument("poly field: expected " + std::to_string(m) +
                                        " components");
        std::vector<Poly> comps;
        for (const auto& cj : comps_j) comps.push_back(poly_from_json(cj, q));
        return make_poly_field(a, comps, "poly");
    }
    throw std::invalid_argument("unknown field preset '" + name + "'");
}

std::vector<std::string> scalar_names() {
    return {"one", "x1", "x2", "x3", "x1_sq", "x2_sq", "abs_x1", "gauge_norm",
            "smooth_trig", "bump", "expr"};
}

ScalarField scalar(const StratifiedAlgebra& a, const json& spec) {
    const int q = a.dim();
    std::string name = require(spec, "name", "scalar").get<std::string>();
    if (name == "one") return make_poly_scalar(a, Poly(1.0), name);
    if (name == "x1") return make_poly_scalar(a, Poly::var(0), name);
    if (name == "x2") return make_poly_scalar(a, Poly::var(1), name);
    if (name == "x3") {
        if (q < 3) throw std::invalid_argument("scalar x3 needs q >= 3");
        return make_poly_scalar(a, Poly::var(2), name);
    }
    if (name == "x1_sq") return make_poly_scalar(a, Poly::var(0) * Poly::var(0), name);
    if (name == "x2_sq") return make_poly_scalar(a, Poly::var(1) * Poly::var(1), name);
    if (name == "abs_x1") {
        ScalarField f;
        f.name = name;
        f.smooth = false;
        f.eval = [](const GroupPoint& p) { return std::fabs(p[0]); };
        return f;
    }
    if (name == "gauge_norm") {
        HomogeneousNorm n(a, NormKind::Gauge);
        ScalarField f;
        f.name = name;
        f.smooth = false;
        f.eval = [n](const GroupPoint& p) { return n(p); };
        return f;
    }
    if (name == "smooth_trig") {
        ScalarField f;
        f.name = name;
        f.eval = [q](const GroupPoint& p) {
            double v = std::sin(p[0] + 0.5 * p[1]);
            if (q >= 3) v *= std::cos(0.5 * p[2]);
            return v;
        };
        return f;
    }
    if (name == "bump") {
        Vec c = spec.contains("center") ? vec_from_json(spec.at("center"), q, "bump")
                                        : Vec(Vec::Zero(q));
        return make_bump(a, c, spec.value("r", 0.5));
    }
    if (name == "expr") {
        auto fn = parse_expression(require(spec, "expr", "scalar").get<std::string>(), q);
        ScalarField f;
        f.name = "expr";
        f.eval = [fn](const GroupPoint& p) { return fn(p); };
        return f;
    }
    throw std::invalid_argument("unknown scalar preset '" + name + "'");
}

std::vector<std::string> green_names() { return {"x1", "x1_sq", "x2_sq"}; }

GreenFunction green(const StratifiedAlgebra& a, const std::string& name) {
    if (name == "x1") return make_poly_green(a, Poly::var(0), name);
    if (name == "x1_sq") return make_poly_green(a, Poly::var(0) * Poly::var(0), name);
    if (name == "x2_sq") return make_poly_green(a, Poly::var(1) * Poly::var(1), name);
    throw std::invalid_argument("unknown green-function preset '" + name + "'");
}

std::string describe(const std::string& name) {
    auto& reg = algebra_registry();
    if (auto it = reg.find(name); it != reg.end())
        return name + ":\n" + it->second->describe();
    auto dn = domain_names();
    if (std::find(dn.begin(), dn.end(), name) != dn.end()) {
        if (name == "euclidean_ball")
            return "euclidean_ball: {|x - center|^2 < r^2}; params r, center, bbox_pad\n";
        if (name == "koranyi_ball")
            return "koranyi_ball: {(x1^2+x2^2)^2 + c x3^2 < r^4} (q = 3); params r, c, bbox_pad\n";
        if (name == "half_space")
            return "half_space: {x_axis < offset}; params axis (1-based), offset, bbox\n";
        if (name == "box") return "box: axis-aligned box; params lower, upper, bbox_pad\n";
        return "custom: level-set domain from an expression; params level, bbox\n";
    }
    auto fn = field_names();
    if (std::find(fn.begin(), fn.end(), name) != fn.end()) {
        if (name == "sin_inv_diff")
            return "sin_inv_diff: sin(1/(x1-x2)) (X1 + X2); divergence-free off {x1 = x2}\n";
        if (name == "poly")
            return "poly: polynomial frame coefficients; params components[[{powers,coeff}..]..]\n";
        return name + ": polynomial horizontal field preset\n";
    }
    auto sn = scalar_names();
    if (std::find(sn.begin(), sn.end(), name) != sn.end())
        return name + ": scalar field preset\n";
    auto gn = green_names();
    if (std::find(gn.begin(), gn.end(), name) != gn.end())
        return name + ": Green-identity function preset (analytic sub-Laplacian)\n";
    throw std::invalid_argument("unknown preset '" + name + "'");
}

} // namespace carnot::presets
