#include "carnot/runner.hpp"

#include "carnot/presets.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <thread>

namespace carnot {

using nlohmann::json;

namespace {

QuadratureSpec quad_from_json(const json& j, int q) {
    if (j.is_null()) return QuadratureSpec::tensor(48);
    std::string kind = j.value("kind", "tensor_grid");
    QuadratureSpec spec;
    if (kind == "tensor_grid") {
        if (j.contains("resolution") && j.at("resolution").is_array()) {
            std::vector<int> res;
            for (const auto& e : j.at("resolution")) res.push_back(e.get<int>());
            if (static_cast<int>(res.size()) != q)
                throw std::invalid_argument("quadrature: resolution array must have length q");
            spec = QuadratureSpec::tensor(res);
        } else {
            spec = QuadratureSpec::tensor(j.value("resolution", 48));
        }
    } else if (kind == "monte_carlo") {
        spec = QuadratureSpec::monte_carlo(j.value("samples", 100000l));
    } else {
        throw std::invalid_argument("quadrature: unknown kind '" + kind + "'");
    }
    spec.validate(q);
    return spec;
}

/// Holds resolved per-run state: algebras must stay at stable addresses for
/// the lifetime of the run since fields and norms reference them.
struct RunContext {
    const SuiteConfig* cfg = nullptr;
    uint64_t seed = 0;
    std::map<std::string, std::unique_ptr<StratifiedAlgebra>> inline_algebras;
    std::map<std::string, std::shared_ptr<Mollifier>> mollifiers;

    const StratifiedAlgebra& algebra_for(const ScenarioSpec& s) {
        if (s.params.contains("group") && s.params.at("group").is_string())
            return presets::algebra(s.params.at("group").get<std::string>());
        if (!cfg->inline_group.is_null()) {
            auto it = inline_algebras.find("_inline");
            if (it == inline_algebras.end())
                it = inline_algebras
                         .emplace("_inline", std::make_unique<StratifiedAlgebra>(
                                                 presets::algebra_from_json(cfg->inline_group)))
                         .first;
            return *it->second;
        }
        return presets::algebra(cfg->group);
    }

    const Mollifier& mollifier_for(const StratifiedAlgebra& a, const std::string& label) {
        auto it = mollifiers.find(label);
        if (it == mollifiers.end()) {
            HomogeneousNorm n(a, norm_kind_from_string(cfg->norm));
            auto m = std::make_shared<Mollifier>(Mollifier::make(
                n, cfg->mollifier_profile, Rng::derive(seed, "mollifier:" + label),
                cfg->mollifier_samples));
            it = mollifiers.emplace(label, std::move(m)).first;
        }
        return *it->second;
    }
};

using Task = std::function<std::vector<GaussGreenReport>()>;

double get_tol(const json& p, double fallback) { return p.value("tolerance", fallback); }

void apply_absolute_override(const json& p, GaussGreenReport& r) {
    if (p.value("absolute", false)) {
        r.absolute_mode = true;
        r.rel_residual = r.residual;
        r.pass = r.residual <= r.tolerance;
    }
}

Task make_task(RunContext& ctx, const ScenarioSpec& spec) {
    const json& p = spec.params;
    const auto& a = ctx.algebra_for(spec);
    const int q = a.dim();
    const Rng rng = Rng::derive(ctx.seed, spec.name);
    const std::string name = spec.name;

    if (spec.kind == "gauss_green") {
        auto F = std::make_shared<HorizontalField>(presets::field(a, p.at("field")));
        auto d = std::make_shared<DomainSpec>(presets::domain(a, p.at("domain")));
        int bres = p.at("boundary_resolution").get<int>();
        auto vol = quad_from_json(p.value("volume", json()), q);
        double tol = get_tol(p, 1e-2);
        json pc = p;
        return [=, &a]() {
            auto r = verify_gauss_green(a, *F, *d, bres, vol, tol, rng, name);
            apply_absolute_override(pc, r);
            return std::vector<GaussGreenReport>{r};
        };
    }

    if (spec.kind == "green_first" || spec.kind == "green_second") {
        auto u = std::make_shared<GreenFunction>(presets::green(a, p.at("u").get<std::string>()));
        auto d = std::make_shared<DomainSpec>(presets::domain(a, p.at("domain")));
        int bres = p.at("boundary_resolution").get<int>();
        auto vol = quad_from_json(p.value("volume", json()), q);
        double tol = get_tol(p, 1e-2);
        json pc = p;
        if (spec.kind == "green_first") {
            auto v = std::make_shared<ScalarField>(presets::scalar(a, p.at("v")));
            return [=, &a]() {
                auto r = verify_green_first(a, *u, *v, *d, bres, vol, tol, rng, name);
                apply_absolute_override(pc, r);
                return std::vector<GaussGreenReport>{r};
            };
        }
        auto v = std::make_shared<GreenFunction>(presets::green(a, p.at("v").get<std::string>()));
        return [=, &a]() {
            auto r = verify_green_second(a, *u, *v, *d, bres, vol, tol, rng, name);
            apply_absolute_override(pc, r);
            return std::vector<GaussGreenReport>{r};
        };
    }

    if (spec.kind == "half_density") {
        auto d = std::make_shared<DomainSpec>(presets::domain(a, p.at("domain")));
        std::vector<double> ladder;
        for (const auto& e : p.at("eps_ladder")) ladder.push_back(e.get<double>());
        json phi_spec = p.value("phi", json{{"name", "one"}});
        auto phi = std::make_shared<ScalarField>(presets::scalar(a, phi_spec));
        int bres = p.at("boundary_resolution").get<int>();
        long ball_samples = p.value("ball_samples", 2048l);
        double final_tol = p.value("final_tol", 0.02);
        double slack = p.value("trend_slack", 0.2);
        const Mollifier& m = ctx.mollifier_for(a, p.value("group", ctx.cfg->group));
        return [=, &m]() {
            auto fn = [phi](const BoundarySample& s) { return phi->eval(s.point); };
            return verify_half_density(m, *d, ladder, fn, bres, ball_samples, rng, final_tol,
                                       slack, name);
        };
    }

    if (spec.kind == "tv_bound") {
        auto d = std::make_shared<DomainSpec>(presets::domain(a, p.at("domain")));
        std::vector<double> eps;
        for (const auto& e : p.at("eps_list")) eps.push_back(e.get<double>());
        int bres = p.at("boundary_resolution").get<int>();
        auto vol = quad_from_json(p.value("volume", json()), q);
        double tol = get_tol(p, 0.05);
        BoxRegion window = d->bbox;
        if (p.contains("window")) {
            Vec lo(q), hi(q);
            for (int i = 0; i < q; ++i) {
                lo[i] = p.at("window").at("lower").at(i).get<double>();
                hi[i] = p.at("window").at("upper").at(i).get<double>();
            }
            window = BoxRegion(lo, hi);
        }
        const Mollifier& m = ctx.mollifier_for(a, p.value("group", ctx.cfg->group));
        return [=, &m]() {
            std::vector<GaussGreenReport> out;
            for (size_t k = 0; k < eps.size(); ++k) {
                auto tv = total_variation_bound_check(m, eps[k], *d, window, bres, vol,
                                                      rng.child(k));
                char meta[160];
                std::snprintf(meta, sizeof(meta), "eps=%g;bres=%d;vol=%s;inner_nodes=%ld",
                              eps[k], bres, vol.str().c_str(), tv.nodes);
                auto r = GaussGreenReport::make(name + "_eps" + std::to_string(k), tv.lhs,
                                                tv.rhs, tol, meta);
                r.pass = tv.lhs <= tv.rhs + tol * std::max(std::fabs(tv.rhs), 1e-12);
                out.push_back(r);
            }
            return out;
        };
    }

    if (spec.kind == "trace_locality") {
        auto F = std::make_shared<HorizontalField>(presets::field(a, p.at("field")));
        auto d1 = std::make_shared<DomainSpec>(presets::domain(a, p.at("d1")));
        auto d2 = std::make_shared<DomainSpec>(presets::domain(a, p.at("d2")));
        Vec lo(q), hi(q);
        for (int i = 0; i < q; ++i) {
            lo[i] = p.at("patch").at("lower").at(i).get<double>();
            hi[i] = p.at("patch").at("upper").at(i).get<double>();
        }
        BoxRegion patch(lo, hi);
        int bres = p.at("boundary_resolution").get<int>();
        double tol = get_tol(p, 1e-10);
        return [=, &a]() {
            auto pred = [patch](const Vec& x) { return patch.contains(x); };
            auto r = verify_trace_locality(a, *F, *d1, *d2, pred, bres, tol, name);
            return std::vector<GaussGreenReport>{r};
        };
    }

    if (spec.kind == "trace_bound") {
        auto F = std::make_shared<HorizontalField>(presets::field(a, p.at("field")));
        auto d = std::make_shared<DomainSpec>(presets::domain(a, p.at("domain")));
        int bres = p.at("boundary_resolution").get<int>();
        auto vol = quad_from_json(p.value("volume", json()), q);
        double tol = get_tol(p, 1e-10);
        return [=, &a]() {
            auto r = verify_trace_bound(a, *F, *d, bres, vol, rng, tol, name);
            return std::vector<GaussGreenReport>{r};
        };
    }

    if (spec.kind == "divergence_free") {
        json field_spec = p.value("field", json{{"name", "sin_inv_diff"}});
        auto F = std::make_shared<HorizontalField>(presets::field(a, field_spec));
        double min_dist = p.value("min_distance", 0.05);
        auto bumps = std::make_shared<std::vector<ScalarField>>();
        auto regions = std::make_shared<std::vector<BoxRegion>>();
        for (const auto& bj : p.at("bumps")) {
            Vec c(q);
            for (int i = 0; i < q; ++i) c[i] = bj.at("center").at(i).get<double>();
            double r = bj.at("r").get<double>();
            double pad = bj.value("pad", 0.1);
            if (F->name == "sin_inv_diff") {
                double gap = std::fabs(c[0] - c[1]) - r * std::sqrt(2.0);
                if (gap < min_dist)
                    throw std::invalid_argument("divergence_free: bump support too close to "
                                                "the singular plane in '" + name + "'");
            }
            bumps->push_back(make_bump(a, c, r));
            Vec lo = c.array() - (r + pad), hi = c.array() + (r + pad);
            regions->push_back(BoxRegion(lo, hi));
        }
        auto quad = quad_from_json(p.value("quad", json()), q);
        double tol = get_tol(p, 1e-3);
        return [=, &a]() {
            return verify_divergence_free(a, *F, *bumps, *regions, quad, tol, rng, name);
        };
    }

    if (spec.kind == "commutation") {
        auto f = std::make_shared<ScalarField>(presets::scalar(a, p.at("field")));
        if (!f->hgrad)
            throw std::invalid_argument("commutation: scalar preset lacks an analytic gradient");
        int j = p.value("j", 1) - 1;
        Vec pt(q);
        for (int i = 0; i < q; ++i) pt[i] = p.at("point").at(i).get<double>();
        double eps = p.at("eps").get<double>();
        double h = p.value("h", 1e-5);
        auto quad = quad_from_json(p.value("quad", json({{"kind", "tensor_grid"},
                                                         {"resolution", 12}})), q);
        double tol = get_tol(p, 1e-3);
        const Mollifier& m = ctx.mollifier_for(a, p.value("group", ctx.cfg->group));
        return [=, &m]() {
            QuadratureSpec fine = quad;
            if (fine.kind == QuadratureSpec::Kind::TensorGrid) {
                for (int i = 0; i < m.algebra().dim(); ++i) fine.resolution[i] *= 2;
            } else {
                fine.samples *= 8;
            }
            double r1 = commutation_residual(m, eps, *f, j, pt, quad, h, rng.child(1));
            double r2 = commutation_residual(m, eps, *f, j, pt, fine, h, rng.child(2));
            char meta[160];
            std::snprintf(meta, sizeof(meta), "eps=%g;j=%d;h=%g;quad=%s", eps, j + 1, h,
                          quad.str().c_str());
            auto a1 = GaussGreenReport::make(name + "_base", r1, 0.0, tol, meta);
            auto a2 = GaussGreenReport::make(name + "_fine", r2, 0.0, tol, meta);
            auto trend = GaussGreenReport::make(name + "_trend", r2, r1, 1.0, meta);
            trend.pass = r2 <= r1 + 1e-9;
            return std::vector<GaussGreenReport>{a1, a2, trend};
        };
    }

    if (spec.kind == "right_average") {
        auto f = std::make_shared<ScalarField>(presets::scalar(a, p.at("field")));
        Vec pt(q);
        for (int i = 0; i < q; ++i) pt[i] = p.at("point").at(i).get<double>();
        std::vector<double> ladder;
        for (const auto& e : p.at("eps_ladder")) ladder.push_back(e.get<double>());
        auto quad = quad_from_json(p.value("quad", json({{"kind", "tensor_grid"},
                                                         {"resolution", 16}})), q);
        double final_tol = p.value("final_tol", 1e-2);
        double slack = p.value("trend_slack", 0.0);
        const Mollifier& m = ctx.mollifier_for(a, p.value("group", ctx.cfg->group));
        return [=, &m]() {
            std::vector<GaussGreenReport> out;
            double ref = f->eval(pt);
            double prev = 0.0;
            for (size_t k = 0; k < ladder.size(); ++k) {
                double v = mollify_scalar(m, ladder[k], *f, pt, quad, rng.child(k));
                double err = std::fabs(v - ref);
                char meta[160];
                std::snprintf(meta, sizeof(meta), "eps=%g;quad=%s;field=%s", ladder[k],
                              quad.str().c_str(), f->name.c_str());
                auto r = GaussGreenReport::make(name + "_eps" + std::to_string(k), v, ref,
                                                final_tol, meta);
                bool ok = true;
                if (k > 0 && err > prev * (1.0 + slack) + 1e-12) ok = false;
                if (k + 1 == ladder.size() && err > final_tol) ok = false;
                r.pass = ok;
                out.push_back(r);
                prev = err;
            }
            return out;
        };
    }

    if (spec.kind == "haar_scaling") {
        double lambda = p.value("lambda", 2.0);
        long samples = p.at("samples").get<long>();
        double sigmas = p.value("sigmas", 3.0);
        HomogeneousNorm n(a, norm_kind_from_string(ctx.cfg->norm));
        return [=, &a]() {
            HomogeneousNorm norm = n;
            BoxRegion unit = BoxRegion::cube(a.dim(), 1.0);
            auto v1 = haar_volume_mc(unit, [&](const Vec& w) { return norm(w) < 1.0; },
                                     samples, rng.child(1));
            Vec lo(a.dim()), hi(a.dim());
            for (int i = 0; i < a.dim(); ++i) {
                double s = std::pow(lambda, a.degree(i));
                lo[i] = -s;
                hi[i] = s;
            }
            BoxRegion scaled(lo, hi);
            auto v2 = haar_volume_mc(scaled,
                                     [&](const Vec& w) {
                                         return norm(a.dilate(1.0 / lambda, w)) < 1.0;
                                     },
                                     samples, rng.child(2));
            double ratio = v2.value / v1.value;
            double expect = std::pow(lambda, a.hom_dimension());
            double se = ratio * std::sqrt(std::pow(v1.std_error / v1.value, 2) +
                                          std::pow(v2.std_error / v2.value, 2));
            char meta[160];
            std::snprintf(meta, sizeof(meta), "lambda=%g;samples=%ld;se=%.6g;Q=%d", lambda,
                          samples, se, a.hom_dimension());
            auto r = GaussGreenReport::make(name, ratio, expect, sigmas, meta);
            r.pass = std::fabs(ratio - expect) <= sigmas * se;
            return std::vector<GaussGreenReport>{r};
        };
    }

    if (spec.kind == "orientation") {
        auto F = std::make_shared<HorizontalField>(presets::field(a, p.at("field")));
        auto d = std::make_shared<DomainSpec>(presets::domain(a, p.at("domain")));
        int bres = p.at("boundary_resolution").get<int>();
        double tol = get_tol(p, 1e-10);
        return [=, &a]() {
            auto flux = [&](const DomainSpec& dom) {
                auto samples = sample_boundary(a, dom, bres);
                double s = 0.0;
                for (const auto& bs : samples)
                    s += F->coeffs(bs.point).dot(bs.hcoeffs) * bs.weight;
                return s;
            };
            double f1 = flux(*d);
            double f2 = flux(negate_domain(*d));
            char meta[160];
            std::snprintf(meta, sizeof(meta), "bres=%d;flux=%.9g;flux_neg=%.9g", bres, f1, f2);
            auto r = GaussGreenReport::make(name, f1 + f2, 0.0, tol, meta);
            return std::vector<GaussGreenReport>{r};
        };
    }

    throw std::invalid_argument("runner: unhandled scenario kind '" + spec.kind + "'");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

RunResult run_suite(const SuiteConfig& cfg, const RunOptions& opt) {
    RunContext ctx;
    ctx.cfg = &cfg;
    ctx.seed = opt.seed.value_or(cfg.seed);

    auto selected = cfg.select(opt.suite);
    // Resolve everything before the first flop.
    std::vector<Task> tasks;
    for (const auto* s : selected) tasks.push_back(make_task(ctx, *s));

    std::vector<std::vector<GaussGreenReport>> slots(tasks.size());
    int threads = std::max(1, opt.threads);
    if (threads == 1 || tasks.size() <= 1) {
        for (size_t i = 0; i < tasks.size(); ++i) slots[i] = tasks[i]();
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(tasks.size());
        for (int t = 0; t < std::min<size_t>(threads, tasks.size()); ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) return;
                    try {
                        slots[i] = tasks[i]();
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    RunResult res;
    res.all_pass = true;
    std::string csv = "scenario,lhs,rhs,residual,rel_residual,pass,meta\n";
    json jreports = json::array();
    for (const auto& slot : slots) {
        for (const auto& r : slot) {
            res.reports.push_back(r);
            res.all_pass = res.all_pass && r.pass;
            csv += r.scenario + "," + format_double(r.lhs) + "," + format_double(r.rhs) + "," +
                   format_double(r.residual) + "," + format_double(r.rel_residual) + "," +
                   (r.pass ? "true" : "false") + "," + r.meta + "\n";
            jreports.push_back({{"scenario", r.scenario},
                                {"lhs", r.lhs},
                                {"rhs", r.rhs},
                                {"residual", r.residual},
                                {"rel_residual", r.rel_residual},
                                {"absolute_mode", r.absolute_mode},
                                {"tolerance", r.tolerance},
                                {"pass", r.pass},
                                {"meta", r.meta}});
        }
    }
    res.csv = std::move(csv);
    json resolved = cfg.raw;
    resolved["seed"] = ctx.seed;
    res.json_report = {{"config", resolved},
                       {"suite", opt.suite},
                       {"reports", jreports},
                       {"all_pass", res.all_pass}};
    return res;
}

std::string list_presets() {
    std::string out = "algebras:\n";
    for (const auto& n : presets::algebra_names()) out += "  " + n + "\n";
    out += "domains:\n";
    for (const auto& n : presets::domain_names()) out += "  " + n + "\n";
    out += "fields:\n";
    for (const auto& n : presets::field_names()) out += "  " + n + "\n";
    out += "scalars:\n";
    for (const auto& n : presets::scalar_names()) out += "  " + n + "\n";
    out += "green functions:\n";
    for (const auto& n : presets::green_names()) out += "  " + n + "\n";
    return out;
}

std::string describe_preset(const std::string& name) { return presets::describe(name); }

} // namespace carnot
