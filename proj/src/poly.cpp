#include "carnot/poly.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace carnot {

Interval Interval::operator*(const Interval& o) const {
    double a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    return {std::min(std::min(a, b), std::min(c, d)),
            std::max(std::max(a, b), std::max(c, d))};
}

Interval operator*(double s, const Interval& v) {
    return s >= 0 ? Interval{s * v.lo, s * v.hi} : Interval{s * v.hi, s * v.lo};
}

Poly::Poly(double c) {
    if (c != 0.0) terms_[Expo{}] = c;
}

Poly Poly::var(int i, double coeff) {
    if (i < 0 || i >= kMaxVars) throw std::out_of_range("Poly::var index");
    Poly p;
    Expo e{};
    e[i] = 1;
    if (coeff != 0.0) p.terms_[e] = coeff;
    return p;
}

void Poly::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0.0) it = terms_.erase(it);
        else ++it;
    }
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) terms_[e] += c;
    prune();
    return *this;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    r -= o;
    return r;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) terms_[e] -= c;
    prune();
    return *this;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Expo e;
            for (int i = 0; i < kMaxVars; ++i) {
                int s = ea[i] + eb[i];
                if (s > 255) throw std::overflow_error("Poly degree overflow");
                e[i] = static_cast<uint8_t>(s);
            }
            r.terms_[e] += ca * cb;
        }
    }
    r.prune();
    return r;
}

Poly Poly::operator*(double s) const {
    Poly r;
    if (s == 0.0) return r;
    for (const auto& [e, c] : terms_) r.terms_[e] = c * s;
    return r;
}

Poly Poly::derivative(int var) const {
    Poly r;
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Expo d = e;
        d[var] -= 1;
        r.terms_[d] += c * e[var];
    }
    r.prune();
    return r;
}

Poly Poly::zero_out(int first, int last) const {
    Poly r;
    for (const auto& [e, c] : terms_) {
        bool keep = true;
        for (int i = first; i < last; ++i)
            if (e[i] != 0) { keep = false; break; }
        if (keep) r.terms_[e] += c;
    }
    r.prune();
    return r;
}

Poly Poly::linear_part(int var, int first, int last) const {
    Poly r;
    for (const auto& [e, c] : terms_) {
        if (e[var] != 1) continue;
        bool keep = true;
        for (int i = first; i < last; ++i)
            if (i != var && e[i] != 0) { keep = false; break; }
        if (!keep) continue;
        Expo d = e;
        d[var] = 0;
        r.terms_[d] += c;
    }
    r.prune();
    return r;
}

double Poly::eval(const double* x, int n) const {
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = c;
        for (int i = 0; i < kMaxVars; ++i) {
            if (e[i] == 0) continue;
            if (i >= n) throw std::out_of_range("Poly::eval: missing variable value");
            double b = x[i];
            for (int k = 0; k < e[i]; ++k) t *= b;
        }
        sum += t;
    }
    return sum;
}

Interval Poly::eval(const Interval* x, int n) const {
    Interval sum(0.0);
    for (const auto& [e, c] : terms_) {
        Interval t(c);
        for (int i = 0; i < kMaxVars; ++i) {
            if (e[i] == 0) continue;
            if (i >= n) throw std::out_of_range("Poly::eval: missing variable value");
            for (int k = 0; k < e[i]; ++k) t = t * x[i];
        }
        sum += t;
    }
    return sum;
}

std::string Poly::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        double mag = std::fabs(c);
        out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
        first = false;
        std::string mono;
        for (int i = 0; i < kMaxVars; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += (i < static_cast<int>(names.size())) ? names[i] : ("v" + std::to_string(i));
            if (e[i] > 1) mono += "^" + std::to_string(int(e[i]));
        }
        char buf[64];
        if (mono.empty()) {
            std::snprintf(buf, sizeof(buf), "%g", mag);
            out += buf;
        } else if (mag == 1.0) {
            out += mono;
        } else {
            std::snprintf(buf, sizeof(buf), "%g", mag);
            out += std::string(buf) + "*" + mono;
        }
    }
    return out;
}

} // namespace carnot
