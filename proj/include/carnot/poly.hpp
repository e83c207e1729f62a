#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace carnot {

/// Closed interval [lo, hi]; the few arithmetic ops needed for conservative
/// range bounds of polynomial expressions.
struct Interval {
    double lo = 0.0, hi = 0.0;

    Interval() = default;
    Interval(double v) : lo(v), hi(v) {}
    Interval(double a, double b) : lo(a), hi(b) {}

    Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
    Interval operator-(const Interval& o) const { return {lo - o.hi, hi - o.lo}; }
    Interval operator*(const Interval& o) const;
    Interval& operator+=(const Interval& o) { *this = *this + o; return *this; }
};

Interval operator*(double s, const Interval& v);

/// Sparse multivariate polynomial with double coefficients.
/// Exponents are capped at kMaxVars variables; used for group-law tables and
/// polynomial test fields, where degrees and variable counts stay small.
class Poly {
public:
    static constexpr int kMaxVars = 32;
    using Expo = std::array<uint8_t, kMaxVars>;

    Poly() = default;
    Poly(double c);
    static Poly var(int i, double coeff = 1.0);

    bool is_zero() const { return terms_.empty(); }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(double s) const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);

    Poly derivative(int var) const;

    /// Substitute 0 for every variable in [first, last).
    Poly zero_out(int first, int last) const;

    /// Coefficient polynomial of the part exactly linear in variable `var`,
    /// with all variables in [first, last) other than `var` absent.
    Poly linear_part(int var, int first, int last) const;

    double eval(const double* x, int n) const;
    Interval eval(const Interval* x, int n) const;

    /// Rendered with the given variable names, e.g. "1 - x2*x3".
    std::string str(const std::vector<std::string>& names) const;

    const std::map<Expo, double>& terms() const { return terms_; }

private:
    void prune();
    std::map<Expo, double> terms_;
};

inline Poly operator*(double s, const Poly& p) { return p * s; }

} // namespace carnot
