#pragma once

#include <array>
#include <string>
#include <vector>

#include "carnot/poly.hpp"
#include "carnot/types.hpp"

namespace carnot {

/// One nonzero structure constant: [e_i, e_j] contains c * e_k.
/// The table stores both (i,j) and (j,i) orientations.
struct BracketEntry {
    int i, j, k;
    double c;
};

/// A stratified nilpotent Lie algebra in a fixed graded basis, together with
/// everything derived from it: the exact group law (Baker-Campbell-Hausdorff,
/// hard-coded through bracket weight 4, exact for step <= 4), dilations,
/// inverses and the left-invariant frame as a table of polynomials.
///
/// Instances are immutable after construction and safe to share across
/// threads.
class StratifiedAlgebra {
public:
    /// `brackets` may list each pair once; the antisymmetric counterpart is
    /// filled in. Throws on antisymmetry conflicts, grading violations or
    /// step > 4. Jacobi and first-layer generativity are NOT verified; a
    /// one-line warning is emitted on stderr unless `quiet`.
    StratifiedAlgebra(std::vector<int> layer_dims, std::vector<BracketEntry> brackets,
                      bool quiet = true);

    int step() const { return step_; }
    int dim() const { return q_; }                  // topological dimension q
    int horizontal_dim() const { return m_; }       // dim of the first layer
    int hom_dimension() const { return Q_; }        // sum of i * dim(layer i)
    int degree(int j) const { return degree_[j]; }  // layer index of e_j, 0-based j
    const std::vector<int>& layer_dims() const { return layer_dims_; }

    GroupPoint identity() const { return GroupPoint::Zero(q_); }

    GroupPoint product(const GroupPoint& p, const GroupPoint& q) const;
    GroupPoint inverse(const GroupPoint& p) const;  // exp coordinates: -p
    GroupPoint dilate(double r, const GroupPoint& p) const;

    /// p * (t e_j), 0-based j. The one-parameter flow of the frame field X_j
    /// through p, used by directional finite differences.
    GroupPoint flow(const GroupPoint& p, int j, double t) const;

    /// m x q matrix whose row j holds the coordinates of X_j(p).
    Mat frame_coefficients(const GroupPoint& p) const;

    /// Entry (j,i) of the frame table as a polynomial in x1..xq.
    const Poly& frame_poly(int j, int i) const { return frame_[j][i]; }

    /// Coordinate k of the product as a polynomial in x1..xq (vars 0..q-1,
    /// left factor) and y1..yq (vars q..2q-1, right factor).
    const Poly& product_poly(int k) const { return product_poly_[k]; }

    /// Bracket of coefficient vectors through the structure constants.
    template <class T>
    void bracket(const std::array<T, kMaxQ>& u, const std::array<T, kMaxQ>& v,
                 std::array<T, kMaxQ>& out) const {
        for (int k = 0; k < q_; ++k) out[k] = T(0.0);
        for (const auto& e : entries_) out[e.k] += e.c * (u[e.i] * v[e.j]);
    }

    /// Group product on raw coordinate arrays; T may be double, Poly or
    /// Interval. BCH series through weight 4; brackets beyond the step vanish
    /// through the structure constants, so the truncation is exact.
    template <class T>
    void bch(const std::array<T, kMaxQ>& x, const std::array<T, kMaxQ>& y,
             std::array<T, kMaxQ>& z) const {
        for (int k = 0; k < q_; ++k) z[k] = x[k] + y[k];
        if (step_ < 2) return;
        std::array<T, kMaxQ> c1, c2, c3;
        bracket(x, y, c1);
        for (int k = 0; k < q_; ++k) z[k] += 0.5 * c1[k];
        if (step_ < 3) return;
        bracket(x, c1, c2);
        bracket(y, c1, c3);
        for (int k = 0; k < q_; ++k) z[k] += (1.0 / 12.0) * c2[k] + (-1.0 / 12.0) * c3[k];
        if (step_ < 4) return;
        bracket(y, c2, c1); // reuse c1 for [y,[x,[x,y]]]
        for (int k = 0; k < q_; ++k) z[k] += (-1.0 / 24.0) * c1[k];
    }

    void check_point(const GroupPoint& p, const char* who) const;

    std::string describe() const;
    const std::vector<std::string>& coord_names() const { return names_; }
    const std::vector<BracketEntry>& bracket_table() const { return entries_; }

private:
    void build_tables();

    int step_ = 1, q_ = 0, m_ = 0, Q_ = 0;
    std::vector<int> layer_dims_;
    std::vector<int> degree_;
    std::vector<BracketEntry> entries_;
    std::vector<std::string> names_;
    std::vector<Poly> product_poly_;            // q entries, 2q variables
    std::vector<std::vector<Poly>> frame_;      // m rows, q columns, q variables
};

} // namespace carnot
