#pragma once

#include "carnot/metric.hpp"
#include "carnot/rng.hpp"
#include "carnot/types.hpp"

#include <array>
#include <functional>
#include <vector>

namespace carnot {

/// How to integrate over a box: a tensor-product cell grid with a 2-point
/// Gauss rule per axis in every cell, or plain Monte Carlo.
struct QuadratureSpec {
    enum class Kind { TensorGrid, MonteCarlo } kind = Kind::TensorGrid;
    std::array<int, kMaxQ> resolution{}; // cells per axis (TensorGrid)
    int axes = 0;                        // entries set explicitly; 0 = uniform
    long samples = 0;                    // MonteCarlo

    static QuadratureSpec tensor(int res_all_axes);
    static QuadratureSpec tensor(const std::vector<int>& res);
    static QuadratureSpec monte_carlo(long samples);

    void validate(int q) const;
    std::string str() const;
};

/// Integral of f over the box. Monte Carlo consumes the rng counter space;
/// results are deterministic per rng key.
double integrate_box(const BoxRegion& region, const std::function<double(const Vec&)>& f,
                     const QuadratureSpec& spec, const Rng& rng);

/// Gauss-Legendre nodes/weights on [0,1].
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Visit the tensor quadrature nodes (2-pt Gauss per axis per cell) of the
/// region; cb(point, weight).
void for_each_tensor_node(const BoxRegion& region, const std::array<int, kMaxQ>& res,
                          const std::function<void(const Vec&, double)>& cb);

/// Fraction of the tetrahedron {v0..v3} on which the linear interpolant of
/// the vertex values is negative. Exact for linear level functions.
double tet_negative_fraction(const std::array<Vec, 4>& verts, const std::array<double, 4>& g,
                             double volume);

double tet_volume(const std::array<Vec, 4>& verts);

} // namespace carnot
