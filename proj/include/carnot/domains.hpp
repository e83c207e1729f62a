#pragma once

#include "carnot/fields.hpp"
#include "carnot/metric.hpp"
#include "carnot/quadrature.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace carnot {

/// Analytic boundary patch: maps a (q-1)-dimensional parameter box to
/// boundary points with exterior Euclidean normal and area element.
struct BoundaryChart {
    BoxRegion param; // parameter box, dimension q-1
    std::function<void(const Vec& uv, Vec& point, Vec& normal, double& area_element)> map;
};

/// Implicit domain E = {level < 0} inside a bounding box. The level function
/// needs a nonvanishing Euclidean gradient near its zero set; charts, when
/// present, replace surface meshing.
struct DomainSpec {
    std::string name;
    ScalarField level; // egrad strongly recommended (exact normals)
    BoxRegion bbox;
    std::vector<BoundaryChart> charts;

    bool inside(const Vec& p) const { return level.eval(p) < 0.0; }
};

/// One boundary quadrature site. `hcoeffs[j] = <N, X_j(point)>` in Euclidean
/// coordinates; `density = |hcoeffs|` is the weight of the horizontal
/// perimeter measure relative to Euclidean surface measure.
struct BoundarySample {
    Vec point;
    Vec normal;   // unit Euclidean exterior normal
    Vec hcoeffs;  // m components
    double density = 0.0;
    double weight = 0.0; // Euclidean surface quadrature weight
};

/// Boundary points where the horizontal density drops below this are treated
/// as characteristic; they carry zero perimeter density either way.
constexpr double kCharacteristicThreshold = 1e-10;

/// Fill the horizontal data (hcoeffs, density) of a sample from the frame.
void attach_horizontal_data(const StratifiedAlgebra& a, BoundarySample& s);

/// Unit horizontal normal and density; nullopt at characteristic points.
std::optional<Vec> horizontal_normal(const StratifiedAlgebra& a, const BoundarySample& s);

/// Discretize the boundary of E inside its bbox. Charts are used when
/// present; otherwise a marching-tetrahedra mesh of the zero level set
/// (requires q == 3) with one sample per triangle centroid. Throws if the
/// boundary is empty or the level gradient degenerates at a sample.
std::vector<BoundarySample> sample_boundary(const StratifiedAlgebra& a, const DomainSpec& d,
                                            int resolution);

/// Total mass of the horizontal perimeter measure: sum of density * weight.
double h_perimeter(const StratifiedAlgebra& a, const DomainSpec& d, int resolution);

double h_perimeter(const std::vector<BoundarySample>& samples);

/// Integral of g against the horizontal perimeter measure; characteristic
/// samples contribute nothing through the density factor.
double boundary_integral(const StratifiedAlgebra& a, const DomainSpec& d,
                         const std::function<double(const BoundarySample&)>& g, int resolution);

double boundary_integral(const std::vector<BoundarySample>& samples,
                         const std::function<double(const BoundarySample&)>& g);

/// Integral of f over E = {level < 0} within the bbox. Tensor grids resolve
/// boundary cells with an exact plane-cut decomposition per tetrahedron
/// (q == 3); other dimensions and Monte Carlo use plain indicator weighting.
double volume_integral(const StratifiedAlgebra& a, const DomainSpec& d, const ScalarField& f,
                       const QuadratureSpec& quad, const Rng& rng);

/// The dilated domain delta_lambda(E): level'(x) = level(delta_{1/lambda} x),
/// bbox scaled per-axis. Charts are dropped (the image is meshed).
DomainSpec dilate_domain(const StratifiedAlgebra& a, const DomainSpec& d, double lambda);

/// E's complement within the same window: level sign flipped.
DomainSpec negate_domain(const DomainSpec& d);

} // namespace carnot
