#pragma once

#include <vector>

#include "gapfield/field.hpp"
#include "gapfield/harmonic.hpp"

namespace gapfield {

enum class Parametrization { polar, bipolar };

// Trapezoid nodes on one circle. Bipolar nodes are uniform in theta on the
// level xi0, so they cluster towards the gap.
struct DiscretizedBoundary {
  Circle circle;
  Parametrization kind = Parametrization::polar;
  double xi0 = 0;
  double k_in = 1, k_out = 1;
  std::vector<double> param;
  std::vector<Point> nodes, normals;  // outward unit normals
  std::vector<double> weights;        // arc length

  int size() const { return static_cast<int>(nodes.size()); }
  double param_step() const;
  // Signed distance |p - c| - r and the local node spacing near p.
  double signed_distance(Point p) const;
  double local_spacing(Point p) const;
};

DiscretizedBoundary discretize_polar(const Circle& c, int M);
DiscretizedBoundary discretize_level(const BipolarFrame& frame, double xi0, int M);

// Single-layer densities on a set of circles.
struct BoundaryDensities {
  Layout layout = Layout::core_shell;
  std::vector<DiscretizedBoundary> boundaries;
  std::vector<std::vector<double>> phi;
};

Region region_by_containment(const BoundaryDensities& d, Point p);

// u = H + sum_j S_j[phi_j] and its gradient by the trapezoid rule. Throws when
// p lies within guard_factor node spacings of a circle.
FieldSample eval_layers(const BoundaryDensities& d, const HarmonicBackground& H, Point p,
                        double guard_factor);

// Outward normal derivative of H at the node set.
std::vector<double> normal_derivative(const DiscretizedBoundary& b, const HarmonicBackground& H);

// Trapezoid mean of phi over the circle.
double weighted_mean(const DiscretizedBoundary& b, const std::vector<double>& phi);

}  // namespace gapfield
