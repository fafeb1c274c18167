#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "gapfield/boundary.hpp"
#include "gapfield/contrast.hpp"
#include "gapfield/harmonic.hpp"

namespace gapfield {

// Nystrom system  lambda_j phi_j - sum_{l != j} dS_l[phi_l]/dnu_j = dH/dnu_j.
struct DenseSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  BoundaryDensities geometry;  // densities left empty
  std::vector<double> lambda;  // infinite when k_in == k_out
  std::vector<int> offset;
};

// Node count per circle for a frame: max(256, ceil(C_gap sqrt(r_max/eps))), even.
int auto_node_count(const BipolarFrame& frame, double C_gap = 32);

DenseSystem assemble_system(const std::vector<DiscretizedBoundary>& boundaries, Layout layout,
                            const HarmonicBackground& H);
// M = 0 picks auto_node_count.
DenseSystem assemble_core_shell(const BipolarFrame& frame, const MaterialContrast& c, const HarmonicBackground& H,
                                int M = 0);
DenseSystem assemble_two_disk(const BipolarFrame& frame, const TwoDiskContrast& c, const HarmonicBackground& H,
                              int M = 0);

BoundaryDensities solve_densities(const DenseSystem& system);

// u and grad u; p must be 5 node spacings off every circle.
FieldSample eval_oracle(const BoundaryDensities& d, const HarmonicBackground& H, Point p);

// du/dnu at the nodes of circle j from outside (side = +1) or inside (side = -1).
std::vector<double> boundary_normal_derivative(const BoundaryDensities& d, const HarmonicBackground& H, int j,
                                               int side);
// u at the nodes of circle j (log-singular self term by Kress quadrature).
std::vector<double> boundary_potential(const BoundaryDensities& d, const HarmonicBackground& H, int j);
// du/dT at the nodes of circle j, T the counter-clockwise unit tangent.
std::vector<double> boundary_tangential_derivative(const BoundaryDensities& d, const HarmonicBackground& H, int j);

struct TestHarmonic {
  std::function<double(Point)> value;
  std::function<Point(Point)> gradient;
};
enum class HarmonicSide { interior, exterior };

// Residual of the single-layer identity for a disk: S[dv/dnu] against its
// closed form in terms of v, v(center) and the reflection of p.
double disk_layer_identity_check(const Circle& circle, const TestHarmonic& v, HarmonicSide side, Point p,
                                 int M = 256);

}  // namespace gapfield
