#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace gapfield {

using cplx = std::complex<double>;

struct Point {
  double x = 0, y = 0;
};

struct BipolarPoint {
  double xi = 0, theta = 0;
};

struct Circle {
  Point center;
  double radius = 0;
};

struct CoreShellConfig {
  double r_i = 1, r_e = 2, epsilon = 0.1, k_i = 1, k_e = 0.01;
  void validate() const;
};

struct TwoDiskConfig {
  double r_1 = 1, r_2 = 1, epsilon = 0.1, k_1 = 10, k_2 = 10;
  void validate() const;
};

enum class Layout { core_shell, two_disks };

// A circle of the frame together with its signed bipolar level.
struct LevelCircle {
  double xi = 0;
  Circle circle;
};

enum class Interface { inner, outer };

class BipolarFrame {
 public:
  static BipolarFrame core_shell(const CoreShellConfig& cfg);
  static BipolarFrame two_disks(const TwoDiskConfig& cfg);

  Layout layout() const { return layout_; }
  double alpha() const { return alpha_; }
  double r_star() const { return r_star_; }
  double epsilon() const { return epsilon_; }

  // Core-shell levels; xi_i > xi_e > 0.
  double xi_i() const;
  double xi_e() const;
  // Two-disk level magnitudes; the left disk sits at level -xi_1.
  double xi_1() const;
  double xi_2() const;

  // [inner, outer] for core-shell, [left, right] for two disks.
  const std::vector<LevelCircle>& circles() const { return circles_; }
  Point pole_left() const { return {-alpha_, 0}; }
  Point pole_right() const { return {alpha_, 0}; }
  // Closest points of the two circles (core-shell: on the core, on the shell).
  std::pair<Point, Point> closest_points() const;

  BipolarPoint to_bipolar(Point p) const;
  Point to_cartesian(BipolarPoint b) const;
  double scale_factor(BipolarPoint b) const;
  // Unit vectors (e_xi, e_theta).
  std::pair<Point, Point> basis(BipolarPoint b) const;
  Circle circle_of_level(double xi0) const;
  // xi_{i,k} = 2k(xi_i - xi_e) + xi_i and xi_{e,k} = 2k(xi_i - xi_e) + xi_e.
  double reflected_level(int k, Interface which) const;

  // dw/dz at z, w = xi + i theta.
  cplx dw_dz(Point p) const;

 private:
  Layout layout_ = Layout::core_shell;
  double alpha_ = 0, r_star_ = 0, epsilon_ = 0;
  std::vector<LevelCircle> circles_;
};

Point reflect_point(const Circle& c, Point p);

inline cplx to_complex(Point p) { return {p.x, p.y}; }
inline Point to_point(cplx z) { return {z.real(), z.imag()}; }
double distance(Point a, Point b);
double dot(Point a, Point b);

// cosh(xi) + cos(theta) without cancellation near (0, pi).
double bipolar_denominator(double xi, double theta);

}  // namespace gapfield
