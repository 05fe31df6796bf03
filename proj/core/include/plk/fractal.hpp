#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plk/point_set.hpp"
#include "plk/rational.hpp"
#include "plk/tableau.hpp"

namespace plk {

// Pattern P ⊆ {0..N}^2 containing (0,0) with scales u_1 < u_2 < ...
struct FractalSpec {
  std::int64_t n = 1;
  std::vector<Point> pattern;
  std::vector<std::int64_t> schedule;  // u_1..u_K

  // u_k = (N+2)^k k! for k = 1..depth.
  static FractalSpec with_default_schedule(std::int64_t n, std::vector<Point> pattern, std::int64_t depth);

  void validate() const;
  std::int64_t depth() const { return static_cast<std::int64_t>(schedule.size()); }
  // u_0 = 0.
  std::int64_t u(std::int64_t k) const;
  // Side (N+1) u_K of the smallest window holding depth K completely.
  std::int64_t side(std::int64_t k) const { return (n + 1) * u(k); }
};

struct FractalLayers {
  std::vector<PointSet2> p;  // p[k-1] = P_k
  std::vector<PointSet2> a;  // a[k-1] = A_k
};

FractalLayers layers(const FractalSpec& spec, std::int64_t depth, Window w);
// Union of A_1..A_depth; the window must contain [0,(N+1)u_depth)^2.
PointSet2 generate(const FractalSpec& spec, std::int64_t depth, Window w);
PointSet2 generate(const FractalSpec& spec, std::int64_t depth);

// min |P ∩ [0,m]x[0,n]| / ((m+1)(n+1)) over m, n in 0..N.
Rational rect_density_formula(const std::vector<Point>& pattern, std::int64_t n);
// min |P ∩ T| / |T| over nonempty tableaux T inside {0..N} x {0..M}; M defaults to N.
Rational tab_density_formula(const std::vector<Point>& pattern, std::int64_t n, std::int64_t m = -1);

enum class PerturbSet {
  Fractal,   // the fractal set A itself, with u_k <= H <= u_{k+1}, W <= u_{k+1}
  TopLayer,  // P_k only; the upper bound u_{k+1} is dropped
};

struct PerturbStep {
  char axis = 'y';       // 'x' moves W_j, 'y' moves H_j
  std::size_t index = 0;  // corner index before the move
  std::int64_t from = 0;
  std::int64_t to = 0;
  Rational before;
  Rational after;
};

struct PerturbResult {
  TableauRegion region;
  Rational ratio_before;
  Rational ratio_after;
  std::vector<PerturbStep> steps;
};

// |x ∩ [0,W)x[0,H)| / WH with H snapped into {i u_k}; with both_sides W is snapped as well.
// x is the fractal (PerturbSet::Fractal) or the layer P_k (PerturbSet::TopLayer).
PerturbResult perturb_rectangle(const PointSet2& x, std::int64_t W, std::int64_t H, const FractalSpec& spec,
                                std::int64_t k, bool both_sides = false, PerturbSet set = PerturbSet::Fractal);

// Snaps every corner coordinate of f into {i u_k : 1 <= i <= N+1} against the layer p_k, never
// increasing the density ratio. Corners may merge along the way.
PerturbResult perturb_tableau_L(const PointSet2& p_k, const TableauRegion& f, const FractalSpec& spec,
                                std::int64_t k);

}  // namespace plk
