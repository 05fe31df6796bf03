#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plk/point_set.hpp"
#include "plk/rational.hpp"
#include "plk/tableau.hpp"
#include "plk/trimming.hpp"

namespace plk {

struct TilingCell {
  Box box;
  std::int64_t m = 0;  // corner rectangle strip, 0-based
  std::int64_t i = 0;  // coarse column inside the strip
  std::int64_t j = 0;  // coarse row inside the strip
  std::int64_t t1 = 0, t2 = 0;  // index tableau coordinates
};

// The refined Q^2-tiling of a tableau region with sides divisible by Q^2.
class TilingContext {
 public:
  static TilingContext build(const TableauRegion& f, std::int64_t q);
  static TilingContext build(const DTableauRegion& f, std::int64_t q) { return build(f.region(), q); }

  const TableauRegion& region() const { return f_; }
  std::int64_t q() const { return q_; }
  std::int64_t ell() const { return static_cast<std::int64_t>(f_.size()); }
  // W(0) = 0, W(m) for m = 1..ell; H(m) likewise.
  std::int64_t W(std::int64_t m) const { return m == 0 ? 0 : f_.corners()[m - 1].x; }
  std::int64_t H(std::int64_t m) const { return f_.corners()[m - 1].y; }
  Box strip(std::int64_t m) const { return Box{W(m - 1), 0, W(m), H(m)}; }  // U_m, 1-based
  const std::vector<Box>& coarse_cells() const { return coarse_; }
  const std::vector<std::int64_t>& ordinates() const { return ys_; }
  const std::vector<TilingCell>& cells() const { return cells_; }
  const Tableau& index_tableau() const { return index_; }
  // psi^{-1}(t1, t2) as an index into cells().
  std::int64_t cell_at(std::int64_t t1, std::int64_t t2) const;
  std::int64_t measure() const { return f_.measure(); }

  std::string to_json() const;

 private:
  TableauRegion f_;
  std::int64_t q_ = 2;
  std::vector<Box> coarse_;
  std::vector<std::int64_t> ys_;
  std::vector<TilingCell> cells_;
  std::vector<std::vector<std::int64_t>> at_;
  Tableau index_;
};

// |box ∩ region| in lattice points.
std::int64_t overlap(const TableauRegion& region, const Box& box);

// Region whose complement in F is the upper set generated by the points.
TableauRegion lower_complement(const TableauRegion& f, const std::vector<Point>& pts);

struct HullResult {
  Profile t_prime;                 // index subtableau of cells inside F'
  std::vector<std::int64_t> cells;  // hull cells (indices into cells())
  std::int64_t s_measure = 0;      // |S|
  std::int64_t hull_measure = 0;   // |S~|
  std::int64_t excess = 0;         // |S~ \ S|
  std::int64_t max_boundary_cells = 0;  // coarse cells meeting S and F' within one strip
  std::vector<std::int64_t> strip_excess;  // |S^ \ S| per strip for the coarse hull
  bool strip_bounds = false;       // strip_excess[m] <= (2/Q)|U_m| for every strip
  bool bound = false;              // excess <= (2/Q)|F|
};

// Hull of S = F \ F' for a tableau region F' ⊆ F.
HullResult measurable_hull(const TilingContext& ctx, const TableauRegion& f_prime);

struct TrimPointsResult {
  WeightedTableau weighted;
  Rational alpha;
  TrimOutput trimmed;
  std::vector<std::vector<std::int64_t>> kept;  // c(t) per index cell [t1][t2]
  PointSet2 a_prime{1, 1};
  bool cond_a = false;  // upper regions at most alpha + 1/Q^2
  bool cond_b = false;  // |A' ∩ F| >= alpha |F|
};

TrimPointsResult trim_points(const TilingContext& ctx, const PointSet2& a, const TrimOptions& opt = {});

struct StaircaseResult {
  std::vector<Point> points;                  // a_1..a_J
  std::vector<std::int64_t> corner_cells;     // E_1..E_J
  std::vector<std::vector<Box>> g_parts;      // G_j as disjoint boxes
  std::vector<std::vector<Box>> g_rects;      // G_j as rectangles anchored at a_j
  TableauRegion s_complement;                 // F' with S = F \ F'
  HullResult hull;
  std::int64_t s_measure = 0;
  std::int64_t g_measure = 0;
  bool gaps = false;      // y(a_j) <= y(a_{j-1}) - Q
  bool inside = false;    // G ⊆ S
  bool bound = false;     // |S| - |G| <= (3/Q)|F|
  bool disjoint = false;  // the G_j are disjoint with union G
  bool tight = false;     // bound holds within 1 lattice point
};

StaircaseResult staircase(const TilingContext& ctx, const PointSet2& a_prime);

struct BadRegion {
  std::vector<Box> rows;  // BadRow_m, m = 1..ell
  std::vector<Box> cols;  // BadCol_m
  std::int64_t rows_union = 0;
  std::int64_t total_union = 0;
  bool rows_bound = false;  // |∪ BadRow| <= (ell/Q)|F|
  bool cols_exact = false;  // |BadCol_m| = |U_m|/Q
};

BadRegion bad_regions(const TilingContext& ctx);

struct RemovalResult {
  PointSet2 a0{1, 1};
  bool bound = false;  // |A0| >= |A'| - (ell+1)|F|/Q
};

RemovalResult remove_bad(const TilingContext& ctx, const PointSet2& a_prime, const BadRegion& bad);

// Area of a union of boxes.
std::int64_t union_area(const std::vector<Box>& boxes);

struct SvgLayers {
  const PointSet2* points = nullptr;
  const TableauRegion* s_complement = nullptr;
  const HullResult* hull = nullptr;
  const StaircaseResult* stairs = nullptr;
  const BadRegion* bad = nullptr;
};

std::string render_svg(const TilingContext& ctx, const SvgLayers& layers, double scale = 4.0);

}  // namespace plk
