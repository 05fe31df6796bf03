#pragma once

#include <vector>

#include "plk/point_set.hpp"

namespace plk {

// (A+B) ∩ w. Exact inside w because coordinates are nonnegative.
PointSet2 sumset(const PointSet2& a, const PointSet2& b, Window w);

// kB ∩ w; k = 0 gives {(0,0)}.
PointSet2 iterated_sumset(const PointSet2& b, unsigned k, Window w);

// ((A+nB) \ (C+(n-1)B)) ∩ w, n >= 1.
PointSet2 truncated_sumset(const PointSet2& a, const PointSet2& b, const PointSet2& c, unsigned n, Window w);

// Sumset in Z_m x Z_m where the operands live in an m x m window.
PointSet2 cyclic_sumset(const PointSet2& a, const PointSet2& b);
PointSet2 cyclic_iterated_sumset(const PointSet2& b, unsigned k);

PointSet2 embed_1d(const PointSet1& a);
// Inverse of embed_1d; every point must lie on row 0.
PointSet1 project_1d(const PointSet2& a);

// Maximal horizontal runs [x0, x0+len) of a bit row.
struct Run {
  std::int64_t x0;
  std::int64_t len;
};
std::vector<Run> row_runs(const PointSet2& s, std::int64_t y);

}  // namespace plk
