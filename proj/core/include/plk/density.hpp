#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plk/point_set.hpp"
#include "plk/rational.hpp"
#include "plk/tableau.hpp"

namespace plk {

// min over 0 <= n < len of |A ∩ [0,n]| / (n+1). Exact for the truncated set.
Rational schnirelmann_1d(const PointSet1& a);

// min over 0 <= n <= N, 0 <= m <= M of |A ∩ [0,n]x[0,m]| / ((n+1)(m+1)).
Rational schnirelmann_2d(const PointSet2& a, std::int64_t N, std::int64_t M);

enum class FolnerKind { Rect, TabL };

struct FolnerSpec {
  FolnerKind kind = FolnerKind::Rect;
  std::int64_t L = 1;
  std::int64_t r_min = 1;
  std::vector<TableauRegion> terms;

  // Checks corner counts, the side-length floor and nondecreasing measure.
  void validate() const;

  // round_to > 1 rounds every corner coordinate down to a multiple of round_to.
  static FolnerSpec rect(const std::vector<Point>& sizes, std::int64_t r_min = 1, std::int64_t round_to = 1);
  static FolnerSpec tab(std::int64_t L, const std::vector<std::vector<Point>>& terms, std::int64_t r_min = 1,
                        std::int64_t round_to = 1);
};

struct DensityReport {
  std::vector<Rational> ratios;
  std::vector<Rational> running_min;
  std::vector<Rational> running_max;
  std::size_t argmin = 0;
  std::size_t argmax = 0;

  const Rational& min() const { return ratios.at(argmin); }
  const Rational& max() const { return ratios.at(argmax); }
  std::string to_csv() const;
  std::string to_json() const;
};

// |A ∩ F| for a tableau region F inside the window of a.
std::int64_t count_in_region(const PointSet2& a, const TableauRegion& f);

DensityReport prefix_density(const PointSet2& a, const FolnerSpec& f);

struct TabEstimate {
  Rational value;
  TableauRegion witness;
  std::int64_t candidates = 0;
};

// Min of |A∩F|/|F| over unions F of at most L origin rectangles whose corner
// coordinates are multiples of stride in (R, window]. Guarded by max_candidates.
TabEstimate tab_lower_estimate(const PointSet2& a, std::int64_t R, std::int64_t L, std::int64_t stride,
                               std::int64_t max_candidates = 200'000'000);

// Eventually periodic subset of N: prefix [0, transient) given explicitly, then
// the residues in [0, period) repeat.
struct PeriodicSet1 {
  std::vector<std::int64_t> transient_points;
  std::int64_t transient = 0;
  std::vector<std::int64_t> residues;
  std::int64_t period = 1;

  bool contains(std::int64_t x) const;
  // Lower asymptotic density, exact.
  Rational density() const;
  PointSet1 truncate(std::int64_t len) const;
};

struct ProductReport {
  Rational estimate;
  Rational expected;
  Rational gap;  // |estimate - expected|
  TableauRegion witness;
};

// Tab(L) estimate of A x B on a window of side `window` with floor R, against d(A) d(B).
ProductReport product_density_check(const PeriodicSet1& a, const PeriodicSet1& b, std::int64_t L, std::int64_t R,
                                    std::int64_t window, std::int64_t stride);

}  // namespace plk
