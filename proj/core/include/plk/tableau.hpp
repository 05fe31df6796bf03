#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "plk/point_set.hpp"
#include "plk/rational.hpp"

namespace plk {

using Profile = std::vector<std::int64_t>;

// Lattice staircase {(x,y) : x < width, y < h_x} with h_0 >= h_1 >= ... >= 1.
class Tableau {
 public:
  Tableau() = default;
  // Accepts trailing zeros; rejects increasing or negative entries.
  static Tableau from_profile(Profile profile);
  // Union of closed boxes {0..N} x {0..M}.
  static Tableau from_corners(const std::vector<Point>& corners);
  // Smallest tableau containing the set (its down-closure).
  static Tableau down_closure(const PointSet2& s);

  const Profile& profile() const { return profile_; }
  std::int64_t width() const { return static_cast<std::int64_t>(profile_.size()); }
  std::int64_t height() const { return profile_.empty() ? 0 : profile_.front(); }
  std::int64_t column_height(std::int64_t x) const;
  bool empty() const { return profile_.empty(); }
  std::int64_t measure() const;
  bool contains(std::int64_t x, std::int64_t y) const;
  // Closed-box corners (N,M), sorted by N ascending.
  std::vector<Point> corners() const;
  std::vector<Point> cells() const;
  PointSet2 to_point_set(Window w) const;

  friend bool operator==(const Tableau&, const Tableau&) = default;

 private:
  Profile profile_;
};

bool is_subtableau(const Tableau& s, const Tableau& t);
// |t| - |s|; requires s ⊆ t.
std::int64_t difference_measure(const Tableau& t, const Tableau& s);

// Union of half-open rectangles [0,N) x [0,M) with N, M >= 1.
class TableauRegion {
 public:
  TableauRegion() = default;
  explicit TableauRegion(const std::vector<Point>& corners);
  static TableauRegion from_tableau(const Tableau& t);

  // Antichain sorted by N ascending (so M descending).
  const std::vector<Point>& corners() const { return corners_; }
  std::size_t size() const { return corners_.size(); }
  bool empty() const { return corners_.empty(); }
  std::int64_t measure() const;
  std::int64_t width() const { return corners_.empty() ? 0 : corners_.back().x; }
  std::int64_t height() const { return corners_.empty() ? 0 : corners_.front().y; }
  // Height of the column [x, x+1).
  std::int64_t height_at(std::int64_t x) const;
  bool contains(std::int64_t x, std::int64_t y) const { return y >= 0 && x >= 0 && y < height_at(x); }
  // Disjoint vertical strips, one per corner.
  std::vector<Box> rectangles() const;
  Tableau to_tableau() const;
  PointSet2 to_point_set(Window w) const;

  TableauRegion intersect(const TableauRegion& o) const;
  TableauRegion unite(const TableauRegion& o) const;

  friend bool operator==(const TableauRegion&, const TableauRegion&) = default;

 private:
  std::vector<Point> corners_;
};

// Tableau region whose corner coordinates are all multiples of D.
class DTableauRegion {
 public:
  DTableauRegion(TableauRegion region, std::int64_t d);
  const TableauRegion& region() const { return region_; }
  std::int64_t divisor() const { return d_; }

 private:
  TableauRegion region_;
  std::int64_t d_;
};

// True iff (w \ T) + (1,0) and (w \ T) + (0,1) stay outside T inside w.
// T must fit in w with a margin of at least one row and column.
bool complement_additive_check(const Tableau& t, Window w);
bool complement_additive_check(const PointSet2& t, Window w);

// Number of weakly decreasing profiles dominated by t (including the empty one).
Integer count_subtableaux(const Tableau& t);

// Subtableaux of t in lexicographic order of profiles, largest first.
class SubtableauEnumerator {
 public:
  static constexpr std::int64_t kDefaultGuard = 1'000'000;

  SubtableauEnumerator(const Tableau& t, bool include_empty, std::int64_t guard = kDefaultGuard);

  // Next subtableau, or nullopt when exhausted.
  std::optional<Tableau> next();
  std::int64_t index() const { return index_; }
  std::int64_t total() const { return total_; }
  void restart();

 private:
  bool advance();

  Profile top_;
  Profile cur_;
  bool include_empty_;
  bool done_ = false;
  bool started_ = false;
  std::int64_t index_ = 0;
  std::int64_t total_ = 0;
};

std::vector<Tableau> enumerate_subtableaux(const Tableau& t, bool include_empty,
                                           std::int64_t guard = SubtableauEnumerator::kDefaultGuard);

// Per-cell weights indexed [x][y] over a shape.
using CellField = std::vector<std::vector<Rational>>;

struct ExtremalSubtableau {
  Rational value;
  Profile profile;  // padded to the width of hi
};

// Optimizes the weight sum over weakly decreasing profiles s with lo <= s <= hi.
// lo and hi are padded with zeros to a common width; hi must be weakly decreasing.
// Returns nullopt when no profile fits between lo and hi.
std::optional<ExtremalSubtableau> extremal_subtableau(const Profile& hi, const Profile& lo, const CellField& weight,
                                                      bool maximize);

Tableau canonical(const Profile& padded);

}  // namespace plk
