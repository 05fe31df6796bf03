#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace plk {

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const Point&, const Point&) = default;
  // Row-major order: by y, then x.
  friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
};

struct Window {
  std::int64_t W = 1;
  std::int64_t H = 1;

  Window() = default;
  Window(std::int64_t w, std::int64_t h);

  std::int64_t area() const { return W * H; }
  bool contains(std::int64_t x, std::int64_t y) const { return x >= 0 && y >= 0 && x < W && y < H; }
  friend bool operator==(const Window&, const Window&) = default;
};

// Half-open integer box [x0,x1) x [y0,y1).
struct Box {
  std::int64_t x0 = 0, y0 = 0, x1 = 0, y1 = 0;

  bool empty() const { return x1 <= x0 || y1 <= y0; }
  std::int64_t area() const { return empty() ? 0 : (x1 - x0) * (y1 - y0); }
  friend bool operator==(const Box&, const Box&) = default;
};

class PointSet1 {
 public:
  explicit PointSet1(std::int64_t window_len);
  static PointSet1 from_points(std::int64_t window_len, const std::vector<std::int64_t>& pts);

  std::int64_t window_len() const { return len_; }
  bool contains(std::int64_t x) const;
  void insert(std::int64_t x);
  void erase(std::int64_t x);
  std::int64_t count() const;
  // |A ∩ [0, n]| for 0 <= n < window_len.
  std::int64_t count_prefix(std::int64_t n) const;
  std::vector<std::int64_t> points() const;

  friend bool operator==(const PointSet1& a, const PointSet1& b) { return a.points() == b.points(); }

 private:
  void check(std::int64_t x) const;

  std::int64_t len_;
  std::vector<std::uint64_t> bits_;
};

class PointSet2 {
 public:
  explicit PointSet2(Window w);
  PointSet2(std::int64_t W, std::int64_t H) : PointSet2(Window(W, H)) {}
  static PointSet2 from_points(Window w, const std::vector<Point>& pts);
  static PointSet2 full(Window w);
  static PointSet2 box(Window w, const Box& b);

  const Window& window() const { return w_; }
  std::int64_t width() const { return w_.W; }
  std::int64_t height() const { return w_.H; }
  std::size_t words_per_row() const { return wpr_; }

  // Queries and updates outside the window are errors.
  bool contains(std::int64_t x, std::int64_t y) const;
  bool contains(const Point& p) const { return contains(p.x, p.y); }
  void insert(std::int64_t x, std::int64_t y);
  void insert(const Point& p) { insert(p.x, p.y); }
  void erase(std::int64_t x, std::int64_t y);
  void erase(const Point& p) { erase(p.x, p.y); }
  void fill(const Box& b);
  void clear(const Box& b);

  std::int64_t count() const;
  // Count within the box clipped to the window.
  std::int64_t count_in(const Box& b) const;
  bool empty() const;
  std::vector<Point> points() const;
  std::optional<Box> bounding_box() const;

  // Same point set, new window; points outside the new window are dropped.
  PointSet2 resized(Window w) const;

  PointSet2& operator|=(const PointSet2& o);
  PointSet2& operator&=(const PointSet2& o);
  PointSet2& operator-=(const PointSet2& o);
  friend PointSet2 operator|(PointSet2 a, const PointSet2& b) { return a |= b; }
  friend PointSet2 operator&(PointSet2 a, const PointSet2& b) { return a &= b; }
  friend PointSet2 operator-(PointSet2 a, const PointSet2& b) { return a -= b; }
  // Window complement.
  PointSet2 complement() const;
  bool is_subset_of(const PointSet2& o) const;

  // Extensional: equal iff the same points, whatever the windows.
  friend bool operator==(const PointSet2& a, const PointSet2& b);

  std::uint64_t* row(std::int64_t y) { return bits_.data() + static_cast<std::size_t>(y) * wpr_; }
  const std::uint64_t* row(std::int64_t y) const { return bits_.data() + static_cast<std::size_t>(y) * wpr_; }
  // Clears any bits beyond the window width.
  void mask_tail();

 private:
  void check(std::int64_t x, std::int64_t y) const;
  void require_same_window(const PointSet2& o) const;

  Window w_;
  std::size_t wpr_;
  std::vector<std::uint64_t> bits_;
};

// Number of set bits of a bit row in [x0, x1).
std::int64_t count_bits(const std::uint64_t* words, std::int64_t x0, std::int64_t x1);

}  // namespace plk
