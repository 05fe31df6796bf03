#include "plk/point_set.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "plk/error.hpp"

namespace plk {

namespace {

std::size_t words_for(std::int64_t n) { return static_cast<std::size_t>((n + 63) / 64); }

std::uint64_t low_mask(std::int64_t n) { return n >= 64 ? ~0ULL : ((1ULL << n) - 1); }

void set_range(std::uint64_t* words, std::int64_t x0, std::int64_t x1, bool on) {
  while (x0 < x1) {
    std::int64_t w = x0 / 64, off = x0 % 64;
    std::int64_t n = std::min<std::int64_t>(64 - off, x1 - x0);
    std::uint64_t m = low_mask(n) << off;
    if (on)
      words[w] |= m;
    else
      words[w] &= ~m;
    x0 += n;
  }
}

}  // namespace

std::int64_t count_bits(const std::uint64_t* words, std::int64_t x0, std::int64_t x1) {
  std::int64_t total = 0;
  while (x0 < x1) {
    std::int64_t w = x0 / 64, off = x0 % 64;
    std::int64_t n = std::min<std::int64_t>(64 - off, x1 - x0);
    total += std::popcount((words[w] >> off) & low_mask(n));
    x0 += n;
  }
  return total;
}

Window::Window(std::int64_t w, std::int64_t h) : W(w), H(h) {
  require(w >= 1 && h >= 1, ErrorKind::InvalidInput,
          "window must be at least 1x1, got " + std::to_string(w) + "x" + std::to_string(h));
}

// ---- PointSet1 ----

PointSet1::PointSet1(std::int64_t window_len) : len_(window_len) {
  require(window_len >= 1, ErrorKind::InvalidInput, "window length must be positive");
  bits_.assign(words_for(len_), 0);
}

PointSet1 PointSet1::from_points(std::int64_t window_len, const std::vector<std::int64_t>& pts) {
  PointSet1 s(window_len);
  for (auto x : pts) s.insert(x);
  return s;
}

void PointSet1::check(std::int64_t x) const {
  require(x >= 0 && x < len_, ErrorKind::InvalidInput,
          "point " + std::to_string(x) + " outside window [0," + std::to_string(len_) + ")");
}

bool PointSet1::contains(std::int64_t x) const {
  check(x);
  return (bits_[x / 64] >> (x % 64)) & 1ULL;
}

void PointSet1::insert(std::int64_t x) {
  check(x);
  bits_[x / 64] |= 1ULL << (x % 64);
}

void PointSet1::erase(std::int64_t x) {
  check(x);
  bits_[x / 64] &= ~(1ULL << (x % 64));
}

std::int64_t PointSet1::count() const { return count_bits(bits_.data(), 0, len_); }

std::int64_t PointSet1::count_prefix(std::int64_t n) const {
  check(n);
  return count_bits(bits_.data(), 0, n + 1);
}

std::vector<std::int64_t> PointSet1::points() const {
  std::vector<std::int64_t> out;
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    std::uint64_t v = bits_[w];
    while (v) {
      out.push_back(static_cast<std::int64_t>(w * 64 + std::countr_zero(v)));
      v &= v - 1;
    }
  }
  return out;
}

// ---- PointSet2 ----

PointSet2::PointSet2(Window w) : w_(w), wpr_(words_for(w.W)) {
  bits_.assign(wpr_ * static_cast<std::size_t>(w.H), 0);
}

PointSet2 PointSet2::from_points(Window w, const std::vector<Point>& pts) {
  PointSet2 s(w);
  for (const auto& p : pts) s.insert(p);
  return s;
}

PointSet2 PointSet2::full(Window w) {
  PointSet2 s(w);
  s.fill(Box{0, 0, w.W, w.H});
  return s;
}

PointSet2 PointSet2::box(Window w, const Box& b) {
  PointSet2 s(w);
  s.fill(b);
  return s;
}

void PointSet2::check(std::int64_t x, std::int64_t y) const {
  require(w_.contains(x, y), ErrorKind::InvalidInput,
          "point (" + std::to_string(x) + "," + std::to_string(y) + ") outside window " +
              std::to_string(w_.W) + "x" + std::to_string(w_.H));
}

void PointSet2::require_same_window(const PointSet2& o) const {
  require(w_ == o.w_, ErrorKind::InvalidInput, "set operation on different windows");
}

bool PointSet2::contains(std::int64_t x, std::int64_t y) const {
  check(x, y);
  return (row(y)[x / 64] >> (x % 64)) & 1ULL;
}

void PointSet2::insert(std::int64_t x, std::int64_t y) {
  check(x, y);
  row(y)[x / 64] |= 1ULL << (x % 64);
}

void PointSet2::erase(std::int64_t x, std::int64_t y) {
  check(x, y);
  row(y)[x / 64] &= ~(1ULL << (x % 64));
}

void PointSet2::fill(const Box& b) {
  std::int64_t x0 = std::max<std::int64_t>(b.x0, 0), x1 = std::min(b.x1, w_.W);
  std::int64_t y0 = std::max<std::int64_t>(b.y0, 0), y1 = std::min(b.y1, w_.H);
  for (std::int64_t y = y0; y < y1; ++y) set_range(row(y), x0, x1, true);
}

void PointSet2::clear(const Box& b) {
  std::int64_t x0 = std::max<std::int64_t>(b.x0, 0), x1 = std::min(b.x1, w_.W);
  std::int64_t y0 = std::max<std::int64_t>(b.y0, 0), y1 = std::min(b.y1, w_.H);
  for (std::int64_t y = y0; y < y1; ++y) set_range(row(y), x0, x1, false);
}

std::int64_t PointSet2::count() const {
  std::int64_t total = 0;
  for (auto v : bits_) total += std::popcount(v);
  return total;
}

std::int64_t PointSet2::count_in(const Box& b) const {
  std::int64_t x0 = std::max<std::int64_t>(b.x0, 0), x1 = std::min(b.x1, w_.W);
  std::int64_t y0 = std::max<std::int64_t>(b.y0, 0), y1 = std::min(b.y1, w_.H);
  if (x0 >= x1) return 0;
  std::int64_t total = 0;
  for (std::int64_t y = y0; y < y1; ++y) total += count_bits(row(y), x0, x1);
  return total;
}

bool PointSet2::empty() const {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t v) { return v == 0; });
}

std::vector<Point> PointSet2::points() const {
  std::vector<Point> out;
  for (std::int64_t y = 0; y < w_.H; ++y) {
    const auto* r = row(y);
    for (std::size_t w = 0; w < wpr_; ++w) {
      std::uint64_t v = r[w];
      while (v) {
        out.push_back(Point{static_cast<std::int64_t>(w * 64 + std::countr_zero(v)), y});
        v &= v - 1;
      }
    }
  }
  return out;
}

std::optional<Box> PointSet2::bounding_box() const {
  std::optional<Box> b;
  for (std::int64_t y = 0; y < w_.H; ++y) {
    const auto* r = row(y);
    for (std::size_t w = 0; w < wpr_; ++w) {
      if (!r[w]) continue;
      std::int64_t lo = static_cast<std::int64_t>(w * 64 + std::countr_zero(r[w]));
      std::int64_t hi = static_cast<std::int64_t>(w * 64 + 63 - std::countl_zero(r[w]));
      if (!b) b = Box{lo, y, hi + 1, y + 1};
      b->x0 = std::min(b->x0, lo);
      b->x1 = std::max(b->x1, hi + 1);
      b->y1 = y + 1;
    }
  }
  return b;
}

PointSet2 PointSet2::resized(Window w) const {
  PointSet2 out(w);
  std::int64_t rows = std::min(w.H, w_.H);
  std::size_t n = std::min(out.wpr_, wpr_);
  for (std::int64_t y = 0; y < rows; ++y) std::copy(row(y), row(y) + n, out.row(y));
  out.mask_tail();
  return out;
}

void PointSet2::mask_tail() {
  std::int64_t rem = w_.W % 64;
  if (rem == 0) return;
  std::uint64_t m = low_mask(rem);
  for (std::int64_t y = 0; y < w_.H; ++y) row(y)[wpr_ - 1] &= m;
}

PointSet2& PointSet2::operator|=(const PointSet2& o) {
  require_same_window(o);
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
  return *this;
}

PointSet2& PointSet2::operator&=(const PointSet2& o) {
  require_same_window(o);
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
  return *this;
}

PointSet2& PointSet2::operator-=(const PointSet2& o) {
  require_same_window(o);
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= ~o.bits_[i];
  return *this;
}

PointSet2 PointSet2::complement() const {
  PointSet2 out(w_);
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = ~bits_[i];
  out.mask_tail();
  return out;
}

bool PointSet2::is_subset_of(const PointSet2& o) const {
  require_same_window(o);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~o.bits_[i]) return false;
  return true;
}

bool operator==(const PointSet2& a, const PointSet2& b) {
  if (a.w_ == b.w_) return a.bits_ == b.bits_;
  return a.points() == b.points();
}

}  // namespace plk
