#include "plk/tableau.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "plk/error.hpp"

namespace plk {

// ---- Tableau ----

Tableau Tableau::from_profile(Profile profile) {
  while (!profile.empty() && profile.back() == 0) profile.pop_back();
  for (std::size_t i = 0; i < profile.size(); ++i) {
    require(profile[i] > 0, ErrorKind::InvalidInput, "profile entries must be positive before trailing zeros");
    require(i == 0 || profile[i] <= profile[i - 1], ErrorKind::InvalidInput, "profile must be weakly decreasing");
  }
  Tableau t;
  t.profile_ = std::move(profile);
  return t;
}

Tableau Tableau::from_corners(const std::vector<Point>& corners) {
  std::int64_t width = 0;
  for (const auto& c : corners) {
    require(c.x >= 0 && c.y >= 0, ErrorKind::InvalidInput, "tableau corners must be nonnegative");
    width = std::max(width, c.x + 1);
  }
  Profile p(static_cast<std::size_t>(width), 0);
  for (const auto& c : corners)
    for (std::int64_t x = 0; x <= c.x; ++x) p[x] = std::max(p[x], c.y + 1);
  return from_profile(std::move(p));
}

Tableau Tableau::down_closure(const PointSet2& s) {
  std::vector<Point> corners = s.points();
  return from_corners(corners);
}

std::int64_t Tableau::column_height(std::int64_t x) const {
  if (x < 0 || x >= width()) return 0;
  return profile_[x];
}

std::int64_t Tableau::measure() const {
  std::int64_t m = 0;
  for (auto h : profile_) m += h;
  return m;
}

bool Tableau::contains(std::int64_t x, std::int64_t y) const { return y >= 0 && y < column_height(x); }

std::vector<Point> Tableau::corners() const {
  std::vector<Point> out;
  for (std::int64_t x = 0; x < width(); ++x)
    if (x + 1 == width() || profile_[x + 1] < profile_[x]) out.push_back({x, profile_[x] - 1});
  return out;
}

std::vector<Point> Tableau::cells() const {
  std::vector<Point> out;
  for (std::int64_t y = 0; y < height(); ++y)
    for (std::int64_t x = 0; x < width() && profile_[x] > y; ++x) out.push_back({x, y});
  return out;
}

PointSet2 Tableau::to_point_set(Window w) const {
  PointSet2 s(w);
  for (std::int64_t x = 0; x < width(); ++x) s.fill(Box{x, 0, x + 1, profile_[x]});
  return s;
}

bool is_subtableau(const Tableau& s, const Tableau& t) {
  if (s.width() > t.width()) return false;
  for (std::int64_t x = 0; x < s.width(); ++x)
    if (s.column_height(x) > t.column_height(x)) return false;
  return true;
}

std::int64_t difference_measure(const Tableau& t, const Tableau& s) {
  require(is_subtableau(s, t), ErrorKind::InvalidInput, "difference_measure needs s ⊆ t");
  return t.measure() - s.measure();
}

Tableau canonical(const Profile& padded) { return Tableau::from_profile(padded); }

// ---- TableauRegion ----

namespace {

// Canonical antichain from an arbitrary corner list.
std::vector<Point> normalize_corners(std::vector<Point> cs) {
  std::sort(cs.begin(), cs.end(), [](const Point& a, const Point& b) {
    if (a.x != b.x) return a.x > b.x;
    return a.y > b.y;
  });
  std::vector<Point> out;
  std::int64_t best_m = 0;
  for (const auto& c : cs) {
    if (c.y > best_m) {
      out.push_back(c);
      best_m = c.y;
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

TableauRegion::TableauRegion(const std::vector<Point>& corners) {
  for (const auto& c : corners)
    require(c.x >= 1 && c.y >= 1, ErrorKind::InvalidInput, "region corners must be positive");
  corners_ = normalize_corners(corners);
}

TableauRegion TableauRegion::from_tableau(const Tableau& t) {
  std::vector<Point> cs;
  for (const auto& c : t.corners()) cs.push_back({c.x + 1, c.y + 1});
  return TableauRegion(cs);
}

std::int64_t TableauRegion::measure() const {
  std::int64_t m = 0, prev = 0;
  for (const auto& c : corners_) {
    m += (c.x - prev) * c.y;
    prev = c.x;
  }
  return m;
}

std::int64_t TableauRegion::height_at(std::int64_t x) const {
  if (x < 0) return 0;
  for (const auto& c : corners_)
    if (x < c.x) return c.y;
  return 0;
}

std::vector<Box> TableauRegion::rectangles() const {
  std::vector<Box> out;
  std::int64_t x0 = 0;
  for (const auto& c : corners_) {
    out.push_back(Box{x0, 0, c.x, c.y});
    x0 = c.x;
  }
  return out;
}

Tableau TableauRegion::to_tableau() const {
  std::vector<Point> cs;
  for (const auto& c : corners_) cs.push_back({c.x - 1, c.y - 1});
  return Tableau::from_corners(cs);
}

PointSet2 TableauRegion::to_point_set(Window w) const {
  PointSet2 s(w);
  for (const auto& b : rectangles()) s.fill(b);
  return s;
}

namespace {

template <class Op>
TableauRegion combine(const TableauRegion& a, const TableauRegion& b, Op op) {
  std::vector<std::int64_t> xs{0};
  for (const auto& c : a.corners()) xs.push_back(c.x);
  for (const auto& c : b.corners()) xs.push_back(c.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<std::int64_t> hs;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) hs.push_back(op(a.height_at(xs[i]), b.height_at(xs[i])));
  hs.push_back(0);
  std::vector<Point> cs;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (hs[i] > 0) cs.push_back({xs[i + 1], hs[i]});
  return TableauRegion(cs);
}

}  // namespace

TableauRegion TableauRegion::intersect(const TableauRegion& o) const {
  return combine(*this, o, [](std::int64_t p, std::int64_t q) { return std::min(p, q); });
}

TableauRegion TableauRegion::unite(const TableauRegion& o) const {
  return combine(*this, o, [](std::int64_t p, std::int64_t q) { return std::max(p, q); });
}

DTableauRegion::DTableauRegion(TableauRegion region, std::int64_t d) : region_(std::move(region)), d_(d) {
  require(d >= 1, ErrorKind::InvalidInput, "divisor must be positive");
  for (const auto& c : region_.corners())
    require(c.x % d == 0 && c.y % d == 0, ErrorKind::InvalidInput,
            "corner (" + std::to_string(c.x) + "," + std::to_string(c.y) + ") not divisible by " + std::to_string(d));
}

// ---- additive characterization ----

namespace {

bool complement_is_upward_closed(const PointSet2& t, Window w) {
  PointSet2 outside = t.resized(w).complement();
  for (std::int64_t y = 0; y < w.H; ++y) {
    for (std::int64_t x = 0; x < w.W; ++x) {
      if (!outside.contains(x, y)) continue;
      if (x + 1 < w.W && !outside.contains(x + 1, y)) return false;
      if (y + 1 < w.H && !outside.contains(x, y + 1)) return false;
    }
  }
  return true;
}

}  // namespace

bool complement_additive_check(const Tableau& t, Window w) {
  require(t.width() < w.W && t.height() < w.H, ErrorKind::WindowTooSmall,
          "tableau needs a margin of one column and one row inside the window");
  return complement_is_upward_closed(t.to_point_set(w), w);
}

bool complement_additive_check(const PointSet2& t, Window w) {
  if (auto bb = t.bounding_box())
    require(bb->x1 < w.W && bb->y1 < w.H, ErrorKind::WindowTooSmall,
            "set needs a margin of one column and one row inside the window");
  return complement_is_upward_closed(t, w);
}

// ---- enumeration ----

Integer count_subtableaux(const Tableau& t) {
  if (t.empty()) return 1;
  const auto& p = t.profile();
  std::vector<Integer> cur(static_cast<std::size_t>(p[0] + 1), 1);
  for (std::size_t x = 1; x < p.size(); ++x) {
    // suffix sums of cur restricted to heights <= p[x]
    std::vector<Integer> nxt(static_cast<std::size_t>(p[x] + 1));
    Integer acc = 0;
    for (std::int64_t h = p[x - 1]; h >= 0; --h) {
      acc += cur[h];
      if (h <= p[x]) nxt[h] = acc;
    }
    cur = std::move(nxt);
  }
  Integer total = 0;
  for (const auto& c : cur) total += c;
  return total;
}

SubtableauEnumerator::SubtableauEnumerator(const Tableau& t, bool include_empty, std::int64_t guard)
    : top_(t.profile()), cur_(t.profile()), include_empty_(include_empty) {
  Integer n = count_subtableaux(t);
  if (!include_empty) n -= 1;
  require(n <= guard, ErrorKind::GuardExceeded,
          "subtableau count " + n.get_str() + " exceeds guard " + std::to_string(guard));
  total_ = n.get_si();
}

void SubtableauEnumerator::restart() {
  cur_ = top_;
  done_ = false;
  started_ = false;
  index_ = 0;
}

bool SubtableauEnumerator::advance() {
  std::size_t n = cur_.size();
  std::size_t i = n;
  while (i > 0 && cur_[i - 1] == 0) --i;
  if (i == 0) return false;
  --i;
  --cur_[i];
  for (std::size_t j = i + 1; j < n; ++j) cur_[j] = std::min(top_[j], cur_[j - 1]);
  return true;
}

std::optional<Tableau> SubtableauEnumerator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
  } else if (!advance()) {
    done_ = true;
    return std::nullopt;
  }
  bool is_empty = cur_.empty() || cur_[0] == 0;
  if (is_empty && !include_empty_) {
    done_ = true;
    return std::nullopt;
  }
  if (is_empty) done_ = true;
  ++index_;
  return Tableau::from_profile(cur_);
}

std::vector<Tableau> enumerate_subtableaux(const Tableau& t, bool include_empty, std::int64_t guard) {
  SubtableauEnumerator e(t, include_empty, guard);
  std::vector<Tableau> out;
  out.reserve(static_cast<std::size_t>(e.total()));
  while (auto s = e.next()) out.push_back(std::move(*s));
  return out;
}

// ---- staircase DP ----

std::optional<ExtremalSubtableau> extremal_subtableau(const Profile& hi_in, const Profile& lo_in,
                                                      const CellField& weight, bool maximize) {
  std::size_t W = std::max(hi_in.size(), lo_in.size());
  Profile hi(hi_in), lo(lo_in);
  hi.resize(W, 0);
  lo.resize(W, 0);
  for (std::size_t x = 0; x < W; ++x) {
    if (lo[x] > hi[x]) return std::nullopt;
    require(x == 0 || hi[x] <= hi[x - 1], ErrorKind::InvalidInput, "upper profile must be weakly decreasing");
  }
  if (W == 0) return ExtremalSubtableau{Rational(0), {}};

  auto better = [&](const Rational& a, const Rational& b) { return maximize ? a > b : a < b; };
  // f[x][h - lo[x]]: best total over columns 0..x with s_x = h; arg[x][...] = chosen s_{x-1}.
  std::vector<std::vector<Rational>> f(W);
  std::vector<std::vector<std::int64_t>> arg(W);
  std::vector<std::vector<bool>> ok(W);
  for (std::size_t x = 0; x < W; ++x) {
    std::int64_t n = hi[x] - lo[x] + 1;
    f[x].assign(n, Rational(0));
    arg[x].assign(n, -1);
    ok[x].assign(n, false);
    std::vector<Rational> prefix(static_cast<std::size_t>(hi[x] + 1), Rational(0));
    for (std::int64_t h = 1; h <= hi[x]; ++h) prefix[h] = prefix[h - 1] + weight[x][h - 1];
    if (x == 0) {
      for (std::int64_t h = lo[0]; h <= hi[0]; ++h) {
        f[0][h - lo[0]] = prefix[h];
        ok[0][h - lo[0]] = true;
      }
      continue;
    }
    // suffix best over s_{x-1} >= h
    std::int64_t plo = lo[x - 1], phi = hi[x - 1];
    std::vector<std::int64_t> best_at(static_cast<std::size_t>(phi + 2), -1);
    for (std::int64_t h = phi; h >= 0; --h) {
      best_at[h] = best_at[h + 1];
      if (h >= plo && ok[x - 1][h - plo]) {
        std::int64_t b = best_at[h];
        if (b < 0 || better(f[x - 1][h - plo], f[x - 1][b - plo])) best_at[h] = h;
      }
    }
    for (std::int64_t h = lo[x]; h <= hi[x]; ++h) {
      if (h > phi) continue;
      std::int64_t b = best_at[h];
      if (b < 0) continue;
      f[x][h - lo[x]] = prefix[h] + f[x - 1][b - plo];
      arg[x][h - lo[x]] = b;
      ok[x][h - lo[x]] = true;
    }
  }
  std::int64_t best = -1;
  for (std::int64_t h = hi[W - 1]; h >= lo[W - 1]; --h) {
    if (!ok[W - 1][h - lo[W - 1]]) continue;
    if (best < 0 || better(f[W - 1][h - lo[W - 1]], f[W - 1][best - lo[W - 1]])) best = h;
  }
  if (best < 0) return std::nullopt;
  ExtremalSubtableau out;
  out.value = f[W - 1][best - lo[W - 1]];
  out.profile.assign(W, 0);
  std::int64_t h = best;
  for (std::size_t x = W; x-- > 0;) {
    out.profile[x] = h;
    if (x > 0) h = arg[x][h - lo[x]];
  }
  return out;
}

}  // namespace plk
