#include "plk/sumset.hpp"

#include <algorithm>
#include <bit>

#include "plk/error.hpp"

namespace plk {

namespace {

// dst[0..n) = src shifted left (towards larger x) by s bits; src has m words.
void shift_into(std::uint64_t* dst, std::size_t n, const std::uint64_t* src, std::size_t m, std::int64_t s) {
  std::fill(dst, dst + n, 0ULL);
  std::size_t ws = static_cast<std::size_t>(s / 64);
  unsigned bs = static_cast<unsigned>(s % 64);
  for (std::size_t i = 0; i < m && i + ws < n; ++i) {
    std::uint64_t v = src[i];
    if (!v) continue;
    dst[i + ws] |= v << bs;
    if (bs && i + ws + 1 < n) dst[i + ws + 1] |= v >> (64 - bs);
  }
}

// t |= t << s, in place.
void or_shift_self(std::uint64_t* t, std::size_t n, std::int64_t s) {
  std::size_t ws = static_cast<std::size_t>(s / 64);
  unsigned bs = static_cast<unsigned>(s % 64);
  for (std::size_t i = n; i-- > ws;) {
    std::size_t j = i - ws;
    std::uint64_t v = t[j] << bs;
    if (bs && j > 0) v |= t[j - 1] >> (64 - bs);
    t[i] |= v;
  }
}

}  // namespace

std::vector<Run> row_runs(const PointSet2& s, std::int64_t y) {
  std::vector<Run> runs;
  const auto* r = s.row(y);
  const std::int64_t W = s.width();
  auto next = [&](std::int64_t x, bool set) {
    while (x < W) {
      std::uint64_t v = r[x / 64];
      if (!set) v = ~v;
      v >>= x % 64;
      if (v) return std::min(W, x + std::countr_zero(v));
      x = (x / 64 + 1) * 64;
    }
    return W;
  };
  for (std::int64_t x = next(0, true); x < W;) {
    std::int64_t end = next(x, false);
    runs.push_back({x, end - x});
    x = next(end, true);
  }
  return runs;
}

PointSet2 sumset(const PointSet2& a, const PointSet2& b, Window w) {
  PointSet2 out(w);
  if (a.empty() || b.empty()) return out;
  const std::size_t n = out.words_per_row();
  std::vector<std::uint64_t> tmp(n);
  std::vector<std::int64_t> a_rows;
  for (std::int64_t y = 0; y < a.height() && y < w.H; ++y)
    if (a.count_in(Box{0, y, a.width(), y + 1})) a_rows.push_back(y);

  for (std::int64_t yb = 0; yb < b.height() && yb < w.H; ++yb) {
    for (const Run& run : row_runs(b, yb)) {
      if (run.x0 >= w.W) continue;
      std::int64_t len = std::min(run.len, w.W - run.x0);
      for (std::int64_t ya : a_rows) {
        std::int64_t y = ya + yb;
        if (y >= w.H) break;
        shift_into(tmp.data(), n, a.row(ya), a.words_per_row(), run.x0);
        for (std::int64_t covered = 1; covered < len;) {
          std::int64_t step = std::min(covered, len - covered);
          or_shift_self(tmp.data(), n, step);
          covered += step;
        }
        auto* dst = out.row(y);
        for (std::size_t i = 0; i < n; ++i) dst[i] |= tmp[i];
      }
    }
  }
  out.mask_tail();
  return out;
}

PointSet2 iterated_sumset(const PointSet2& b, unsigned k, Window w) {
  PointSet2 out(w);
  out.insert(0, 0);
  if (k == 0) return out;
  PointSet2 base = b.resized(w);
  out = base;
  for (unsigned i = 1; i < k; ++i) out = sumset(out, base, w);
  return out;
}

PointSet2 truncated_sumset(const PointSet2& a, const PointSet2& b, const PointSet2& c, unsigned n, Window w) {
  require(n >= 1, ErrorKind::InvalidInput, "truncated_sumset needs n >= 1");
  PointSet2 nb = iterated_sumset(b, n, w);
  PointSet2 lhs = sumset(a, nb, w);
  PointSet2 rhs = sumset(c, iterated_sumset(b, n - 1, w), w);
  return lhs - rhs;
}

PointSet2 cyclic_sumset(const PointSet2& a, const PointSet2& b) {
  require(a.window() == b.window() && a.width() == a.height(), ErrorKind::InvalidInput,
          "cyclic sumset needs equal square windows");
  const std::int64_t m = a.width();
  PointSet2 out(a.window());
  auto pa = a.points();
  for (const auto& q : b.points())
    for (const auto& p : pa) out.insert((p.x + q.x) % m, (p.y + q.y) % m);
  return out;
}

PointSet2 cyclic_iterated_sumset(const PointSet2& b, unsigned k) {
  PointSet2 out(b.window());
  out.insert(0, 0);
  for (unsigned i = 0; i < k; ++i) out = cyclic_sumset(out, b);
  return out;
}

PointSet2 embed_1d(const PointSet1& a) {
  PointSet2 out(a.window_len(), 1);
  for (auto x : a.points()) out.insert(x, 0);
  return out;
}

PointSet1 project_1d(const PointSet2& a) {
  PointSet1 out(a.width());
  for (const auto& p : a.points()) {
    require(p.y == 0, ErrorKind::InvalidInput, "project_1d: point off row 0");
    out.insert(p.x);
  }
  return out;
}

}  // namespace plk
