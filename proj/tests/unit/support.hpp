#pragma once

// Naive oracles and random generators shared by the unit tests. Everything here is
// written against std containers so it shares no code with the bitset kernels.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "plk/point_set.hpp"
#include "plk/rational.hpp"
#include "plk/tableau.hpp"

namespace plk::test {

using Cell = std::pair<std::int64_t, std::int64_t>;
using CellSet = std::set<Cell>;
using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline CellSet cells_of(const PointSet2& s) {
  CellSet out;
  for (std::int64_t y = 0; y < s.height(); ++y)
    for (std::int64_t x = 0; x < s.width(); ++x)
      if (s.contains(x, y)) out.insert({x, y});
  return out;
}

inline CellSet naive_sum(const CellSet& a, const CellSet& b, const Window& w) {
  CellSet out;
  for (const auto& [ax, ay] : a)
    for (const auto& [bx, by] : b)
      if (w.contains(ax + bx, ay + by)) out.insert({ax + bx, ay + by});
  return out;
}

inline CellSet naive_iterate(const CellSet& b, unsigned k, const Window& w) {
  CellSet out{{0, 0}};
  for (unsigned i = 0; i < k; ++i) out = naive_sum(out, b, w);
  return out;
}

// `count` distinct points of [0,side)^2 in window w (count is capped by side^2).
inline PointSet2 random_points(Rng& rng, Window w, std::int64_t side, std::int64_t count) {
  PointSet2 s(w);
  count = std::min(count, side * side);
  while (s.count() < count) s.insert(uniform(rng, 0, side - 1), uniform(rng, 0, side - 1));
  return s;
}

inline PointSet2 bernoulli_set(Rng& rng, Window w, double p) {
  std::bernoulli_distribution coin(p);
  PointSet2 s(w);
  for (std::int64_t y = 0; y < w.H; ++y)
    for (std::int64_t x = 0; x < w.W; ++x)
      if (coin(rng)) s.insert(x, y);
  return s;
}

// Random weakly decreasing profile of the given width with heights in [1, max_h].
inline Profile random_profile(Rng& rng, std::int64_t width, std::int64_t max_h) {
  Profile p;
  for (std::int64_t i = 0; i < width; ++i) p.push_back(uniform(rng, 1, max_h));
  std::sort(p.rbegin(), p.rend());
  return p;
}

// All partitions of n as weakly decreasing profiles.
inline void partitions(std::int64_t n, std::int64_t max_part, Profile& cur, std::vector<Profile>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (std::int64_t p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

inline std::vector<Profile> partitions(std::int64_t n) {
  std::vector<Profile> out;
  Profile cur;
  partitions(n, n, cur, out);
  return out;
}

// Every weakly decreasing profile dominated by hi, padded to hi's width, by brute force.
inline std::vector<Profile> naive_subprofiles(const Profile& hi) {
  std::vector<Profile> out{Profile(hi.size(), 0)};
  for (std::size_t x = 0; x < hi.size(); ++x) {
    std::vector<Profile> next;
    for (const auto& p : out)
      for (std::int64_t h = 0; h <= hi[x]; ++h)
        if (x == 0 || h <= p[x - 1]) {
          Profile q = p;
          q[x] = h;
          next.push_back(q);
        }
    out = std::move(next);
  }
  return out;
}

inline Rational random_rational(Rng& rng, std::int64_t den_max = 12) {
  const std::int64_t den = uniform(rng, 1, den_max);
  return rat(uniform(rng, 0, den), den);
}

}  // namespace plk::test
