#include "plk/density.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "plk/error.hpp"

namespace plk {

namespace {

__extension__ typedef __int128 i128;

// a/b < c/d for positive denominators.
bool frac_less(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return static_cast<i128>(a) * d < static_cast<i128>(c) * b;
}

}  // namespace

Rational schnirelmann_1d(const PointSet1& a) {
  std::int64_t best_c = 0, best_n = 1;
  bool first = true;
  std::int64_t c = 0;
  for (std::int64_t n = 0; n < a.window_len(); ++n) {
    if (a.contains(n)) ++c;
    if (first || frac_less(c, n + 1, best_c, best_n)) {
      best_c = c;
      best_n = n + 1;
      first = false;
    }
  }
  return rat(best_c, best_n);
}

Rational schnirelmann_2d(const PointSet2& a, std::int64_t N, std::int64_t M) {
  require(N >= 0 && M >= 0, ErrorKind::InvalidInput, "box bounds must be nonnegative");
  require(a.width() > N && a.height() > M, ErrorKind::WindowTooSmall, "window smaller than the (N,M) box");
  // prefix[n] holds |A ∩ [0,n] x [0,m]| for the current m
  std::vector<std::int64_t> col(static_cast<std::size_t>(N + 1), 0);
  std::int64_t best_c = 0, best_d = 1;
  bool first = true;
  for (std::int64_t m = 0; m <= M; ++m) {
    std::int64_t run = 0;
    for (std::int64_t n = 0; n <= N; ++n) {
      if (a.contains(n, m)) ++run;
      col[n] += run;
      std::int64_t d = (n + 1) * (m + 1);
      if (first || frac_less(col[n], d, best_c, best_d)) {
        best_c = col[n];
        best_d = d;
        first = false;
      }
    }
  }
  return rat(best_c, best_d);
}

// ---- Folner specs ----

void FolnerSpec::validate() const {
  require(L >= 1, ErrorKind::InvalidInput, "L must be positive");
  std::int64_t prev = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    require(!t.empty(), ErrorKind::InvalidInput, "empty Folner term " + std::to_string(i));
    if (kind == FolnerKind::Rect)
      require(t.size() == 1, ErrorKind::InvalidInput, "Rect term " + std::to_string(i) + " has several corners");
    else
      require(static_cast<std::int64_t>(t.size()) <= L, ErrorKind::InvalidInput,
              "Tab(L) term " + std::to_string(i) + " has more than L corners");
    for (const auto& c : t.corners())
      require(c.x >= r_min && c.y >= r_min, ErrorKind::InvalidInput,
              "term " + std::to_string(i) + " has a side below the floor " + std::to_string(r_min));
    require(t.measure() >= prev, ErrorKind::InvalidInput, "term measures must be nondecreasing");
    prev = t.measure();
  }
}

namespace {

std::vector<Point> round_corners(const std::vector<Point>& cs, std::int64_t d) {
  std::vector<Point> out;
  for (const auto& c : cs) {
    Point r{c.x - c.x % d, c.y - c.y % d};
    if (r.x > 0 && r.y > 0) out.push_back(r);
  }
  return out;
}

}  // namespace

FolnerSpec FolnerSpec::rect(const std::vector<Point>& sizes, std::int64_t r_min, std::int64_t round_to) {
  require(round_to >= 1, ErrorKind::InvalidInput, "rounding divisor must be positive");
  FolnerSpec f;
  f.kind = FolnerKind::Rect;
  f.r_min = r_min;
  for (const auto& s : sizes) f.terms.emplace_back(round_corners({s}, round_to));
  f.validate();
  return f;
}

FolnerSpec FolnerSpec::tab(std::int64_t L, const std::vector<std::vector<Point>>& terms, std::int64_t r_min,
                           std::int64_t round_to) {
  require(round_to >= 1, ErrorKind::InvalidInput, "rounding divisor must be positive");
  FolnerSpec f;
  f.kind = FolnerKind::TabL;
  f.L = L;
  f.r_min = r_min;
  for (const auto& t : terms) f.terms.emplace_back(round_corners(t, round_to));
  f.validate();
  return f;
}

// ---- reports ----

std::string DensityReport::to_csv() const {
  std::ostringstream os;
  os << "term_index,ratio_num,ratio_den\n";
  for (std::size_t i = 0; i < ratios.size(); ++i)
    os << i << ',' << ratios[i].get_num().get_str() << ',' << ratios[i].get_den().get_str() << '\n';
  return os.str();
}

std::string DensityReport::to_json() const {
  nlohmann::json j;
  j["ratios"] = nlohmann::json::array();
  for (const auto& r : ratios) j["ratios"].push_back(to_string(r));
  if (!ratios.empty()) {
    j["min"] = to_string(min());
    j["max"] = to_string(max());
    j["argmin"] = argmin;
    j["argmax"] = argmax;
  }
  return j.dump();
}

std::int64_t count_in_region(const PointSet2& a, const TableauRegion& f) {
  std::int64_t total = 0, prev = 0;
  for (const auto& c : f.corners()) {
    total += a.count_in(Box{prev, 0, c.x, c.y});
    prev = c.x;
  }
  return total;
}

DensityReport prefix_density(const PointSet2& a, const FolnerSpec& f) {
  f.validate();
  DensityReport rep;
  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    const auto& t = f.terms[i];
    require(t.width() <= a.width() && t.height() <= a.height(), ErrorKind::WindowTooSmall,
            "Folner term " + std::to_string(i) + " exceeds the window");
    const Rational r = rat(count_in_region(a, t), t.measure());
    rep.ratios.push_back(r);
    if (i == 0 || r < rep.ratios[rep.argmin]) rep.argmin = i;
    if (i == 0 || r > rep.ratios[rep.argmax]) rep.argmax = i;
    rep.running_min.push_back(rep.ratios[rep.argmin]);
    rep.running_max.push_back(rep.ratios[rep.argmax]);
  }
  return rep;
}

// ---- Tab(L) estimate ----

namespace {

struct Grid {
  std::vector<std::int64_t> xs, ys;
  // p[i][j] = |A ∩ [0,xs[i]) x [0,ys[j])|; index 0 of xs is the origin.
  std::vector<std::vector<std::int64_t>> p;
};

Grid coarse_counts(const PointSet2& a, std::int64_t R, std::int64_t stride) {
  Grid g;
  g.xs.push_back(0);
  for (std::int64_t c = (R / stride + 1) * stride; c <= a.width(); c += stride) g.xs.push_back(c);
  for (std::int64_t c = (R / stride + 1) * stride; c <= a.height(); c += stride) g.ys.push_back(c);
  g.p.assign(g.xs.size(), std::vector<std::int64_t>(g.ys.size(), 0));
  std::vector<std::int64_t> cum(g.xs.size(), 0);
  std::size_t j = 0;
  for (std::int64_t y = 0; y < a.height() && j < g.ys.size(); ++y) {
    std::int64_t run = 0;
    for (std::size_t i = 1; i < g.xs.size(); ++i) {
      run += count_bits(a.row(y), g.xs[i - 1], g.xs[i]);
      cum[i] += run;
    }
    if (y + 1 == g.ys[j]) {
      for (std::size_t i = 0; i < g.xs.size(); ++i) g.p[i][j] = cum[i];
      ++j;
    }
  }
  return g;
}

Integer binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

struct Search {
  const Grid& g;
  std::int64_t L;
  std::int64_t best_c = 0, best_m = 0;
  std::vector<Point> best_corners;
  std::vector<Point> cur;
  std::int64_t visited = 0;

  // Extend with corners whose x index > xi and y index < yj.
  void dfs(std::size_t xi, std::size_t yj, std::int64_t count, std::int64_t measure, std::int64_t depth) {
    if (depth == L) return;
    for (std::size_t i = xi + 1; i < g.xs.size(); ++i) {
      for (std::size_t j = 0; j < yj; ++j) {
        std::int64_t c = count + g.p[i][j] - g.p[xi][j];
        std::int64_t m = measure + (g.xs[i] - g.xs[xi]) * g.ys[j];
        ++visited;
        cur.push_back({g.xs[i], g.ys[j]});
        if (best_m == 0 || frac_less(c, m, best_c, best_m)) {
          best_c = c;
          best_m = m;
          best_corners = cur;
        }
        dfs(i, j, c, m, depth + 1);
        cur.pop_back();
      }
    }
  }
};

}  // namespace

TabEstimate tab_lower_estimate(const PointSet2& a, std::int64_t R, std::int64_t L, std::int64_t stride,
                               std::int64_t max_candidates) {
  require(L >= 1 && stride >= 1 && R >= 0, ErrorKind::InvalidInput, "need L >= 1, stride >= 1, R >= 0");
  require(R < a.width() && R < a.height(), ErrorKind::WindowTooSmall, "floor R must be below the window");
  Grid g = coarse_counts(a, R, stride);
  std::int64_t gx = static_cast<std::int64_t>(g.xs.size()) - 1, gy = static_cast<std::int64_t>(g.ys.size());
  require(gx > 0 && gy > 0, ErrorKind::WindowTooSmall, "no stride multiple above the floor fits the window");
  Integer total = 0;
  for (std::int64_t l = 1; l <= L; ++l) total += binom(gx, l) * binom(gy, l);
  require(total <= max_candidates, ErrorKind::GuardExceeded,
          "candidate count " + total.get_str() + " exceeds guard " + std::to_string(max_candidates));
  Search s{g, L, 0, 0, {}, {}, 0};
  s.dfs(0, g.ys.size(), 0, 0, 0);
  TabEstimate out;
  out.value = rat(s.best_c, s.best_m);
  out.witness = TableauRegion(s.best_corners);
  out.candidates = s.visited;
  return out;
}

// ---- periodic sets and products ----

bool PeriodicSet1::contains(std::int64_t x) const {
  require(x >= 0 && period >= 1, ErrorKind::InvalidInput, "bad periodic query");
  if (x < transient) return std::find(transient_points.begin(), transient_points.end(), x) != transient_points.end();
  return std::find(residues.begin(), residues.end(), x % period) != residues.end();
}

Rational PeriodicSet1::density() const {
  std::vector<std::int64_t> r(residues);
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return rat(static_cast<std::int64_t>(r.size()), period);
}

PointSet1 PeriodicSet1::truncate(std::int64_t len) const {
  PointSet1 s(len);
  for (std::int64_t x = 0; x < len; ++x)
    if (contains(x)) s.insert(x);
  return s;
}

ProductReport product_density_check(const PeriodicSet1& a, const PeriodicSet1& b, std::int64_t L, std::int64_t R,
                                    std::int64_t window, std::int64_t stride) {
  PointSet1 ta = a.truncate(window), tb = b.truncate(window);
  PointSet2 prod(window, window);
  auto bs = tb.points();
  for (auto x : ta.points())
    for (auto y : bs) prod.insert(x, y);
  TabEstimate est = tab_lower_estimate(prod, R, L, stride);
  ProductReport rep;
  rep.estimate = est.value;
  rep.expected = a.density() * b.density();
  rep.gap = abs(rep.estimate - rep.expected);
  rep.witness = est.witness;
  return rep;
}

}  // namespace plk
