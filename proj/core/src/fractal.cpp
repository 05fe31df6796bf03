#include "plk/fractal.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include "plk/error.hpp"

namespace plk {

FractalSpec FractalSpec::with_default_schedule(std::int64_t n, std::vector<Point> pattern, std::int64_t depth) {
  require(n >= 0 && depth >= 1, ErrorKind::InvalidInput, "degree must be >= 0 and depth >= 1");
  FractalSpec s;
  s.n = n;
  s.pattern = std::move(pattern);
  Integer u = 1;
  for (std::int64_t k = 1; k <= depth; ++k) {
    u *= (n + 2) * k;
    require(u.fits_slong_p() && u < Integer(1) << 31, ErrorKind::GuardExceeded, "default schedule overflows at depth " +
                                                                                     std::to_string(k));
    s.schedule.push_back(u.get_si());
  }
  s.validate();
  return s;
}

void FractalSpec::validate() const {
  require(n >= 0, ErrorKind::InvalidInput, "degree must be nonnegative");
  bool origin = false;
  for (const auto& p : pattern) {
    require(p.x >= 0 && p.y >= 0 && p.x <= n && p.y <= n, ErrorKind::InvalidInput, "pattern point outside {0..N}^2");
    origin = origin || (p.x == 0 && p.y == 0);
  }
  require(origin, ErrorKind::InvalidInput, "pattern must contain (0,0)");
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const Integer prev = k == 0 ? 0 : schedule[k - 1];
    require(schedule[k] >= 1 && schedule[k] > (n + 1) * prev, ErrorKind::InvalidInput,
            "schedule must satisfy u_k > (N+1) u_{k-1}");
    if (k >= 2)  // u_{k+1}/u_k >= u_k/u_{k-1}
      require(Integer(schedule[k]) * schedule[k - 2] >= Integer(schedule[k - 1]) * schedule[k - 1],
              ErrorKind::InvalidInput, "schedule ratios must be nondecreasing");
  }
}

std::int64_t FractalSpec::u(std::int64_t k) const {
  require(k >= 0 && k <= depth(), ErrorKind::InvalidInput, "scale index " + std::to_string(k) + " out of range");
  return k == 0 ? 0 : schedule[k - 1];
}

FractalLayers layers(const FractalSpec& spec, std::int64_t depth, Window w) {
  spec.validate();
  require(depth >= 1 && depth <= spec.depth(), ErrorKind::InvalidInput, "depth exceeds the schedule");
  require(w.W >= spec.side(depth) && w.H >= spec.side(depth), ErrorKind::WindowTooSmall,
          "window must contain [0,(N+1)u_K)^2");
  FractalLayers out;
  for (std::int64_t k = 1; k <= depth; ++k) {
    const std::int64_t u = spec.u(k);
    PointSet2 p(w);
    for (const auto& c : spec.pattern) p.fill(Box{u * c.x, u * c.y, u * (c.x + 1), u * (c.y + 1)});
    PointSet2 a(p);
    const std::int64_t cut = spec.side(k - 1);
    a.clear(Box{0, 0, cut, cut});
    out.p.push_back(std::move(p));
    out.a.push_back(std::move(a));
  }
  return out;
}

PointSet2 generate(const FractalSpec& spec, std::int64_t depth, Window w) {
  auto l = layers(spec, depth, w);
  PointSet2 out(w);
  for (const auto& a : l.a) out |= a;
  return out;
}

PointSet2 generate(const FractalSpec& spec, std::int64_t depth) {
  return generate(spec, depth, Window(spec.side(depth), spec.side(depth)));
}

Rational rect_density_formula(const std::vector<Point>& pattern, std::int64_t n) {
  Rational best = 1;
  for (std::int64_t m = 0; m <= n; ++m)
    for (std::int64_t k = 0; k <= n; ++k) {
      std::int64_t hit = 0;
      for (const auto& p : pattern) hit += p.x <= m && p.y <= k;
      best = std::min(best, rat(hit, (m + 1) * (k + 1)));
    }
  return best;
}

Rational tab_density_formula(const std::vector<Point>& pattern, std::int64_t n, std::int64_t m) {
  if (m < 0) m = n;
  const Tableau box = Tableau::from_profile(Profile(n + 1, m + 1));
  Rational best = 1;
  for (const auto& t : enumerate_subtableaux(box, false)) {
    std::int64_t hit = 0;
    for (const auto& p : pattern) hit += t.contains(p.x, p.y);
    best = std::min(best, rat(hit, t.measure()));
  }
  return best;
}

namespace {

Rational ratio(const PointSet2& x, const TableauRegion& f) {
  std::int64_t hit = 0, prev = 0;
  for (const auto& c : f.corners()) {
    hit += x.count_in(Box{prev, 0, c.x, c.y});
    prev = c.x;
  }
  return rat(hit, f.measure());
}

// Corners with one coordinate replaced; corners pushed to zero are dropped.
std::optional<TableauRegion> moved(const TableauRegion& f, char axis, std::size_t j, std::int64_t v) {
  std::vector<Point> cs = f.corners();
  (axis == 'x' ? cs[j].x : cs[j].y) = v;
  std::vector<Point> kept;
  for (const auto& c : cs)
    if (c.x > 0 && c.y > 0) kept.push_back(c);
  if (kept.empty()) return std::nullopt;
  return TableauRegion(kept);
}

// One snapping move on coordinate j of the given axis. The ratio is monotone in the
// coordinate between consecutive multiples of u, so an endpoint is never worse.
void snap_step(const PointSet2& x, TableauRegion& f, char axis, std::size_t j, std::int64_t u, PerturbResult& out) {
  const auto& cs = f.corners();
  const std::int64_t L = static_cast<std::int64_t>(cs.size());
  const std::int64_t inf = std::numeric_limits<std::int64_t>::max();
  const auto jj = static_cast<std::int64_t>(j);
  std::int64_t v0, below, above;
  if (axis == 'y') {
    v0 = cs[j].y;
    below = jj + 1 < L ? cs[j + 1].y : 0;
    above = jj > 0 ? cs[j - 1].y : inf;
  } else {
    v0 = cs[j].x;
    below = jj > 0 ? cs[j - 1].x : 0;
    above = jj + 1 < L ? cs[j + 1].x : inf;
  }
  const std::int64_t q = v0 / u;
  const std::int64_t lo = std::max(below, q * u), hi = std::min(above, (q + 1) * u);
  const Rational cur = ratio(x, f);
  std::optional<TableauRegion> best;
  Rational best_ratio;
  std::int64_t best_v = 0;
  for (std::int64_t v : {lo, hi}) {
    auto g = moved(f, axis, j, v);
    if (!g) continue;
    Rational r = ratio(x, *g);
    const bool snapped = v % u == 0;
    if (!best || r < best_ratio || (r == best_ratio && snapped && best_v % u != 0)) {
      best = std::move(g);
      best_ratio = r;
      best_v = v;
    }
  }
  require(best.has_value() && best_ratio <= cur, ErrorKind::ContractFailure,
          "snapping raised the density ratio; the cross sections are not constant on this block");
  out.steps.push_back(PerturbStep{axis, j, v0, best_v, cur, best_ratio});
  f = *best;
}

std::optional<std::pair<char, std::size_t>> next_unsnapped(const TableauRegion& f, std::int64_t u, bool x_axis) {
  const auto& cs = f.corners();
  for (std::size_t j = 0; j < cs.size(); ++j)
    if (cs[j].y % u != 0) return std::make_pair('y', j);
  if (x_axis)
    for (std::size_t j = 0; j < cs.size(); ++j)
      if (cs[j].x % u != 0) return std::make_pair('x', j);
  return std::nullopt;
}

PerturbResult snap_all(const PointSet2& x, TableauRegion f, std::int64_t u, bool x_axis) {
  PerturbResult out;
  out.ratio_before = ratio(x, f);
  while (auto m = next_unsnapped(f, u, x_axis)) snap_step(x, f, m->first, m->second, u, out);
  out.region = f;
  out.ratio_after = ratio(x, f);
  require(out.ratio_after <= out.ratio_before, ErrorKind::ContractFailure, "perturbation raised the density ratio");
  return out;
}

}  // namespace

PerturbResult perturb_rectangle(const PointSet2& x, std::int64_t W, std::int64_t H, const FractalSpec& spec,
                                std::int64_t k, bool both_sides, PerturbSet set) {
  require(k >= 1 && k <= spec.depth(), ErrorKind::InvalidInput, "scale index out of range");
  require(W >= 1 && H >= 1 && W <= x.width() && H <= x.height(), ErrorKind::InvalidInput,
          "rectangle must be nonempty and inside the window");
  const std::int64_t u = spec.u(k), top = spec.side(k);
  require(H >= u, ErrorKind::HypothesisViolated, "H must be at least u_k");
  if (both_sides) require(W >= u, ErrorKind::HypothesisViolated, "W must be at least u_k");
  if (set == PerturbSet::Fractal) {
    require(k < spec.depth(), ErrorKind::HypothesisViolated, "the fractal mode needs u_{k+1} in the schedule");
    const std::int64_t next = spec.u(k + 1);
    require(H <= next && W <= next, ErrorKind::HypothesisViolated, "W and H must not exceed u_{k+1}");
  } else {
    require(H <= top && W <= top, ErrorKind::HypothesisViolated, "W and H must not exceed (N+1)u_k on P_k");
  }
  TableauRegion f(std::vector<Point>{{W, H}});
  PerturbResult pre;
  pre.ratio_before = ratio(x, f);
  // Beyond the core [0,(N+1)u_k)^2 the fractal is full, so cutting back to the core only lowers the ratio.
  std::vector<PerturbStep> cut;
  auto clamp = [&](char axis, std::int64_t v) {
    if (v <= top) return;
    TableauRegion g(std::vector<Point>{{axis == 'x' ? top : f.corners()[0].x, axis == 'y' ? top : f.corners()[0].y}});
    cut.push_back(PerturbStep{axis, 0, v, top, ratio(x, f), ratio(x, g)});
    f = g;
  };
  clamp('y', H);
  if (both_sides) clamp('x', W);
  PerturbResult out = snap_all(x, f, u, both_sides);
  out.steps.insert(out.steps.begin(), cut.begin(), cut.end());
  out.ratio_before = pre.ratio_before;
  require(out.ratio_after <= out.ratio_before, ErrorKind::ContractFailure, "perturbation raised the density ratio");
  return out;
}

PerturbResult perturb_tableau_L(const PointSet2& p_k, const TableauRegion& f, const FractalSpec& spec,
                                std::int64_t k) {
  require(k >= 1 && k <= spec.depth(), ErrorKind::InvalidInput, "scale index out of range");
  require(!f.empty(), ErrorKind::InvalidInput, "region must be nonempty");
  const std::int64_t u = spec.u(k), top = spec.side(k);
  require(f.width() <= top && f.height() <= top, ErrorKind::HypothesisViolated,
          "region must lie inside [0,(N+1)u_k)^2");
  require(f.width() <= p_k.width() && f.height() <= p_k.height(), ErrorKind::InvalidInput,
          "region must lie inside the window");
  return snap_all(p_k, f, u, true);
}

}  // namespace plk
