#include "plk/tiling.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "plk/error.hpp"

namespace plk {

namespace {

constexpr std::int64_t kNoCap = std::numeric_limits<std::int64_t>::max();

bool boxes_overlap(const Box& a, const Box& b) {
  return a.x0 < b.x1 && b.x0 < a.x1 && a.y0 < b.y1 && b.y0 < a.y1;
}

bool region_inside(const TableauRegion& inner, const TableauRegion& outer) {
  for (const auto& c : inner.corners())
    if (outer.height_at(c.x - 1) < c.y) return false;
  return true;
}

// Disjoint boxes covering (a + N^2) ∩ F ∩ {y < cap}.
std::vector<Box> quadrant_parts(const TableauRegion& f, const Point& a, std::int64_t cap) {
  std::vector<Box> out;
  std::int64_t prev = 0;
  for (const auto& c : f.corners()) {
    const std::int64_t x0 = std::max(prev, a.x);
    const std::int64_t y1 = std::min(c.y, cap);
    if (x0 < c.x && a.y < y1) out.push_back(Box{x0, a.y, c.x, y1});
    prev = c.x;
  }
  return out;
}

std::vector<Box> quadrant_rects(const TableauRegion& f, const Point& a, std::int64_t cap) {
  std::vector<Box> out;
  for (const auto& c : f.corners()) {
    const std::int64_t y1 = std::min(c.y, cap);
    if (a.x < c.x && a.y < y1) out.push_back(Box{a.x, a.y, c.x, y1});
  }
  return out;
}

std::int64_t total_area(const std::vector<Box>& boxes) {
  std::int64_t s = 0;
  for (const auto& b : boxes) s += b.area();
  return s;
}

}  // namespace

std::int64_t overlap(const TableauRegion& region, const Box& box) {
  if (box.empty()) return 0;
  std::int64_t s = 0, prev = 0;
  for (const auto& c : region.corners()) {
    const std::int64_t w = std::min(c.x, box.x1) - std::max(prev, box.x0);
    const std::int64_t h = std::min(c.y, box.y1) - box.y0;
    if (w > 0 && h > 0) s += w * h;
    prev = c.x;
  }
  return s;
}

TableauRegion lower_complement(const TableauRegion& f, const std::vector<Point>& pts) {
  std::vector<std::int64_t> xs{0};
  for (const auto& c : f.corners()) xs.push_back(c.x);
  for (const auto& p : pts) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Point> sorted(pts);
  std::sort(sorted.begin(), sorted.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
  std::vector<Point> cs;
  std::size_t k = 0;
  std::int64_t low = kNoCap;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    while (k < sorted.size() && sorted[k].x <= xs[i]) low = std::min(low, sorted[k++].y);
    const std::int64_t h = std::min(f.height_at(xs[i]), low);
    if (h > 0) cs.push_back({xs[i + 1], h});
  }
  return TableauRegion(cs);
}

// ---- TilingContext ----

TilingContext TilingContext::build(const TableauRegion& f, std::int64_t q) {
  require(q >= 2, ErrorKind::InvalidInput, "Q must be at least 2");
  require(!f.empty(), ErrorKind::InvalidInput, "tiling needs a nonempty region");
  DTableauRegion(f, q * q);  // throws unless every corner is divisible by Q^2
  TilingContext ctx;
  ctx.f_ = f;
  ctx.q_ = q;
  const std::int64_t ell = ctx.ell();

  for (std::int64_t m = 1; m <= ell; ++m)
    for (std::int64_t j = 0; j <= q; ++j) ctx.ys_.push_back(j * ctx.H(m) / q);
  std::sort(ctx.ys_.begin(), ctx.ys_.end());
  ctx.ys_.erase(std::unique(ctx.ys_.begin(), ctx.ys_.end()), ctx.ys_.end());

  Profile heights;
  for (std::int64_t m = 1; m <= ell; ++m) {
    const std::int64_t dx = (ctx.W(m) - ctx.W(m - 1)) / q;
    const std::int64_t dy = ctx.H(m) / q;
    for (std::int64_t i = 0; i < q; ++i)
      for (std::int64_t j = 0; j < q; ++j)
        ctx.coarse_.push_back(Box{ctx.W(m - 1) + i * dx, j * dy, ctx.W(m - 1) + (i + 1) * dx, (j + 1) * dy});
    const auto top = std::find(ctx.ys_.begin(), ctx.ys_.end(), ctx.H(m)) - ctx.ys_.begin();
    for (std::int64_t i = 0; i < q; ++i) {
      const std::int64_t t1 = (m - 1) * q + i;
      ctx.at_.emplace_back();
      heights.push_back(top);
      for (std::int64_t r = 0; r < top; ++r) {
        TilingCell cell;
        cell.box = Box{ctx.W(m - 1) + i * dx, ctx.ys_[r], ctx.W(m - 1) + (i + 1) * dx, ctx.ys_[r + 1]};
        cell.m = m - 1;
        cell.i = i;
        cell.j = ctx.ys_[r] / dy;
        cell.t1 = t1;
        cell.t2 = r;
        ctx.at_.back().push_back(static_cast<std::int64_t>(ctx.cells_.size()));
        ctx.cells_.push_back(cell);
      }
    }
  }
  ctx.index_ = Tableau::from_profile(heights);

  // Build-time invariants: partition, cell sides, psi adjacency.
  std::int64_t sum = 0;
  for (const auto& c : ctx.cells_) {
    const auto& b = c.box;
    require((b.x1 - b.x0) % q == 0 && (b.y1 - b.y0) % q == 0 && b.area() >= q * q, ErrorKind::ContractFailure,
            "refined cell sides must be positive multiples of Q");
    require(overlap(f, b) == b.area(), ErrorKind::ContractFailure, "refined cell leaves F");
    require(c.j * (ctx.H(c.m + 1) / q) <= b.y0 && b.y1 <= (c.j + 1) * (ctx.H(c.m + 1) / q), ErrorKind::ContractFailure,
            "refined cell crosses a coarse cell");
    sum += b.area();
  }
  require(sum == f.measure(), ErrorKind::ContractFailure, "refined cells do not sum to |F|");
  if (ctx.cells_.size() <= 4096)
    for (std::size_t a = 0; a < ctx.cells_.size(); ++a)
      for (std::size_t b = a + 1; b < ctx.cells_.size(); ++b)
        require(!boxes_overlap(ctx.cells_[a].box, ctx.cells_[b].box), ErrorKind::ContractFailure,
                "refined cells overlap");
  for (const auto& c : ctx.cells_) {
    if (ctx.index_.contains(c.t1 + 1, c.t2)) {
      const Box& r = ctx.cells_[ctx.cell_at(c.t1 + 1, c.t2)].box;
      require(r.x0 == c.box.x1 && r.y0 == c.box.y0 && r.y1 == c.box.y1, ErrorKind::ContractFailure,
              "right neighbour does not share an edge");
    }
    if (ctx.index_.contains(c.t1, c.t2 + 1)) {
      const Box& u = ctx.cells_[ctx.cell_at(c.t1, c.t2 + 1)].box;
      require(u.y0 == c.box.y1 && u.x0 == c.box.x0 && u.x1 == c.box.x1, ErrorKind::ContractFailure,
              "upper neighbour does not share an edge");
    }
  }
  return ctx;
}

std::int64_t TilingContext::cell_at(std::int64_t t1, std::int64_t t2) const {
  require(index_.contains(t1, t2), ErrorKind::InvalidInput,
          "(" + std::to_string(t1) + "," + std::to_string(t2) + ") outside the index tableau");
  return at_[t1][t2];
}

std::string TilingContext::to_json() const {
  nlohmann::json j;
  j["q"] = q_;
  j["corners"] = nlohmann::json::array();
  for (const auto& c : f_.corners()) j["corners"].push_back({c.x, c.y});
  j["y_ordinates"] = ys_;
  j["index_profile"] = index_.profile();
  j["cells"] = nlohmann::json::array();
  for (const auto& c : cells_)
    j["cells"].push_back({{"box", {c.box.x0, c.box.y0, c.box.x1, c.box.y1}},
                          {"m", c.m + 1},
                          {"i", c.i},
                          {"j", c.j},
                          {"t", {c.t1, c.t2}}});
  return j.dump();
}

// ---- hull ----

HullResult measurable_hull(const TilingContext& ctx, const TableauRegion& f_prime) {
  const TableauRegion& f = ctx.region();
  require(region_inside(f_prime, f), ErrorKind::InvalidInput, "F' must lie inside F");
  const std::int64_t q = ctx.q();
  HullResult h;
  h.s_measure = f.measure() - f_prime.measure();

  const Tableau& index = ctx.index_tableau();
  h.t_prime.assign(index.width(), 0);
  for (std::int64_t t1 = 0; t1 < index.width(); ++t1) {
    for (std::int64_t t2 = 0; t2 < index.column_height(t1); ++t2) {
      const auto id = ctx.cell_at(t1, t2);
      const Box& b = ctx.cells()[id].box;
      if (f_prime.height_at(b.x1 - 1) >= b.y1) {
        h.t_prime[t1] = t2 + 1;
      } else {
        h.cells.push_back(id);
        h.hull_measure += b.area();
        h.excess += overlap(f_prime, b);
      }
    }
  }

  h.strip_bounds = true;
  for (std::int64_t m = 1; m <= ctx.ell(); ++m) {
    std::int64_t excess = 0, boundary = 0;
    for (std::int64_t k = (m - 1) * q * q; k < m * q * q; ++k) {
      const Box& b = ctx.coarse_cells()[k];
      const std::int64_t inside = overlap(f_prime, b);
      if (inside < b.area()) {
        excess += inside;
        if (inside > 0) ++boundary;
      }
    }
    h.strip_excess.push_back(excess);
    h.max_boundary_cells = std::max(h.max_boundary_cells, boundary);
    if (excess * q > 2 * ctx.strip(m).area()) h.strip_bounds = false;
  }
  h.bound = h.excess * q <= 2 * f.measure();
  require(h.strip_bounds, ErrorKind::ContractFailure, "coarse hull exceeds (2/Q)|U_m| in some strip");
  require(h.bound, ErrorKind::ContractFailure, "hull excess exceeds (2/Q)|F|");
  return h;
}

// ---- trim_points ----

TrimPointsResult trim_points(const TilingContext& ctx, const PointSet2& a, const TrimOptions& opt) {
  const TableauRegion& f = ctx.region();
  for (const auto& p : a.points())
    require(f.contains(p.x, p.y), ErrorKind::InvalidInput, "point set must lie inside F");
  const Tableau& shape = ctx.index_tableau();
  TrimPointsResult out;
  WeightedTableau& wt = out.weighted;
  wt.shape = shape;
  wt.mu.resize(shape.width());
  wt.rho.resize(shape.width());
  for (std::int64_t t1 = 0; t1 < shape.width(); ++t1)
    for (std::int64_t t2 = 0; t2 < shape.column_height(t1); ++t2) {
      const Box& b = ctx.cells()[ctx.cell_at(t1, t2)].box;
      wt.mu[t1].push_back(rat(b.area()));
      wt.rho[t1].push_back(rat(a.count_in(b), b.area()));
    }
  out.alpha = max_alpha(wt).alpha;
  out.trimmed = trim(wt, out.alpha, opt);

  out.a_prime = PointSet2(a.window());
  out.kept.resize(shape.width());
  CellField kept_field(shape.width());
  for (std::int64_t t1 = 0; t1 < shape.width(); ++t1)
    for (std::int64_t t2 = 0; t2 < shape.column_height(t1); ++t2) {
      const Box& b = ctx.cells()[ctx.cell_at(t1, t2)].box;
      const std::int64_t c = ceil(out.trimmed.rho_prime[t1][t2] * b.area()).get_si();
      out.kept[t1].push_back(c);
      kept_field[t1].push_back(rat(c));
      std::int64_t taken = 0;
      for (std::int64_t y = b.y0; y < b.y1 && taken < c; ++y)
        for (std::int64_t x = b.x0; x < b.x1 && taken < c; ++x)
          if (a.contains(x, y)) {
            out.a_prime.insert(x, y);
            ++taken;
          }
      require(taken == c, ErrorKind::ContractFailure, "rounded count exceeds the points of a cell");
    }

  // (a): for every T' ⊊ T, Σ_{T\T'} (c - (alpha + 1/Q^2) mu) <= 0, i.e. the minimum over all T'
  // of Σ_{T'} w is the full sum.
  const Rational slack = out.alpha + rat(1, ctx.q() * ctx.q());
  CellField w(shape.width());
  Rational total = 0;
  for (std::int64_t t1 = 0; t1 < shape.width(); ++t1)
    for (std::int64_t t2 = 0; t2 < shape.column_height(t1); ++t2) {
      w[t1].push_back(kept_field[t1][t2] - slack * wt.mu[t1][t2]);
      total += w[t1].back();
    }
  if (shape.measure() <= opt.verify_cells) {
    out.cond_a = true;
    for (const auto& s : enumerate_subtableaux(shape, true)) {
      if (s == shape) continue;
      Rational rest = total;
      for (std::int64_t x = 0; x < s.width(); ++x)
        for (std::int64_t y = 0; y < s.column_height(x); ++y) rest -= w[x][y];
      if (rest > 0) out.cond_a = false;
    }
  } else {
    auto best = extremal_subtableau(shape.profile(), Profile{}, w, false);
    out.cond_a = best && best->value >= total;
  }
  out.cond_b = rat(out.a_prime.count()) >= out.alpha * f.measure();
  require(out.cond_a, ErrorKind::ContractFailure, "trimmed points exceed alpha + 1/Q^2 on an upper region");
  require(out.cond_b, ErrorKind::ContractFailure, "trimmed points fall below alpha |F|");
  return out;
}

// ---- staircase ----

StaircaseResult staircase(const TilingContext& ctx, const PointSet2& a_prime) {
  const TableauRegion& f = ctx.region();
  const auto pts = a_prime.points();
  require(!pts.empty(), ErrorKind::InvalidInput, "staircase needs a nonempty point set");
  for (const auto& p : pts) require(f.contains(p.x, p.y), ErrorKind::InvalidInput, "point set must lie inside F");

  StaircaseResult r;
  r.s_complement = lower_complement(f, pts);
  r.s_measure = f.measure() - r.s_complement.measure();
  r.hull = measurable_hull(ctx, r.s_complement);

  const Tableau& index = ctx.index_tableau();
  const Profile& tp = r.hull.t_prime;
  auto in_hull = [&](std::int64_t t1, std::int64_t t2) {
    return t1 >= 0 && t2 >= 0 && index.contains(t1, t2) && t2 >= tp[t1];
  };
  // Corner cells keyed by row; the leftmost one per row.
  std::map<std::int64_t, std::int64_t> corner_by_row;
  for (std::int64_t t1 = 0; t1 < index.width(); ++t1)
    for (std::int64_t t2 = 0; t2 < index.column_height(t1); ++t2)
      if (in_hull(t1, t2) && !in_hull(t1 - 1, t2) && !in_hull(t1, t2 - 1) && !corner_by_row.count(t2))
        corner_by_row[t2] = t1;

  std::int64_t row_limit = index.height() - 1;
  std::int64_t cap = kNoCap;
  for (;;) {
    auto it = corner_by_row.upper_bound(row_limit);
    if (it == corner_by_row.begin()) break;
    --it;
    const std::int64_t t2 = it->first;
    const std::int64_t id = ctx.cell_at(it->second, t2);
    const Box& b = ctx.cells()[id].box;
    std::optional<Point> pick;
    for (std::int64_t y = b.y0; y < b.y1 && !pick; ++y)
      for (std::int64_t x = b.x0; x < b.x1 && !pick; ++x)
        if (a_prime.contains(x, y)) pick = Point{x, y};
    require(pick.has_value(), ErrorKind::ContractFailure, "corner cell holds no point of A'");
    r.points.push_back(*pick);
    r.corner_cells.push_back(id);
    r.g_parts.push_back(quadrant_parts(f, *pick, cap));
    r.g_rects.push_back(quadrant_rects(f, *pick, cap));
    cap = pick->y;
    row_limit = t2 - 2;
  }

  r.gaps = true;
  for (std::size_t j = 1; j < r.points.size(); ++j)
    if (r.points[j].y > r.points[j - 1].y - ctx.q()) r.gaps = false;
  std::int64_t leak = 0;
  for (const auto& parts : r.g_parts) {
    r.g_measure += total_area(parts);
    for (const auto& b : parts) leak += overlap(r.s_complement, b);
  }
  r.inside = leak == 0;
  std::int64_t prev_y = kNoCap;
  bool descending = true;
  for (const auto& p : r.points) {
    if (p.y >= prev_y) descending = false;
    prev_y = p.y;
  }
  r.disjoint = descending && r.g_measure == f.measure() - lower_complement(f, r.points).measure();
  const std::int64_t gap = 3 * f.measure() - ctx.q() * (r.s_measure - r.g_measure);
  r.bound = gap >= 0;
  r.tight = r.bound && gap <= ctx.q();
  require(r.gaps, ErrorKind::ContractFailure, "staircase points are closer than Q vertically");
  require(r.inside, ErrorKind::ContractFailure, "G leaves S");
  require(r.disjoint, ErrorKind::ContractFailure, "G_j are not a disjoint decomposition of G");
  require(r.bound, ErrorKind::ContractFailure, "|S \\ G| exceeds (3/Q)|F|");
  return r;
}

// ---- bad regions ----

std::int64_t union_area(const std::vector<Box>& boxes) {
  std::vector<std::int64_t> xs;
  for (const auto& b : boxes)
    if (!b.empty()) {
      xs.push_back(b.x0);
      xs.push_back(b.x1);
    }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::int64_t area = 0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    std::vector<std::pair<std::int64_t, std::int64_t>> spans;
    for (const auto& b : boxes)
      if (!b.empty() && b.x0 <= xs[i] && xs[i + 1] <= b.x1) spans.emplace_back(b.y0, b.y1);
    std::sort(spans.begin(), spans.end());
    std::int64_t covered = 0, lo = 0, hi = -1;
    for (const auto& [s, e] : spans) {
      if (hi < s) {
        if (hi > lo) covered += hi - lo;
        lo = s;
        hi = e;
      } else {
        hi = std::max(hi, e);
      }
    }
    if (hi > lo) covered += hi - lo;
    area += covered * (xs[i + 1] - xs[i]);
  }
  return area;
}

BadRegion bad_regions(const TilingContext& ctx) {
  const std::int64_t q = ctx.q();
  BadRegion bad;
  for (std::int64_t m = 1; m <= ctx.ell(); ++m) {
    bad.rows.push_back(Box{0, (q - 1) * ctx.H(m) / q, ctx.W(m), ctx.H(m)});
    bad.cols.push_back(Box{ctx.W(m - 1) + (q - 1) * (ctx.W(m) - ctx.W(m - 1)) / q, 0, ctx.W(m), ctx.H(m)});
  }
  bad.rows_union = union_area(bad.rows);
  std::vector<Box> all(bad.rows);
  all.insert(all.end(), bad.cols.begin(), bad.cols.end());
  bad.total_union = union_area(all);
  bad.rows_bound = bad.rows_union * q <= ctx.ell() * ctx.measure();
  bad.cols_exact = true;
  for (std::int64_t m = 1; m <= ctx.ell(); ++m)
    if (bad.cols[m - 1].area() * q != ctx.strip(m).area()) bad.cols_exact = false;
  require(bad.rows_bound, ErrorKind::ContractFailure, "bad rows exceed (ell/Q)|F|");
  require(bad.cols_exact, ErrorKind::ContractFailure, "bad column is not |U_m|/Q");
  return bad;
}

RemovalResult remove_bad(const TilingContext& ctx, const PointSet2& a_prime, const BadRegion& bad) {
  RemovalResult r;
  r.a0 = a_prime;
  for (const auto& b : bad.rows) r.a0.clear(b);
  for (const auto& b : bad.cols) r.a0.clear(b);
  r.bound = ctx.q() * (r.a0.count() - a_prime.count()) >= -(ctx.ell() + 1) * ctx.measure();
  require(r.bound, ErrorKind::ContractFailure, "bad-region removal lost more than (ell+1)|F|/Q points");
  return r;
}

// ---- SVG ----

std::string render_svg(const TilingContext& ctx, const SvgLayers& layers, double scale) {
  const TableauRegion& f = ctx.region();
  const double W = static_cast<double>(f.width()) * scale, H = static_cast<double>(f.height()) * scale;
  std::ostringstream os;
  char buf[256];
  auto rect = [&](const Box& b, const char* style) {
    std::snprintf(buf, sizeof buf, "  <rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" style=\"%s\"/>\n",
                  static_cast<double>(b.x0) * scale, H - static_cast<double>(b.y1) * scale,
                  static_cast<double>(b.x1 - b.x0) * scale, static_cast<double>(b.y1 - b.y0) * scale, style);
    os << buf;
  };
  std::snprintf(buf, sizeof buf, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\">\n", W, H);
  os << buf;
  os << " <g id=\"F\">\n";
  for (const auto& b : f.rectangles()) rect(b, "fill:#f4f4f4;stroke:none");
  os << " </g>\n";
  if (layers.hull) {
    os << " <g id=\"hull\">\n";
    for (auto id : layers.hull->cells) rect(ctx.cells()[id].box, "fill:#cfe3ff;stroke:none");
    os << " </g>\n";
  }
  if (layers.s_complement) {
    os << " <g id=\"S\">\n";
    std::int64_t prev = 0;
    for (const auto& c : f.corners()) {
      for (std::int64_t x0 = prev; x0 < c.x;) {
        const std::int64_t lo = layers.s_complement->height_at(x0);
        std::int64_t x1 = x0 + 1;
        while (x1 < c.x && layers.s_complement->height_at(x1) == lo) ++x1;
        if (lo < c.y) rect(Box{x0, lo, x1, c.y}, "fill:#7fb0ff;stroke:none");
        x0 = x1;
      }
      prev = c.x;
    }
    os << " </g>\n";
  }
  if (layers.stairs) {
    os << " <g id=\"G\">\n";
    for (const auto& parts : layers.stairs->g_parts)
      for (const auto& b : parts) rect(b, "fill:#ffd27f;fill-opacity:0.7;stroke:none");
    os << " </g>\n";
  }
  if (layers.bad) {
    os << " <g id=\"bad\">\n";
    for (const auto& b : layers.bad->rows) rect(b, "fill:#ff0000;fill-opacity:0.25;stroke:none");
    for (const auto& b : layers.bad->cols) rect(b, "fill:#ff0000;fill-opacity:0.25;stroke:none");
    os << " </g>\n";
  }
  os << " <g id=\"cells\">\n";
  for (const auto& c : ctx.cells()) rect(c.box, "fill:none;stroke:#888;stroke-width:0.5");
  for (const auto& b : ctx.coarse_cells()) rect(b, "fill:none;stroke:#333;stroke-width:1");
  os << " </g>\n";
  if (layers.points) {
    os << " <g id=\"points\">\n";
    for (const auto& p : layers.points->points()) {
      std::snprintf(buf, sizeof buf, "  <circle cx=\"%g\" cy=\"%g\" r=\"%g\" style=\"fill:#000\"/>\n",
                    (static_cast<double>(p.x) + 0.5) * scale, H - (static_cast<double>(p.y) + 0.5) * scale,
                    scale * 0.3);
      os << buf;
    }
    if (layers.stairs)
      for (const auto& p : layers.stairs->points) {
        std::snprintf(buf, sizeof buf, "  <circle cx=\"%g\" cy=\"%g\" r=\"%g\" style=\"fill:#d00\"/>\n",
                      (static_cast<double>(p.x) + 0.5) * scale, H - (static_cast<double>(p.y) + 0.5) * scale,
                      scale * 0.6);
        os << buf;
      }
    os << " </g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace plk
