#include "plk/magnification.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <thread>

#include <nlohmann/json.hpp>

#include "plk/error.hpp"
#include "plk/sumset.hpp"

namespace plk {

namespace {

PointSet2 group_sum(GroupMode mode, const PointSet2& x, const PointSet2& y) {
  if (mode == GroupMode::Cyclic) return cyclic_sumset(x, y);
  return sumset(x, y, x.window());
}

PointSet2 group_iter(GroupMode mode, const PointSet2& b, unsigned k) {
  if (mode == GroupMode::Cyclic) return cyclic_iterated_sumset(b, k);
  return iterated_sumset(b, k, b.window());
}

PointSet2 group_truncated(GroupMode mode, const PointSet2& a, const PointSet2& b, const PointSet2& c, unsigned n) {
  if (mode == GroupMode::Lattice) return truncated_sumset(a, b, c, n, a.window());
  return cyclic_sumset(a, cyclic_iterated_sumset(b, n)) - cyclic_sumset(c, cyclic_iterated_sumset(b, n - 1));
}

void check_unclipped(const MagnificationInstance& inst, unsigned n) {
  if (inst.mode == GroupMode::Cyclic) return;
  auto ba = inst.a.bounding_box();
  auto bb = inst.b.bounding_box();
  if (!ba || !bb) return;
  std::int64_t mx = (ba->x1 - 1) + static_cast<std::int64_t>(n) * (bb->x1 - 1);
  std::int64_t my = (ba->y1 - 1) + static_cast<std::int64_t>(n) * (bb->y1 - 1);
  require(mx < inst.window().W && my < inst.window().H, ErrorKind::Clipping,
          "A + " + std::to_string(n) + "B leaves the window");
}

__extension__ typedef __int128 i128;

// a/b vs c/d for nonnegative values with positive denominators.
int frac_cmp(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  i128 l = static_cast<i128>(a) * d, r = static_cast<i128>(c) * b;
  return l < r ? -1 : (l > r ? 1 : 0);
}

// Lexicographic order on sorted index sequences encoded as bit masks.
bool lex_less(std::uint64_t x, std::uint64_t y) {
  if (x == y) return false;
  int d = std::countr_zero(x ^ y);
  bool x_has = (x >> d) & 1ULL;
  std::uint64_t other = x_has ? y : x;
  bool other_ends = (other >> d) == 0;
  // the set holding d is smaller unless the other one is its prefix
  return x_has ? !other_ends : other_ends;
}

std::vector<Point> mask_points(const std::vector<Point>& elems, std::uint64_t mask) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < elems.size(); ++i)
    if ((mask >> i) & 1ULL) out.push_back(elems[i]);
  return out;
}

std::vector<std::int64_t> mask_indices(std::uint64_t mask) {
  std::vector<std::int64_t> out;
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

// Gray-code walk over the masks hi | low, low ranging over the lowest `bits` bits.
// Calls visit(mask, covered) for every nonempty mask.
template <class Visit>
void gray_walk(const CoverageProblem& prob, std::uint64_t hi, unsigned bits, Visit&& visit) {
  std::vector<std::int32_t> cnt(static_cast<std::size_t>(prob.n_nodes), 0);
  std::int64_t covered = 0;
  auto toggle = [&](std::size_t e, bool on) {
    for (auto v : prob.element_arcs[e]) {
      if (on) {
        if (cnt[v]++ == 0) covered += prob.cost[v];
      } else {
        if (--cnt[v] == 0) covered -= prob.cost[v];
      }
    }
  };
  std::uint64_t mask = hi;
  for (std::uint64_t m = hi; m; m &= m - 1) toggle(static_cast<std::size_t>(std::countr_zero(m)), true);
  if (mask) visit(mask, covered);
  const std::uint64_t steps = bits == 0 ? 0 : (1ULL << bits);
  for (std::uint64_t i = 1; i < steps; ++i) {
    unsigned j = static_cast<unsigned>(std::countr_zero(i));
    bool on = !((mask >> j) & 1ULL);
    mask ^= 1ULL << j;
    toggle(j, on);
    visit(mask, covered);
  }
}

}  // namespace

void MagnificationInstance::validate() const {
  require(a.window() == b.window() && a.window() == c.window(), ErrorKind::InvalidInput,
          "A, B and C must share a window");
  if (mode == GroupMode::Cyclic)
    require(window().W == window().H, ErrorKind::InvalidInput, "cyclic mode needs a square window");
}

TruncatedGrowth::TruncatedGrowth(const MagnificationInstance& inst, unsigned n) {
  inst.validate();
  require(n >= 1, ErrorKind::InvalidInput, "n must be positive");
  const Window w = inst.window();
  PointSet2 nb = group_iter(inst.mode, inst.b, n);
  PointSet2 blocked = group_sum(inst.mode, inst.c, group_iter(inst.mode, inst.b, n - 1));
  PointSet2 target = group_sum(inst.mode, inst.a, nb) - blocked;
  elems_ = inst.a.points();
  std::vector<std::int64_t> id(static_cast<std::size_t>(w.area()), -1);
  for (const auto& p : target.points()) {
    id[p.y * w.W + p.x] = prob_.n_nodes++;
  }
  prob_.cost.assign(static_cast<std::size_t>(prob_.n_nodes), 1);
  auto nbp = nb.points();
  for (const auto& a : elems_) {
    std::vector<std::int64_t> arcs;
    for (const auto& p : nbp) {
      std::int64_t x = a.x + p.x, y = a.y + p.y;
      if (inst.mode == GroupMode::Cyclic) {
        x %= w.W;
        y %= w.H;
      } else if (x >= w.W || y >= w.H) {
        continue;
      }
      auto v = id[y * w.W + x];
      if (v >= 0) arcs.push_back(v);
    }
    prob_.element_arcs.push_back(std::move(arcs));
  }
}

std::int64_t TruncatedGrowth::measure(const std::vector<std::int64_t>& subset) const {
  return prob_.coverage(subset);
}

std::int64_t TruncatedGrowth::measure_all() const {
  std::vector<std::int64_t> all(elems_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<std::int64_t>(i);
  return prob_.coverage(all);
}

MagnificationResult magnification(const MagnificationInstance& inst, unsigned n, std::int64_t guard,
                                  unsigned threads) {
  inst.validate();
  require(n >= 1, ErrorKind::InvalidInput, "n must be positive");
  const std::int64_t m = inst.a.count();
  require(m >= 1, ErrorKind::InvalidInput, "A must be nonempty");
  require(m <= guard && m <= 62, ErrorKind::GuardExceeded,
          "|A| = " + std::to_string(m) + " exceeds the subset guard " + std::to_string(guard));
  check_unclipped(inst, n);
  TruncatedGrowth tg(inst, n);
  const auto& prob = tg.coverage();

  struct Best {
    std::int64_t cov = 0, size = 0;
    std::uint64_t mask = 0;
    std::int64_t seen = 0;
  };
  auto consider = [](Best& b, std::uint64_t mask, std::int64_t cov) {
    ++b.seen;
    std::int64_t size = std::popcount(mask);
    if (b.mask == 0) {
      b = Best{cov, size, mask, b.seen};
      return;
    }
    int c = frac_cmp(cov, size, b.cov, b.size);
    if (c < 0 || (c == 0 && lex_less(mask, b.mask))) {
      b.cov = cov;
      b.size = size;
      b.mask = mask;
    }
  };

  unsigned top = 0;
  while ((1u << (top + 1)) <= std::max(1u, threads) && top + 1 <= static_cast<unsigned>(m)) ++top;
  const unsigned low = static_cast<unsigned>(m) - top;
  std::vector<Best> parts(1u << top);
  auto work = [&](std::uint64_t w) {
    gray_walk(prob, w << low, low, [&](std::uint64_t mask, std::int64_t cov) { consider(parts[w], mask, cov); });
  };
  if (parts.size() == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::uint64_t w = 0; w < parts.size(); ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  Best best;
  std::int64_t seen = 0;
  for (const auto& p : parts) {
    seen += p.seen;
    if (p.mask == 0) continue;
    if (best.mask == 0) {
      best = p;
      continue;
    }
    int c = frac_cmp(p.cov, p.size, best.cov, best.size);
    if (c < 0 || (c == 0 && lex_less(p.mask, best.mask))) best = p;
  }
  MagnificationResult out;
  out.d = rat(best.cov, best.size);
  out.witness = mask_points(tg.elements(), best.mask);
  out.subsets = seen;
  return out;
}

MagnificationResult magnification_flow(const MagnificationInstance& inst, unsigned n) {
  inst.validate();
  require(inst.a.count() >= 1, ErrorKind::InvalidInput, "A must be nonempty");
  check_unclipped(inst, n);
  TruncatedGrowth tg(inst, n);
  std::vector<std::int64_t> all(tg.elements().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<std::int64_t>(i);
  RatioSubset rs = min_ratio_subset(tg.coverage(), all);
  MagnificationResult out;
  out.d = rs.ratio;
  for (auto i : rs.subset) out.witness.push_back(tg.elements()[i]);
  return out;
}

MonotoneReport check_root_monotone(const MagnificationInstance& inst, unsigned n_max, std::int64_t guard) {
  MonotoneReport rep;
  for (unsigned n = 1; n <= n_max; ++n) rep.d.push_back(magnification(inst, n, guard).d);
  for (unsigned n = 1; n < n_max; ++n)
    if (pow(rep.d[n], n) > pow(rep.d[n - 1], n + 1)) rep.violations.push_back(n);
  return rep;
}

// ---- delta-heavy ----

bool heavy_bound_holds(const Rational& ratio, const Rational& base, const Surd& delta, unsigned k_prime, unsigned k) {
  Surd lhs = Surd(pow(ratio, k_prime)) * pow(Surd(Rational(1)) - delta, k);
  return lhs <= Surd(pow(base, k));
}

std::string DeltaHeavyResult::to_json() const {
  nlohmann::json j;
  j["delta"] = delta.to_string();
  j["k_prime"] = k_prime;
  j["k"] = k;
  j["a_size"] = a_size;
  j["a_prime_size"] = a_prime.size();
  j["lhs"] = to_string(lhs);
  j["rhs_base"] = to_string(rhs_base);
  j["heavy"] = heavy;
  j["bound"] = bound;
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : a_prime) pts.push_back({p.x, p.y});
  j["a_prime"] = pts;
  return j.dump();
}

namespace {

struct HeavySetup {
  std::vector<Point> elems;
  CoverageProblem prob;  // coverage for the k-fold truncated growth
  std::int64_t rhs_num = 0;
};

void check_params(unsigned k_prime, unsigned k, const Surd& delta) {
  require(k_prime >= 1 && k_prime < k, ErrorKind::InvalidInput, "need 0 < k' < k");
  require(delta.sign() > 0 && delta < Surd(Rational(1)), ErrorKind::InvalidInput, "need 0 < delta < 1");
}

std::vector<std::int64_t> brute_heavy(const HeavySetup& hs, const Rational& base, const Surd& delta,
                                      unsigned k_prime, unsigned k, std::int64_t guard) {
  const std::int64_t m = static_cast<std::int64_t>(hs.elems.size());
  require(m <= guard && m <= 62, ErrorKind::GuardExceeded,
          "|A| = " + std::to_string(m) + " exceeds the subset guard " + std::to_string(guard));
  std::map<std::pair<std::int64_t, std::int64_t>, bool> memo;
  auto holds = [&](std::int64_t cov, std::int64_t size) {
    auto key = std::make_pair(cov, size);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool v = heavy_bound_holds(rat(cov, size), base, delta, k_prime, k);
    memo.emplace(key, v);
    return v;
  };
  std::uint64_t best = 0;
  std::int64_t best_size = 0;
  gray_walk(hs.prob, 0, static_cast<unsigned>(m), [&](std::uint64_t mask, std::int64_t cov) {
    std::int64_t size = std::popcount(mask);
    if (size < best_size) return;
    if (!holds(cov, size)) return;
    if (size > best_size || lex_less(mask, best)) {
      best = mask;
      best_size = size;
    }
  });
  require(best != 0, ErrorKind::ContractFailure, "no nonempty subset satisfies the heavy inequality");
  return mask_indices(best);
}

// Largest rational of the form j / 2^20 not exceeding the bound constant.
Rational bound_floor(const Rational& base, const Surd& delta, unsigned k_prime, unsigned k) {
  double c = std::pow(1.0 - delta.to_double(), -static_cast<double>(k) / k_prime) *
             std::pow(base.get_d(), static_cast<double>(k) / k_prime);
  const long scale = 1L << 20;
  long j = static_cast<long>(std::floor(c * scale));
  if (j < 0) j = 0;
  while (j > 0 && !heavy_bound_holds(rat(j, scale), base, delta, k_prime, k)) j = j * 15 / 16;
  return rat(j, scale);
}

std::vector<std::int64_t> greedy_heavy(const HeavySetup& hs, const Rational& base, const Surd& delta,
                                       unsigned k_prime, unsigned k) {
  const std::int64_t m = static_cast<std::int64_t>(hs.elems.size());
  const Rational lam = bound_floor(base, delta, k_prime, k);
  std::vector<bool> taken(static_cast<std::size_t>(m), false);
  std::int64_t size = 0;
  auto heavy = [&] { return Surd(Rational(size)) > delta * Surd(Rational(m)); };
  while (!heavy()) {
    std::vector<std::int64_t> rest;
    for (std::int64_t i = 0; i < m; ++i)
      if (!taken[i]) rest.push_back(i);
    require(!rest.empty(), ErrorKind::ContractFailure, "greedy construction ran out of elements");
    std::vector<std::int64_t> piece;
    ParametricCut pc = max_parametric_subset(hs.prob, rest, lam);
    if (sgn(pc.value) <= 0 && !pc.subset.empty()) {
      piece = pc.subset;
    } else {
      RatioSubset rs = min_ratio_subset(hs.prob, rest);
      require(heavy_bound_holds(rs.ratio, base, delta, k_prime, k), ErrorKind::ContractFailure,
              "minimal growth ratio of the remainder exceeds the heavy bound");
      piece = rs.subset;
    }
    for (auto i : piece) {
      taken[i] = true;
      ++size;
    }
  }
  std::vector<std::int64_t> out;
  for (std::int64_t i = 0; i < m; ++i)
    if (taken[i]) out.push_back(i);
  return out;
}

DeltaHeavyResult finish_heavy(const HeavySetup& hs, const std::vector<std::int64_t>& chosen,
                              std::int64_t lhs_num, const Surd& delta, unsigned k_prime, unsigned k) {
  DeltaHeavyResult r;
  for (auto i : chosen) r.a_prime.push_back(hs.elems[i]);
  std::sort(r.a_prime.begin(), r.a_prime.end());
  r.delta = delta;
  r.k_prime = k_prime;
  r.k = k;
  r.a_size = static_cast<std::int64_t>(hs.elems.size());
  r.lhs_num = lhs_num;
  r.rhs_num = hs.rhs_num;
  r.lhs = rat(lhs_num, static_cast<std::int64_t>(r.a_prime.size()));
  r.rhs_base = rat(hs.rhs_num, r.a_size);
  r.heavy = Surd(Rational(static_cast<long>(r.a_prime.size()))) > delta * Surd(Rational(r.a_size));
  r.bound = heavy_bound_holds(r.lhs, r.rhs_base, delta, k_prime, k);
  require(r.heavy, ErrorKind::ContractFailure, "returned subset is not heavy: " + r.to_json());
  require(r.bound, ErrorKind::ContractFailure, "returned subset violates the heavy bound: " + r.to_json());
  return r;
}

DeltaHeavyResult run_heavy(const HeavySetup& hs, const Surd& delta, unsigned k_prime, unsigned k, HeavyMode mode,
                           std::int64_t guard, const std::function<std::int64_t(const std::vector<Point>&)>& recount) {
  require(!hs.elems.empty(), ErrorKind::InvalidInput, "A must be nonempty");
  Rational base = rat(hs.rhs_num, static_cast<std::int64_t>(hs.elems.size()));
  std::vector<std::int64_t> chosen = mode == HeavyMode::Brute ? brute_heavy(hs, base, delta, k_prime, k, guard)
                                                              : greedy_heavy(hs, base, delta, k_prime, k);
  std::vector<Point> pts;
  for (auto i : chosen) pts.push_back(hs.elems[i]);
  return finish_heavy(hs, chosen, recount(pts), delta, k_prime, k);
}

}  // namespace

DeltaHeavyResult delta_heavy_unchecked(const MagnificationInstance& inst, unsigned k_prime, unsigned k,
                                       const Surd& delta, HeavyMode mode, std::int64_t guard) {
  check_params(k_prime, k, delta);
  TruncatedGrowth gk(inst, k);
  TruncatedGrowth gkp(inst, k_prime);
  HeavySetup hs{gk.elements(), gk.coverage(), gkp.measure_all()};
  auto recount = [&](const std::vector<Point>& pts) {
    PointSet2 ap = PointSet2::from_points(inst.window(), pts);
    return group_truncated(inst.mode, ap, inst.b, inst.c, k).count();
  };
  return run_heavy(hs, delta, k_prime, k, mode, guard, recount);
}

DeltaHeavyResult delta_heavy(const MagnificationInstance& inst, unsigned k_prime, unsigned k, const Surd& delta,
                             HeavyMode mode, std::int64_t guard) {
  inst.validate();
  check_unclipped(inst, k);
  return delta_heavy_unchecked(inst, k_prime, k, delta, mode, guard);
}

DeltaHeavyResult truncated_heavy_tableau(const PointSet2& a, const PointSet2& b, const Tableau& t, unsigned k_prime,
                                         unsigned k, const Surd& delta, HeavyMode mode, std::int64_t guard) {
  const Window w = a.window();
  require(b.window() == w, ErrorKind::InvalidInput, "A and B must share a window");
  require(b.contains(0, 0), ErrorKind::InvalidInput, "B must contain the origin");
  require(t.width() <= w.W && t.height() <= w.H, ErrorKind::WindowTooSmall, "tableau exceeds the window");
  check_params(k_prime, k, delta);
  const PointSet2 tset = t.to_point_set(w);
  MagnificationInstance inst{a, b, tset.complement(), GroupMode::Lattice};

  const PointSet2 kb = iterated_sumset(b, k, w);
  const bool basis = kb.count() == w.area();
  if (!basis || mode == HeavyMode::Brute) return delta_heavy_unchecked(inst, k_prime, k, delta, mode, guard);

  // kB ⊇ window: the k-fold footprint of a is its up-closure inside T.
  HeavySetup hs;
  hs.elems = a.points();
  std::vector<std::int64_t> id(static_cast<std::size_t>(w.area()), -1);
  auto cells = t.cells();
  for (const auto& c : cells) id[c.y * w.W + c.x] = hs.prob.n_nodes++;
  hs.prob.cost.assign(static_cast<std::size_t>(hs.prob.n_nodes), 1);
  hs.prob.node_arcs.resize(static_cast<std::size_t>(hs.prob.n_nodes));
  for (const auto& c : cells) {
    auto v = id[c.y * w.W + c.x];
    if (t.contains(c.x + 1, c.y)) hs.prob.node_arcs[v].push_back(id[c.y * w.W + c.x + 1]);
    if (t.contains(c.x, c.y + 1)) hs.prob.node_arcs[v].push_back(id[(c.y + 1) * w.W + c.x]);
  }
  for (const auto& p : hs.elems) {
    std::vector<std::int64_t> arcs;
    if (t.contains(p.x, p.y)) arcs.push_back(id[p.y * w.W + p.x]);
    hs.prob.element_arcs.push_back(std::move(arcs));
  }
  hs.rhs_num = (sumset(a, iterated_sumset(b, k_prime, w), w) & tset).count();
  auto recount = [&](const std::vector<Point>& pts) {
    return (sumset(PointSet2::from_points(w, pts), kb, w) & tset).count();
  };
  return run_heavy(hs, delta, k_prime, k, mode, guard, recount);
}

}  // namespace plk
