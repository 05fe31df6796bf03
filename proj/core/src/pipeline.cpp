#include "plk/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "plk/density.hpp"
#include "plk/error.hpp"
#include "plk/sumset.hpp"
#include "plk/surd.hpp"

namespace plk {

namespace {

Surd positive_part(const Surd& x) { return x.sign() < 0 ? Surd(0) : x; }

Surd surd(const Surd& x) { return x; }
template <class X>
Surd surd(const X& x) {
  return Surd(Rational(x));
}

// A line of the chained display: base^(k/k') * factor, compared through the k'-th power.
struct ChainLine {
  Surd base;
  Surd factor;
  std::string text;
};

class Recorder {
 public:
  explicit Recorder(PipelineTrace& t) : t_(t) {}

  void add(const std::string& id, const std::string& relation, const Surd& lhs, const Surd& rhs, bool pass,
           bool conditional = false) {
    t_.steps.push_back(PipelineStep{id, relation, lhs.to_string(), rhs.to_string(), lhs.to_double(), rhs.to_double(),
                                    pass, conditional});
  }
  template <class X, class Y>
  void ge(const std::string& id, const std::string& relation, const X& lhs, const Y& rhs, bool conditional = false) {
    const Surd l = surd(lhs), r = surd(rhs);
    add(id, relation, l, r, l >= r, conditional);
  }
  template <class X, class Y>
  void gt(const std::string& id, const std::string& relation, const X& lhs, const Y& rhs, bool conditional = false) {
    const Surd l = surd(lhs), r = surd(rhs);
    add(id, relation, l, r, l > r, conditional);
  }
  template <class X, class Y>
  void eq(const std::string& id, const std::string& relation, const X& lhs, const Y& rhs, bool conditional = false) {
    const Surd l = surd(lhs), r = surd(rhs);
    add(id, relation, l, r, l == r, conditional);
  }
  // a.base^(k/k') a.factor >= b.base^(k/k') b.factor, for nonnegative operands.
  void chain(const std::string& id, const ChainLine& a, const ChainLine& b, unsigned k_prime, unsigned k,
             bool conditional = false) {
    const Surd lhs = pow(a.base, k) * pow(a.factor, k_prime);
    const Surd rhs = pow(b.base, k) * pow(b.factor, k_prime);
    add(id, a.text + " >= " + b.text + "  (k'-th powers)", lhs, rhs, lhs >= rhs, conditional);
  }

 private:
  PipelineTrace& t_;
};

std::int64_t count_boxes(const PointSet2& s, const std::vector<Box>& boxes) {
  std::int64_t n = 0;
  for (const auto& b : boxes) n += s.count_in(b);
  return n;
}

}  // namespace

bool PipelineTrace::all_steps_pass() const {
  return std::all_of(steps.begin(), steps.end(), [](const PipelineStep& s) { return s.pass; });
}

bool PipelineTrace::ok() const {
  if (steps.empty()) return false;
  return std::all_of(steps.begin(), steps.end(),
                     [&](const PipelineStep& s) { return s.pass || (s.conditional && !precondition); });
}

const PipelineStep* PipelineTrace::find(const std::string& id) const {
  for (const auto& s : steps)
    if (s.id == id) return &s;
  return nullptr;
}

std::string PipelineTrace::to_json() const {
  nlohmann::json j;
  j["f_measure"] = f_measure;
  j["a_in_f"] = a_in_f;
  j["a_trim"] = a_trim;
  j["a0"] = a0;
  j["a0_heavy"] = a0_heavy;
  j["s"] = s;
  j["s_hull"] = s_hull;
  j["g"] = g;
  j["alpha"] = to_string(alpha);
  j["alpha_n"] = to_string(alpha_n);
  j["n_tilde"] = n_tilde;
  j["precondition"] = precondition;
  j["basis"] = basis;
  j["kb_density"] = to_string(kb_density);
  j["delta_empirical"] = to_string(delta_empirical);
  j["lambda"] = lambda;
  j["lambda_power"] = lambda_power;
  j["stair_points"] = nlohmann::json::array();
  for (const auto& p : stair_points) j["stair_points"].push_back({p.x, p.y});
  j["g_ratios"] = nlohmann::json::array();
  for (const auto& r : g_ratios) j["g_ratios"].push_back(to_string(r));
  j["steps"] = nlohmann::json::array();
  for (const auto& s : steps)
    j["steps"].push_back({{"id", s.id},
                          {"relation", s.relation},
                          {"lhs", s.lhs},
                          {"rhs", s.rhs},
                          {"lhs_approx", s.lhs_approx},
                          {"rhs_approx", s.rhs_approx},
                          {"pass", s.pass},
                          {"conditional", s.conditional}});
  j["diagnostics"] = diagnostics;
  j["ok"] = ok();
  return j.dump();
}

PipelineTrace pipeline_replay(const PipelineInput& in) {
  PipelineTrace t;
  Recorder rec(t);
  const TableauRegion& f = in.f;
  require(!f.empty(), ErrorKind::InvalidInput, "the Følner term must be nonempty");
  require(static_cast<std::int64_t>(f.size()) <= in.L, ErrorKind::InvalidInput, "the Følner term has more than L corners");
  require(in.k_prime >= 1 && in.k > in.k_prime, ErrorKind::InvalidInput, "need 0 < k' < k");
  require(in.b.contains(0, 0), ErrorKind::InvalidInput, "B must contain the origin");
  const Window win(f.width(), f.height());
  const PointSet2 fset = f.to_point_set(win);
  const PointSet2 a = in.a.resized(win) & fset;
  const PointSet2 b = in.b.resized(win);
  const std::int64_t q = in.q;
  const std::int64_t L = in.L;
  const std::int64_t F = f.measure();
  const Rational rF = rat(F);
  const TilingContext ctx = TilingContext::build(f, q);
  const Surd delta = Surd::sqrt(rat(1, q));
  t.f_measure = F;
  t.a_in_f = a.count();
  if (t.a_in_f == 0) {
    t.diagnostics.push_back("A misses F entirely; nothing to replay");
    return t;
  }

  // Trimming.
  const TrimPointsResult tp = trim_points(ctx, a);
  t.alpha_n = tp.alpha;
  t.alpha = in.alpha.value_or(tp.alpha);
  t.a_trim = tp.a_prime.count();
  if (sgn(t.alpha) <= 0) {
    t.diagnostics.push_back("alpha is zero; the Q-size condition cannot hold and the chain is vacuous");
    return t;
  }
  t.precondition = q * t.alpha >= 4 * (L + 1);
  if (!t.precondition)
    t.diagnostics.push_back("Q-size condition fails: Q = " + std::to_string(q) + " < 4(L+1)/alpha = " +
                            to_string(Rational(4 * (L + 1)) / t.alpha) +
                            "; steps marked conditional are reported but not required");
  t.n_tilde = t.alpha_n * 4 > t.alpha * 3;
  if (!t.n_tilde) t.diagnostics.push_back("alpha_n <= (3/4) alpha: this term precedes the index N~");
  rec.add("trim.a", "|A' ∩ (F \\ F')| <= (alpha_n + Q^-2)|F \\ F'| for every measurable F' ⊊ F", Surd(0), Surd(0),
          tp.cond_a);
  rec.ge("trim.b", "|A'| >= alpha_n |F|", rat(t.a_trim), t.alpha_n * rF);

  // Bad rows and columns.
  const BadRegion bad = bad_regions(ctx);
  const RemovalResult rem = remove_bad(ctx, tp.a_prime, bad);
  const PointSet2& a0 = rem.a0;
  t.a0 = a0.count();
  rec.ge("removal.bound", "|A0| >= |A'| - (L+1)Q^-1|F|", rat(t.a0), rat(t.a_trim) - rat((L + 1) * F, q));
  rec.ge("removal.density", "|A'| - (L+1)Q^-1|F| >= (alpha_n - (L+1)Q^-1)|F|", rat(t.a_trim) - rat((L + 1) * F, q),
         (t.alpha_n - rat(L + 1, q)) * rF);
  rec.gt("removal.half", "|A0|/|F| > alpha/2", rat(t.a0, F), t.alpha / 2, true);
  if (t.a0 == 0) {
    t.diagnostics.push_back("A0 is empty after removing bad rows and columns; the chain stops here");
    return t;
  }

  // Heavy subset.
  const Tableau ft = f.to_tableau();
  const DeltaHeavyResult heavy = truncated_heavy_tableau(a0, b, ft, in.k_prime, in.k, delta, in.mode);
  const PointSet2 a0h = PointSet2::from_points(win, heavy.a_prime);
  t.a0_heavy = a0h.count();
  const PointSet2 kb = iterated_sumset(b, in.k, win);
  const PointSet2 kpb = iterated_sumset(b, in.k_prime, win);
  const std::int64_t full_kp = (sumset(a, kpb, win) & fset).count();
  const std::int64_t a0_kp = (sumset(a0, kpb, win) & fset).count();
  const PointSet2 a0h_k = sumset(a0h, kb, win) & fset;
  const std::int64_t P = a0h_k.count();
  const Rational base_num = rat(a0_kp, t.a0);
  const Rational heavy_ratio = rat(P, t.a0_heavy);
  rec.ge("heavy.monotone", "|(A+k'B) ∩ F| >= |(A0+k'B) ∩ F|", rat(full_kp), rat(a0_kp));
  rec.add("heavy.ratio", "|(A0+k'B) ∩ F|/|A0| >= (1-Q^-1/2)(|(A'0+kB) ∩ F|/|A'0|)^(k'/k)", base_num, heavy_ratio,
          heavy_bound_holds(heavy_ratio, base_num, delta, in.k_prime, in.k));
  rec.ge("heavy.size", "|A'0| >= Q^-1/2 |A0|", rat(t.a0_heavy), delta * rat(t.a0));

  // Upper set and its hull.
  const TableauRegion s_comp = lower_complement(f, a0h.points());
  const HullResult hull = measurable_hull(ctx, s_comp);
  t.s = hull.s_measure;
  t.s_hull = hull.hull_measure;
  rec.ge("hull.excess", "|S~ \\ S| <= (2/Q)|F|", rat(2 * F, q), rat(hull.excess));
  rec.ge("hull.contains", "|S| >= |A'0|", rat(t.s), rat(t.a0_heavy));
  rec.ge("hull.lower", "Q^-1/2 |A0|/|F| >= (alpha/2) Q^-1/2", delta * rat(t.a0, F), delta * Surd(Rational(t.alpha / 2)), true);
  const Surd hull_factor = Surd(1) + Surd(4) / Surd(t.alpha) * delta;
  rec.ge("hull.factor", "|S~|/|S| <= 1 + 4 alpha^-1 Q^-1/2", hull_factor, rat(t.s_hull, t.s), true);
  std::int64_t trimmed_in_hull = 0;
  for (auto id : hull.cells) trimmed_in_hull += tp.a_prime.count_in(ctx.cells()[id].box);
  rec.ge("hull.trimmed", "|A'0| <= |A' ∩ S~|", rat(trimmed_in_hull), rat(t.a0_heavy));
  rec.ge("hull.trim_density", "|A' ∩ S~|/|S~| <= alpha_n + Q^-2", t.alpha_n + rat(1, q * q), rat(trimmed_in_hull, t.s_hull));

  // The chained display.
  const Surd one_minus = Surd(1) - delta;
  Surd lb = Surd(t.alpha_n - rat(L + 1, q));
  if (lb.sign() < 0) {
    t.diagnostics.push_back("alpha_n - (L+1)/Q is negative; the chain uses its positive part 0");
    lb = Surd(0);
  }
  const Rational trim_cap = t.alpha_n + rat(1, q * q);
  const ChainLine l0{Surd(rat(full_kp, F)), Surd(1), "(|(A+k'B) ∩ F|/|F|)^(k/k')"};
  const ChainLine l1{Surd(rat(t.a0, F)) * one_minus, Surd(heavy_ratio), "(|A0|/|F| (1-Q^-1/2))^(k/k') P/|A'0|"};
  const ChainLine l2{lb * one_minus, Surd(heavy_ratio), "((alpha_n-(L+1)/Q)(1-Q^-1/2))^(k/k') P/|A'0|"};
  const ChainLine l4{lb * one_minus, Surd(rat(P, t.s_hull) / trim_cap),
                     "(...)^(k/k') (alpha_n+Q^-2)^-1 P/|S~|"};
  const ChainLine l5{lb * one_minus, Surd(rat(P, t.s) / trim_cap) / hull_factor,
                     "(...)^(k/k') (alpha_n+Q^-2)^-1 (1+4alpha^-1 Q^-1/2)^-1 P/|S|"};
  rec.chain("chain.1", l0, l1, in.k_prime, in.k);
  rec.chain("chain.2", l1, l2, in.k_prime, in.k);
  rec.eq("chain.3", "P/|A'0| = (|S~|/|A'0|)(P/|S~|)", heavy_ratio,
         rat(t.s_hull, t.a0_heavy) * rat(P, t.s_hull));
  rec.chain("chain.4", l2, l4, in.k_prime, in.k);
  rec.chain("chain.5", l4, l5, in.k_prime, in.k, true);
  rec.chain("chain.total", l0, l5, in.k_prime, in.k, true);
  const Surd lambda_factor = Surd(1 / trim_cap) / hull_factor;
  const Surd lambda_pow = pow(lb * one_minus, in.k) * pow(lambda_factor, in.k_prime);
  t.lambda_power = lambda_pow.to_string();
  t.lambda = std::pow(lambda_pow.to_double(), 1.0 / in.k_prime);

  // Basis case.
  t.basis = kb.count() == win.area();
  if (t.basis) rec.eq("basis.full", "|(A'0+kB) ∩ F| / |S| = 1", rat(P, t.s), rat(1));

  // Staircase points and the G_j.
  const StaircaseResult st = staircase(ctx, a0h);
  t.stair_points = st.points;
  t.g = st.g_measure;
  rec.add("stair.gaps", "y(a_j) <= y(a_{j-1}) - Q", Surd(rat(st.points.size())), Surd(0), st.gaps);
  rec.ge("stair.loss", "|S \\ G| <= (3/Q)|F|", rat(3 * F, q), rat(st.s_measure - st.g_measure));
  std::int64_t short_sides = 0;
  for (const auto& rects : st.g_rects)
    for (const auto& r : rects) short_sides += (r.x1 - r.x0 < q) + (r.y1 - r.y0 < q);
  rec.eq("stair.sides", "every rectangle of every G_j has sides >= Q (count of short sides)", rat(short_sides), rat(0));

  t.kb_density = in.kb_density.value_or(tab_lower_estimate(kb, q - 1, L, q).value);
  Rational deficit = 0;
  std::int64_t per_part = 0;
  for (std::size_t j = 0; j < st.points.size(); ++j) {
    const Point& p = st.points[j];
    std::int64_t hit = 0, area = 0;
    for (const auto& bx : st.g_parts[j]) {
      hit += kb.count_in(Box{bx.x0 - p.x, bx.y0 - p.y, bx.x1 - p.x, bx.y1 - p.y});
      area += bx.area();
    }
    per_part += hit;
    const Rational r = rat(hit, area);
    t.g_ratios.push_back(r);
    deficit = std::max(deficit, Rational(t.kb_density - r));
  }
  t.delta_empirical = deficit;
  const Rational d_eff = std::max(Rational(0), Rational(t.kb_density - deficit));
  const std::int64_t in_g = count_boxes(a0h_k, [&] {
    std::vector<Box> all;
    for (const auto& parts : st.g_parts) all.insert(all.end(), parts.begin(), parts.end());
    return all;
  }());
  rec.ge("G.sum", "|(A'0+kB) ∩ G| >= Σ_j |(a_j+kB) ∩ G_j|", rat(in_g), rat(per_part));
  rec.ge("G.density", "|(A'0+kB) ∩ G| >= |G| (d_Tab(L)(kB) - delta(Q))", rat(in_g), rat(t.g) * d_eff);
  const Surd g_factor = Surd(1) - Surd(6) / Surd(t.alpha) * delta;
  rec.ge("G.fraction", "|G|/|S| >= 1 - 6 alpha^-1 Q^-1/2", rat(t.g, t.s), g_factor, true);
  rec.ge("S.contains_G", "|(A'0+kB) ∩ S| >= |(A'0+kB) ∩ G|", rat(P), rat(in_g));
  rec.ge("S.density", "|(A'0+kB) ∩ S|/|S| >= (|G|/|S|)(d - delta)", rat(P, t.s), rat(t.g, t.s) * d_eff);
  rec.ge("S.lower", "|(A'0+kB) ∩ S|/|S| >= (1 - 6 alpha^-1 Q^-1/2)(d - delta)", rat(P, t.s),
         positive_part(g_factor) * d_eff, true);

  // Final bound, with the measured |G|/|S| and with its lower estimate.
  const ChainLine fin_measured{lb * one_minus, lambda_factor * Surd(rat(t.g, t.s) * d_eff), "lambda (|G|/|S|)(d-delta)"};
  const ChainLine fin{lb * one_minus, lambda_factor * positive_part(g_factor) * Surd(d_eff),
                      "lambda (1-6alpha^-1 Q^-1/2)(d-delta)"};
  rec.chain("final.measured", l0, fin_measured, in.k_prime, in.k);
  rec.chain("final", l0, fin, in.k_prime, in.k, true);
  return t;
}

}  // namespace plk
