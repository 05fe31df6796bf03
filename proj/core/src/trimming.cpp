#include "plk/trimming.hpp"

#include <string>

#include "plk/error.hpp"

namespace plk {

namespace {

Profile padded(const Profile& p, std::size_t w) {
  Profile out(p);
  out.resize(w, 0);
  return out;
}

// Σ over cells of S (profile, may be shorter than the field) of f(x,y).
Rational field_sum(const CellField& f, const Profile& s) {
  Rational t = 0;
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::int64_t y = 0; y < s[x]; ++y) t += f[x][y];
  return t;
}

CellField product(const CellField& a, const CellField& b) {
  CellField out(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) {
    out[x].resize(a[x].size());
    for (std::size_t y = 0; y < a[x].size(); ++y) out[x][y] = a[x][y] * b[x][y];
  }
  return out;
}

// mu * (f - alpha)
CellField excess(const WeightedTableau& wt, const CellField& f, const Rational& alpha) {
  CellField out(wt.mu.size());
  for (std::size_t x = 0; x < wt.mu.size(); ++x) {
    out[x].resize(wt.mu[x].size());
    for (std::size_t y = 0; y < wt.mu[x].size(); ++y) out[x][y] = wt.mu[x][y] * (f[x][y] - alpha);
  }
  return out;
}

std::int64_t cells_of(const Profile& p) {
  std::int64_t n = 0;
  for (auto h : p) n += h;
  return n;
}

// Inclusion-maximal S ⊊ I (I given by profile) with Σ_{I\S} w > 0.
std::optional<Profile> s_max_dp(const Profile& I, const CellField& w) {
  const std::size_t W = I.size();
  const Rational total = field_sum(w, I);
  auto best = extremal_subtableau(I, Profile(W, 0), w, false);
  if (!best || total - best->value <= 0) return std::nullopt;
  Profile s = best->profile;
  for (;;) {
    bool grew = false;
    for (std::size_t x = 0; x < W && !grew; ++x) {
      if (s[x] >= I[x] || (x > 0 && s[x - 1] <= s[x])) continue;
      Profile lo(s);
      ++lo[x];
      auto cand = extremal_subtableau(I, lo, w, false);
      if (cand && total - cand->value > 0) {
        s = cand->profile;
        grew = true;
      }
    }
    if (!grew) return s;
  }
}

std::optional<Profile> s_max_enum(const Profile& I, const WeightedTableau& wt, const CellField& w,
                                  std::int64_t guard) {
  const Rational total = field_sum(w, I);
  SubtableauEnumerator e(Tableau::from_profile(I), true, guard);
  std::optional<Profile> best;
  Rational best_mu;
  const Tableau whole = Tableau::from_profile(I);
  while (auto s = e.next()) {
    if (*s == whole) continue;
    if (total - field_sum(w, s->profile()) <= 0) continue;
    Rational m = field_sum(wt.mu, s->profile());
    if (!best || m > best_mu) {
      best = padded(s->profile(), I.size());
      best_mu = m;
    }
  }
  return best;
}

}  // namespace

void WeightedTableau::validate() const {
  const auto& p = shape.profile();
  require(mu.size() >= p.size() && rho.size() >= p.size(), ErrorKind::InvalidInput, "mu/rho shorter than the shape");
  for (std::size_t x = 0; x < p.size(); ++x) {
    require(static_cast<std::int64_t>(mu[x].size()) >= p[x] && static_cast<std::int64_t>(rho[x].size()) >= p[x],
            ErrorKind::InvalidInput, "mu/rho column shorter than the shape");
    for (std::int64_t y = 0; y < p[x]; ++y) {
      require(sgn(mu[x][y]) > 0, ErrorKind::InvalidInput, "mu must be positive on every cell");
      require(sgn(rho[x][y]) >= 0 && rho[x][y] <= 1, ErrorKind::InvalidInput, "rho must lie in [0,1]");
    }
  }
}

Rational WeightedTableau::measure(const Profile& s) const { return field_sum(mu, s); }

Rational WeightedTableau::average(const CellField& f, const Profile& s) const {
  Rational m = measure(s);
  require(sgn(m) > 0, ErrorKind::InvalidInput, "average over an empty set");
  return field_sum(product(mu, f), s) / m;
}

Rational WeightedTableau::average_outside(const CellField& f, const Profile& s) const {
  const Profile& I = shape.profile();
  Profile sp = padded(s, I.size());
  Rational m = measure(I) - measure(sp);
  require(sgn(m) > 0, ErrorKind::InvalidInput, "average over an empty set");
  CellField mf = product(mu, f);
  return (field_sum(mf, I) - field_sum(mf, sp)) / m;
}

WeightedTableau make_weighted(const Tableau& shape, const CellField& rho) {
  WeightedTableau wt;
  wt.shape = shape;
  wt.rho = rho;
  wt.mu.resize(static_cast<std::size_t>(shape.width()));
  for (std::int64_t x = 0; x < shape.width(); ++x) wt.mu[x].assign(shape.profile()[x], Rational(1));
  wt.validate();
  return wt;
}

AlphaResult max_alpha(const WeightedTableau& wt) {
  wt.validate();
  require(!wt.shape.empty(), ErrorKind::InvalidInput, "max_alpha of an empty tableau");
  const Profile& I = wt.shape.profile();
  Profile s = I;
  Rational lambda = wt.average(wt.rho, s);
  for (;;) {
    CellField w = excess(wt, wt.rho, lambda);
    auto best = extremal_subtableau(I, Profile{1}, w, false);
    if (!best || sgn(best->value) >= 0) break;
    s = best->profile;
    Rational next = wt.average(wt.rho, s);
    require(next < lambda, ErrorKind::ContractFailure, "parametric step did not decrease the average");
    lambda = next;
  }
  return {lambda, Tableau::from_profile(s)};
}

AlphaResult max_alpha_exhaustive(const WeightedTableau& wt, std::int64_t guard) {
  wt.validate();
  require(!wt.shape.empty(), ErrorKind::InvalidInput, "max_alpha of an empty tableau");
  SubtableauEnumerator e(wt.shape, false, guard);
  std::optional<AlphaResult> best;
  while (auto s = e.next()) {
    Rational a = wt.average(wt.rho, s->profile());
    if (!best || a < best->alpha) best = AlphaResult{a, *s};
  }
  return *best;
}

std::optional<Tableau> find_s_max_dp(const WeightedTableau& wt, const Rational& alpha) {
  auto s = s_max_dp(wt.shape.profile(), excess(wt, wt.rho, alpha));
  if (!s) return std::nullopt;
  return Tableau::from_profile(*s);
}

std::optional<Tableau> find_s_max_enumerate(const WeightedTableau& wt, const Rational& alpha, std::int64_t guard) {
  auto s = s_max_enum(wt.shape.profile(), wt, excess(wt, wt.rho, alpha), guard);
  if (!s) return std::nullopt;
  return Tableau::from_profile(*s);
}

TrimOutput trim(const WeightedTableau& wt, const Rational& alpha, const TrimOptions& opt) {
  wt.validate();
  require(!wt.shape.empty(), ErrorKind::InvalidInput, "trim of an empty tableau");
  require(sgn(alpha) >= 0, ErrorKind::InvalidInput, "alpha must be nonnegative");
  Rational best = max_alpha(wt).alpha;
  require(alpha <= best, ErrorKind::HypothesisViolated,
          "alpha " + to_string(alpha) + " exceeds the largest admissible value " + to_string(best));

  TrimOutput out;
  out.rho_prime = wt.rho;
  const CellField w = excess(wt, wt.rho, alpha);
  const CellField mr = product(wt.mu, wt.rho);
  Profile I = padded(wt.shape.profile(), wt.shape.profile().size());
  while (cells_of(I) > 0) {
    std::optional<Profile> s = cells_of(I) <= opt.enumerate_cells ? s_max_enum(I, wt, w, SubtableauEnumerator::kDefaultGuard)
                                                                  : s_max_dp(I, w);
    if (!s) break;
    // A(rho, I \ S_max) > alpha; scale rho there by alpha / A.
    Rational m = field_sum(wt.mu, I) - field_sum(wt.mu, *s);
    Rational a = (field_sum(mr, I) - field_sum(mr, *s)) / m;
    Rational factor = alpha / a;
    for (std::size_t x = 0; x < I.size(); ++x)
      for (std::int64_t y = (*s)[x]; y < I[x]; ++y) out.rho_prime[x][y] = factor * wt.rho[x][y];
    out.s_max_trace.push_back(Tableau::from_profile(*s));
    I = *s;
  }
  if (opt.verify) {
    TrimCheck c = check_trim(wt, alpha, out.rho_prime, VerifyMode::Auto, opt.verify_cells);
    require(c.ok(), ErrorKind::ContractFailure,
            std::string("trim output fails re-verification:") + (c.below ? "" : " (i)") + (c.average ? "" : " (ii)") +
                (c.upper ? "" : " (iii)"));
  }
  return out;
}

TrimOutput trim(const WeightedTableau& wt, const TrimOptions& opt) { return trim(wt, max_alpha(wt).alpha, opt); }

TrimCheck check_trim(const WeightedTableau& wt, const Rational& alpha, const CellField& rho_prime, VerifyMode mode,
                     std::int64_t verify_cells) {
  wt.validate();
  TrimCheck c;
  const Profile& I = wt.shape.profile();
  c.below = true;
  for (std::size_t x = 0; x < I.size(); ++x)
    for (std::int64_t y = 0; y < I[x]; ++y)
      if (rho_prime[x][y] > wt.rho[x][y] || sgn(rho_prime[x][y]) < 0) c.below = false;
  c.average = wt.average(rho_prime, I) == alpha;

  bool exhaustive = mode == VerifyMode::Exhaustive || (mode == VerifyMode::Auto && wt.shape.measure() <= verify_cells);
  if (exhaustive) {
    require(mode != VerifyMode::Exhaustive || wt.shape.measure() <= verify_cells, ErrorKind::GuardExceeded,
            "shape has " + std::to_string(wt.shape.measure()) + " cells, exhaustive verification guard is " +
                std::to_string(verify_cells));
    c.upper = true;
    for (const auto& s : enumerate_subtableaux(wt.shape, true)) {
      if (s == wt.shape) continue;
      if (wt.average_outside(rho_prime, s.profile()) > alpha) {
        c.upper = false;
        break;
      }
    }
  } else {
    // max over S of Σ_{I\S} mu (rho' - alpha) must be <= 0 (S = I contributes 0)
    CellField w = excess(wt, rho_prime, alpha);
    auto best = extremal_subtableau(I, Profile(I.size(), 0), w, false);
    c.upper = field_sum(w, I) - best->value <= 0;
  }
  return c;
}

bool verify_trim(const WeightedTableau& wt, const Rational& alpha, const TrimOutput& out, VerifyMode mode,
                 std::int64_t verify_cells) {
  return check_trim(wt, alpha, out.rho_prime, mode, verify_cells).ok();
}

}  // namespace plk
