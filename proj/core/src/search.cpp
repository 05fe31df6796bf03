#include "plk/search.hpp"

#include <bit>
#include <chrono>
#include <random>

#include "plk/density.hpp"
#include "plk/error.hpp"
#include "plk/io.hpp"
#include "plk/sumset.hpp"

namespace plk {

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Clean: return 0;
    case Verdict::Violation: return 2;
    case Verdict::Inconclusive: return 3;
  }
  return 3;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Clean: return "clean";
    case Verdict::Violation: return "violation";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string SearchReport::to_jsonl() const {
  std::string out;
  nlohmann::json head{{"type", "header"}, {"question", question}, {"params", params}};
  out += head.dump() + "\n";
  for (const auto& v : violations) {
    nlohmann::json line{{"type", "violation"}, {"payload", v}};
    out += line.dump() + "\n";
  }
  nlohmann::json tail{{"type", "summary"},
                      {"question", question},
                      {"instances", instances},
                      {"expected_total", expected_total},
                      {"cursor", cursor},
                      {"complete", complete},
                      {"violations", violations.size()},
                      {"notes", notes},
                      {"seconds", seconds},
                      {"verdict", to_string(verdict)}};
  out += tail.dump() + "\n";
  return out;
}

namespace {

__extension__ typedef __int128 i128;

// Subsets of the box [0,N] x [0,M] as bit masks, cell (x,y) at bit y(N+1)+x.
class MaskBox {
 public:
  MaskBox(std::int64_t n, std::int64_t m) : cols_(n + 1), rows_(m + 1), cells_(cols_ * rows_) {
    require(n >= 0 && m >= 0 && cells_ <= 64, ErrorKind::GuardExceeded, "box must have at most 64 cells");
    full_ = cells_ == 64 ? ~0ull : (1ull << cells_) - 1;
    for (std::int64_t y = 0; y < rows_; ++y)
      for (std::int64_t x = 0; x < cols_; ++x) {
        std::uint64_t pm = 0;
        for (std::int64_t yy = 0; yy <= y; ++yy)
          for (std::int64_t xx = 0; xx <= x; ++xx) pm |= bit(xx, yy);
        prefix_.push_back(pm);
        area_.push_back((x + 1) * (y + 1));
      }
    if (cells_ <= 12) {
      table_.assign(static_cast<std::size_t>(cells_) << cells_, 0);
      for (std::int64_t b = 0; b < cells_; ++b)
        for (std::uint64_t a = 0; a <= full_; ++a) table_[(static_cast<std::size_t>(b) << cells_) | a] = shift_slow(a, b);
    }
  }

  std::int64_t cells() const { return cells_; }
  std::uint64_t full() const { return full_; }
  std::uint64_t bit(std::int64_t x, std::int64_t y) const { return 1ull << (y * cols_ + x); }

  std::uint64_t shift(std::uint64_t a, std::int64_t b) const {
    if (!table_.empty()) return table_[(static_cast<std::size_t>(b) << cells_) | a];
    return shift_slow(a, b);
  }

  std::uint64_t sum(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t out = 0;
    for (std::uint64_t rest = b; rest; rest &= rest - 1) out |= shift(a, std::countr_zero(rest));
    return out;
  }

  // kB with (0,0) ∈ B.
  std::uint64_t iterated(std::uint64_t b, unsigned k) const {
    std::uint64_t out = 1;
    for (unsigned i = 0; i < k; ++i) out = sum(out, b);
    return out;
  }

  // sigma as (numerator, denominator), the minimum prefix ratio.
  std::pair<std::int64_t, std::int64_t> sigma(std::uint64_t s) const {
    std::int64_t p = 2, q = 1;
    for (std::size_t i = 0; i < prefix_.size(); ++i) {
      const std::int64_t c = std::popcount(s & prefix_[i]);
      if (c * q < p * area_[i]) {
        p = c;
        q = area_[i];
      }
    }
    return {p, q};
  }

  std::vector<Point> points(std::uint64_t s) const {
    std::vector<Point> out;
    for (std::uint64_t rest = s; rest; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      out.push_back({i % cols_, i / cols_});
    }
    return out;
  }

 private:
  std::uint64_t shift_slow(std::uint64_t a, std::int64_t b) const {
    const std::int64_t bx = b % cols_, by = b / cols_;
    std::uint64_t out = 0;
    for (std::uint64_t rest = a; rest; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      const std::int64_t x = i % cols_ + bx, y = i / cols_ + by;
      if (x < cols_ && y < rows_) out |= bit(x, y);
    }
    return out;
  }

  std::int64_t cols_, rows_, cells_;
  std::uint64_t full_;
  std::vector<std::uint64_t> prefix_;
  std::vector<std::int64_t> area_;
  std::vector<std::uint64_t> table_;
};

Integer ipow(std::int64_t b, unsigned e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), e);
  return r;
}

// p1^k q2^(k-k') q3^k' >= p2^(k-k') p3^k' q1^k for sigma values p/q.
bool box_holds(std::pair<std::int64_t, std::int64_t> s1, std::pair<std::int64_t, std::int64_t> s2,
               std::pair<std::int64_t, std::int64_t> s3, unsigned k, unsigned kp, bool narrow) {
  if (narrow) {
    auto pw = [](std::int64_t b, unsigned e) {
      i128 r = 1;
      for (unsigned i = 0; i < e; ++i) r *= b;
      return r;
    };
    return pw(s1.first, k) * pw(s2.second, k - kp) * pw(s3.second, kp) >=
           pw(s2.first, k - kp) * pw(s3.first, kp) * pw(s1.second, k);
  }
  return ipow(s1.first, k) * ipow(s2.second, k - kp) * ipow(s3.second, kp) >=
         ipow(s2.first, k - kp) * ipow(s3.first, kp) * ipow(s1.second, k);
}

std::string frac(std::pair<std::int64_t, std::int64_t> s) { return to_string(rat(s.first, s.second)); }

}  // namespace

std::pair<std::vector<Point>, std::vector<Point>> box_instance(std::int64_t n, std::int64_t m, std::uint64_t index) {
  MaskBox box(n, m);
  const std::uint64_t half = 1ull << (box.cells() - 1);
  return {box.points(index / half), box.points(((index % half) << 1) | 1)};
}

SearchReport search_box_sigma(const BoxSearchOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  require(opt.k_prime >= 1 && opt.k > opt.k_prime, ErrorKind::InvalidInput, "need 0 < k' < k");
  MaskBox box(opt.n, opt.m);
  const std::int64_t c = box.cells();
  SearchReport r;
  r.question = "box-sigma";
  r.params = {{"N", opt.n},
              {"M", opt.m},
              {"k", opt.k},
              {"k_prime", opt.k_prime},
              {"mode", opt.mode == SearchMode::Exhaustive ? "exhaustive" : "random"},
              {"budget", opt.budget},
              {"start_cursor", opt.cursor}};
  r.notes.push_back("sumsets are clipped to [0,N]x[0,M] before sigma_{N,M} is taken");
  // (N+1)(M+1) cells with denominators up to 64: 2k factors of at most 2^6 each.
  const bool narrow = 12 * static_cast<std::int64_t>(opt.k) < 126;

  std::uint64_t begin = opt.cursor, end;
  if (opt.mode == SearchMode::Exhaustive) {
    require(c <= 12, ErrorKind::GuardExceeded, "exhaustive mode needs (N+1)(M+1) <= 12");
    r.expected_total = 1ull << (2 * c - 1);
    require(begin <= r.expected_total, ErrorKind::InvalidInput, "cursor beyond the instance space");
    end = opt.budget == 0 ? r.expected_total : std::min(r.expected_total, begin + opt.budget);
  } else {
    require(opt.budget > 0, ErrorKind::InvalidInput, "random mode needs a budget");
    r.params["seed"] = opt.seed;
    end = begin + opt.budget;
  }

  const std::uint64_t half = 1ull << (c - 1);
  for (std::uint64_t i = begin; i < end; ++i) {
    std::uint64_t a, b;
    if (opt.mode == SearchMode::Exhaustive) {
      a = i / half;
      b = ((i % half) << 1) | 1;
    } else {
      std::mt19937_64 rng(opt.seed ^ (i * 0x9E3779B97F4A7C15ull));
      a = rng() & box.full();
      b = (rng() & box.full()) | 1;
    }
    const auto s_sum = box.sigma(box.sum(a, box.iterated(b, opt.k_prime)));
    const auto s_a = box.sigma(a);
    const auto s_kb = box.sigma(box.iterated(b, opt.k));
    if (!box_holds(s_sum, s_a, s_kb, opt.k, opt.k_prime, narrow))
      r.violations.push_back({{"index", i},
                              {"A", points_to_json(box.points(a))},
                              {"B", points_to_json(box.points(b))},
                              {"sigma_A", frac(s_a)},
                              {"sigma_kB", frac(s_kb)},
                              {"sigma_sum", frac(s_sum)}});
  }
  r.instances = end - begin;
  r.cursor = end;
  r.complete = opt.mode == SearchMode::Exhaustive && end == r.expected_total;
  if (!r.violations.empty())
    r.verdict = Verdict::Violation;
  else if (r.complete || opt.mode == SearchMode::Random)
    r.verdict = Verdict::Clean;
  else
    r.verdict = Verdict::Inconclusive;
  if (opt.mode == SearchMode::Random) r.notes.push_back("random sampling: a clean run is evidence, not a proof");
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

namespace {

// Rect proxy on an s x s window: minimum over rectangles with sides in (s/4, s] on a stride of s/32.
Rational rect_proxy(const PointSet2& x, std::int64_t s) {
  const std::int64_t stride = std::max<std::int64_t>(1, s / 32);
  return tab_lower_estimate(x, s / 4, 1, stride).value;
}

}  // namespace

SearchReport search_fractal_rect(const FractalScreenOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  require(opt.k_prime >= 1 && opt.k > opt.k_prime, ErrorKind::InvalidInput, "need 0 < k' < k");
  require(opt.windows.size() >= 3, ErrorKind::InvalidInput, "screening needs at least three window scales");
  SearchReport r;
  r.question = "fractal-rect";
  r.params = {{"k", opt.k}, {"k_prime", opt.k_prime}, {"windows", opt.windows}, {"patterns", opt.patterns.size()},
              {"b_family", opt.b_family.size()}};
  r.notes.push_back("finite-window proxies cannot settle an asymptotic statement; the verdict is inconclusive");
  const std::int64_t wmax = *std::max_element(opt.windows.begin(), opt.windows.end());
  for (std::size_t pi = 0; pi < opt.patterns.size(); ++pi) {
    const FractalSpec& spec = opt.patterns[pi];
    const std::int64_t side = std::max(wmax, spec.side(spec.depth()));
    const PointSet2 a_full = generate(spec, spec.depth(), Window(side, side));
    for (std::size_t bi = 0; bi < opt.b_family.size(); ++bi) {
      std::size_t failures = 0;
      nlohmann::json scales = nlohmann::json::array();
      for (auto s : opt.windows) {
        const Window w(s, s);
        const PointSet2 a = a_full.resized(w);
        PointSet2 b(w);
        for (const auto& p : opt.b_family[bi])
          if (w.contains(p.x, p.y)) b.insert(p);
        require(b.contains(0, 0), ErrorKind::InvalidInput, "every B must contain the origin");
        const PointSet2 kb = iterated_sumset(b, opt.k, w);
        const PointSet2 sum = sumset(a, iterated_sumset(b, opt.k_prime, w), w);
        const Rational pa = rect_proxy(a, s), pk = rect_proxy(kb, s), ps = rect_proxy(sum, s);
        const bool holds = pow(ps, opt.k) >= pow(pa, opt.k - opt.k_prime) * pow(pk, opt.k_prime);
        failures += !holds;
        scales.push_back({{"window", s},
                          {"proxy_A", to_string(pa)},
                          {"proxy_kB", to_string(pk)},
                          {"proxy_sum", to_string(ps)},
                          {"holds", holds}});
      }
      ++r.instances;
      if (failures == opt.windows.size())
        r.violations.push_back({{"pattern", points_to_json(spec.pattern)},
                                {"n", spec.n},
                                {"B", points_to_json(opt.b_family[bi])},
                                {"scales", scales},
                                {"persistent", true}});
    }
  }
  r.cursor = r.instances;
  r.complete = true;
  r.verdict = Verdict::Inconclusive;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace plk
