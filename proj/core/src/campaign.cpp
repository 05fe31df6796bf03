#include "plk/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "plk/density.hpp"
#include "plk/error.hpp"
#include "plk/io.hpp"
#include "plk/magnification.hpp"
#include "plk/sumset.hpp"

namespace plk {

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

bool CampaignReport::clean() const {
  return std::all_of(families.begin(), families.end(), [](const FamilyReport& f) { return f.violations.empty(); });
}

std::string CampaignReport::to_jsonl() const {
  std::string out;
  out += nlohmann::json{{"type", "campaign"}, {"config_hash", config_hash}, {"seed", seed}}.dump() + "\n";
  for (const auto& f : families)
    out += nlohmann::json{{"type", "family"},
                          {"name", f.name},
                          {"params", f.params},
                          {"count", f.count},
                          {"passed", f.passed},
                          {"violations", f.violations},
                          {"extra", f.extra}}
               .dump() +
           "\n";
  return out;
}

namespace {

using Rng = std::mt19937_64;

struct Outcome {
  bool pass = true;
  nlohmann::json payload;
  nlohmann::json tags = nlohmann::json::object();
};

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// `count` distinct points of [0,w) x [0,h), starting from the origin when asked.
PointSet2 random_set(Rng& rng, Window win, std::int64_t w, std::int64_t h, std::int64_t count,
                     bool with_origin = false) {
  std::vector<Point> cells;
  for (std::int64_t y = 0; y < h; ++y)
    for (std::int64_t x = 0; x < w; ++x) cells.push_back({x, y});
  std::shuffle(cells.begin(), cells.end(), rng);
  PointSet2 s(win);
  if (with_origin) s.insert(0, 0);
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(cells.size()) && s.count() < count; ++i) s.insert(cells[i]);
  return s;
}

nlohmann::json instance_json(const MagnificationInstance& inst) {
  return {{"window", {inst.window().W, inst.window().H}},
          {"mode", inst.mode == GroupMode::Lattice ? "lattice" : "cyclic"},
          {"A", points_to_json(inst.a.points())},
          {"B", points_to_json(inst.b.points())},
          {"C", points_to_json(inst.c.points())}};
}

template <class T>
T opt(const nlohmann::json& j, const char* key, T def) {
  return j.contains(key) ? j.at(key).get<T>() : def;
}

Outcome magnification_family(Rng& rng, const nlohmann::json& p) {
  const auto max_size = opt<std::int64_t>(p, "max_size", 8);
  const auto n_max = opt<unsigned>(p, "n_max", 4);
  const bool cyclic = opt<std::string>(p, "mode", "lattice") == "cyclic";
  const auto window = opt<std::int64_t>(p, "window", cyclic ? 7 : 32);
  const Window w(window, window);
  const std::int64_t side = cyclic ? window : std::max<std::int64_t>(1, window / (n_max + 2));
  MagnificationInstance inst{random_set(rng, w, side, side, uniform(rng, 1, max_size)),
                             random_set(rng, w, side, side, uniform(rng, 1, max_size)),
                             random_set(rng, w, side, side, uniform(rng, 0, max_size)),
                             cyclic ? GroupMode::Cyclic : GroupMode::Lattice};
  const MonotoneReport rep = check_root_monotone(inst, n_max);
  Outcome o;
  o.pass = rep.ok();
  if (!o.pass) {
    o.payload = instance_json(inst);
    nlohmann::json d = nlohmann::json::array();
    for (const auto& x : rep.d) d.push_back(to_string(x));
    o.payload["D"] = d;
    o.payload["violations"] = rep.violations;
  }
  return o;
}

Outcome heavy_family(Rng& rng, const nlohmann::json& p) {
  const auto max_size = opt<std::int64_t>(p, "max_size", 10);
  const auto window = opt<std::int64_t>(p, "window", 24);
  const auto k_max = opt<unsigned>(p, "k_max", 3);
  const auto compare_up_to = opt<std::int64_t>(p, "compare_up_to", 10);
  const auto deltas = opt<std::vector<std::string>>(p, "deltas", {"1/4", "1/2", "3/4"});
  const unsigned k = static_cast<unsigned>(uniform(rng, 2, k_max));
  const unsigned kp = static_cast<unsigned>(uniform(rng, 1, k - 1));
  const Surd delta(parse_rational(deltas[static_cast<std::size_t>(uniform(rng, 0, deltas.size() - 1))]));
  const Window w(window, window);
  const std::int64_t side = std::max<std::int64_t>(1, window / (k + 2));
  MagnificationInstance inst{random_set(rng, w, side, side, uniform(rng, 1, max_size)),
                             random_set(rng, w, side, side, uniform(rng, 1, max_size), true),
                             random_set(rng, w, side, side, uniform(rng, 0, max_size)), GroupMode::Lattice};
  Outcome o;
  // delta_heavy throws ContractFailure (with its payload) when the contract breaks.
  auto run = [&](HeavyMode mode) {
    const auto r = delta_heavy(inst, kp, k, delta, mode);
    return r.heavy && r.bound;
  };
  const bool greedy = run(HeavyMode::Greedy);
  o.pass = greedy;
  o.tags["k"] = k;
  if (inst.a.count() <= compare_up_to) {
    const bool brute = run(HeavyMode::Brute);
    o.tags["compared"] = true;
    o.tags["agree"] = brute == greedy;
    o.pass = o.pass && brute;
  }
  if (!o.pass) {
    o.payload = instance_json(inst);
    o.payload["k"] = k;
    o.payload["k_prime"] = kp;
    o.payload["delta"] = delta.to_string();
  }
  return o;
}

Outcome cardinality_family(Rng& rng, const nlohmann::json& p) {
  const auto max_size = opt<std::int64_t>(p, "max_size", 8);
  const auto window = opt<std::int64_t>(p, "window", 32);
  const auto k_max = opt<unsigned>(p, "k_max", 3);
  const unsigned k = static_cast<unsigned>(uniform(rng, 1, k_max));
  const Window w(window, window);
  const std::int64_t side = std::max<std::int64_t>(1, window / (k + 1));
  const PointSet2 a = random_set(rng, w, side, side, uniform(rng, 1, max_size));
  const PointSet2 b = random_set(rng, w, side, side, uniform(rng, 1, max_size));
  const Integer ab = sumset(a, b, w).count(), kb = iterated_sumset(b, k, w).count();
  Outcome o;
  Integer lhs, rhs, ca = a.count();
  mpz_pow_ui(lhs.get_mpz_t(), ab.get_mpz_t(), k);
  mpz_pow_ui(rhs.get_mpz_t(), ca.get_mpz_t(), k - 1);
  rhs *= kb;
  o.pass = lhs >= rhs;
  if (!o.pass) o.payload = {{"A", points_to_json(a.points())}, {"B", points_to_json(b.points())}, {"k", k}};
  return o;
}

Outcome schnirelmann_family(Rng& rng, const nlohmann::json& p) {
  const auto len = opt<std::int64_t>(p, "length", 24);
  const auto k_max = opt<unsigned>(p, "k_max", 3);
  require(k_max >= 2, ErrorKind::InvalidInput, "schnirelmann family needs k_max >= 2");
  // k = 1 would read sigma(A)^0 = 1 and demand 0 in A.
  const unsigned k = static_cast<unsigned>(uniform(rng, 2, k_max));
  const Window w(len, 1);
  PointSet2 a(w), b(w);
  const double pa = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
  const double pb = std::uniform_real_distribution<double>(0.05, 0.6)(rng);
  std::bernoulli_distribution da(pa), db(pb);
  for (std::int64_t x = 0; x < len; ++x) {
    if (da(rng)) a.insert(x, 0);
    if (x == 0 || db(rng)) b.insert(x, 0);
  }
  const Rational sa = schnirelmann_1d(project_1d(a));
  const Rational sb = schnirelmann_1d(project_1d(iterated_sumset(b, k, w)));
  const Rational ss = schnirelmann_1d(project_1d(sumset(a, b, w)));
  Outcome o;
  o.pass = pow(ss, k) >= pow(sa, k - 1) * sb;
  if (!o.pass)
    o.payload = {{"A", points_to_json(a.points())}, {"B", points_to_json(b.points())}, {"k", k},
                 {"sigma_A", to_string(sa)}, {"sigma_kB", to_string(sb)}, {"sigma_sum", to_string(ss)}};
  return o;
}

}  // namespace

CampaignReport verify_campaign(const nlohmann::json& config, unsigned threads) {
  CampaignReport rep;
  rep.config_hash = hex64(fnv1a(config.dump()));
  rep.seed = opt<std::uint64_t>(config, "seed", 1);
  if (!config.contains("families")) return rep;
  threads = std::max(1u, threads);
  std::uint64_t fam_index = 0;
  for (const auto& fam : config.at("families")) {
    FamilyReport fr;
    fr.name = fam.at("name").get<std::string>();
    fr.params = fam;
    fr.count = opt<std::int64_t>(fam, "count", 0);
    Outcome (*fn)(Rng&, const nlohmann::json&) = nullptr;
    if (fr.name == "cardinality") fn = cardinality_family;
    else if (fr.name == "schnirelmann") fn = schnirelmann_family;
    else if (fr.name == "magnification") fn = magnification_family;
    else if (fr.name == "heavy-subset") fn = heavy_family;
    else fail(ErrorKind::InvalidInput, "unknown family " + fr.name);

    std::vector<Outcome> results(static_cast<std::size_t>(fr.count));
    std::atomic<std::int64_t> next{0};
    std::atomic<bool> abort{false};
    std::mutex err_mu;
    std::string err;
    ErrorKind err_kind = ErrorKind::ContractFailure;
    const std::uint64_t fam_seed = mix_seed(rep.seed ^ mix_seed(fam_index));
    auto worker = [&] {
      for (;;) {
        const std::int64_t i = next++;
        if (i >= fr.count || abort) return;
        Rng rng(mix_seed(fam_seed + static_cast<std::uint64_t>(i)));
        try {
          results[static_cast<std::size_t>(i)] = fn(rng, fam);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!abort) {
            err = fr.name + " instance " + std::to_string(i) + ": " + e.what();
            if (const auto* pe = dynamic_cast<const Error*>(&e)) err_kind = pe->kind();
          }
          abort = true;
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (abort) fail(err_kind, err);

    std::int64_t compared = 0, agreed = 0;
    for (std::int64_t i = 0; i < fr.count; ++i) {
      const Outcome& o = results[static_cast<std::size_t>(i)];
      if (o.pass) {
        ++fr.passed;
      } else {
        nlohmann::json v = o.payload;
        v["index"] = i;
        fr.violations.push_back(v);
      }
      if (o.tags.contains("compared")) {
        ++compared;
        agreed += o.tags.at("agree").get<bool>();
      }
    }
    if (fr.name == "heavy-subset") fr.extra = {{"compared", compared}, {"agreed", agreed}};
    rep.families.push_back(std::move(fr));
    ++fam_index;
  }
  return rep;
}

}  // namespace plk
