#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "plk/campaign.hpp"
#include "plk/density.hpp"
#include "plk/error.hpp"
#include "plk/fractal.hpp"
#include "plk/io.hpp"
#include "plk/magnification.hpp"
#include "plk/pipeline.hpp"
#include "plk/search.hpp"
#include "plk/sumset.hpp"
#include "plk/tiling.hpp"
#include "plk/trimming.hpp"

using nlohmann::json;
using namespace plk;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolation = 2;

// Inline JSON when the argument starts with '{' or '[', a file path otherwise.
json load(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    try {
      return json::parse(arg);
    } catch (const json::parse_error& e) {
      fail(ErrorKind::InvalidInput, std::string("inline JSON: ") + e.what());
    }
  }
  return read_json_file(arg);
}

// "x,y;x,y;..." or JSON.
std::vector<Point> parse_points(const std::string& arg) {
  if (arg.find('[') != std::string::npos || arg.find('{') != std::string::npos) {
    const json j = load(arg);
    return points_from_json(j.is_object() ? j.at("points") : j);
  }
  std::vector<Point> out;
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto comma = item.find(',');
    require(comma != std::string::npos, ErrorKind::InvalidInput, "point '" + item + "' must be x,y");
    out.push_back({std::stoll(item.substr(0, comma)), std::stoll(item.substr(comma + 1))});
  }
  return out;
}

void emit(const json& j, const std::string& out = "") {
  if (out.empty())
    std::cout << j.dump() << '\n';
  else
    write_text_file(out, j.dump(2) + "\n");
}

MagnificationInstance load_instance(const std::string& arg) {
  const json j = load(arg);
  MagnificationInstance inst{PointSet2(1, 1), PointSet2(1, 1), PointSet2(1, 1)};
  require(j.contains("window"), ErrorKind::InvalidInput, "instance needs \"window\": [W,H]");
  const Window w(j.at("window").at(0).get<std::int64_t>(), j.at("window").at(1).get<std::int64_t>());
  auto set = [&](const char* key) {
    return PointSet2::from_points(w, j.contains(key) ? points_from_json(j.at(key)) : std::vector<Point>{});
  };
  inst.a = set("A");
  inst.b = set("B");
  inst.c = set("C");
  inst.mode = j.value("mode", std::string("lattice")) == "cyclic" ? GroupMode::Cyclic : GroupMode::Lattice;
  inst.validate();
  return inst;
}

json rationals(const std::vector<Rational>& v) {
  json j = json::array();
  for (const auto& r : v) j.push_back(to_string(r));
  return j;
}

CellField cell_field(const json& j, const Tableau& shape, const char* what) {
  require(j.is_array() && static_cast<std::int64_t>(j.size()) == shape.width(), ErrorKind::InvalidInput,
          std::string(what) + " needs one array per column");
  CellField f(static_cast<std::size_t>(shape.width()));
  for (std::int64_t x = 0; x < shape.width(); ++x) {
    const json& col = j.at(static_cast<std::size_t>(x));
    require(static_cast<std::int64_t>(col.size()) == shape.column_height(x), ErrorKind::InvalidInput,
            std::string(what) + " column " + std::to_string(x) + " has the wrong height");
    for (const auto& v : col) f[x].push_back(parse_rational(v.is_string() ? v.get<std::string>() : v.dump()));
  }
  return f;
}

json field_json(const CellField& f) {
  json j = json::array();
  for (const auto& col : f) j.push_back(rationals(col));
  return j;
}

// ---- subcommands ----

struct DensityArgs {
  std::string set, pattern, out;
  std::int64_t depth = 0, L = 1, R = 1, stride = 1, sigma_n = -1, sigma_m = -1, m_param = -1;
  std::int64_t window = 0;
  std::string a_residues, b_residues;
  std::int64_t a_period = 0, b_period = 0;
};

int cmd_density(const DensityArgs& o) {
  json j;
  if (o.a_period > 0 || o.b_period > 0) {
    require(o.a_period > 0 && o.b_period > 0 && o.window > 0, ErrorKind::InvalidInput,
            "a product check needs --a-period, --b-period and --window");
    PeriodicSet1 a, b;
    a.period = o.a_period;
    b.period = o.b_period;
    std::stringstream ra(o.a_residues.empty() ? "0" : o.a_residues), rb(o.b_residues.empty() ? "0" : o.b_residues);
    std::string tok;
    while (std::getline(ra, tok, ',')) a.residues.push_back(std::stoll(tok));
    while (std::getline(rb, tok, ',')) b.residues.push_back(std::stoll(tok));
    const ProductReport rep = product_density_check(a, b, o.L, o.R, o.window, o.stride);
    j = {{"estimate", to_string(rep.estimate)},
         {"expected", to_string(rep.expected)},
         {"gap", to_string(rep.gap)},
         {"within_1_over_R", rep.gap <= rat(1, o.R)},
         {"witness", to_json(rep.witness)}};
    emit(j, o.out);
    return kExitOk;
  }
  std::optional<PointSet2> set;
  if (!o.pattern.empty()) {
    const json pj = load(o.pattern);
    const auto n = pj.at("n").get<std::int64_t>();
    const auto pts = points_from_json(pj.at("points"));
    j["rect_formula"] = to_string(rect_density_formula(pts, n));
    j["tab_formula"] = to_string(tab_density_formula(pts, n, o.m_param));
    if (o.depth > 0) {
      const FractalSpec spec = pattern_from_json(pj, o.depth);
      const std::int64_t side = std::max(o.window, spec.side(o.depth));
      set = generate(spec, o.depth, Window(side, side));
    }
  } else if (!o.set.empty()) {
    set = point_set_from_json(load(o.set));
  } else {
    fail(ErrorKind::InvalidInput, "give --set, --pattern or a periodic product");
  }
  if (set) {
    j["window"] = {set->width(), set->height()};
    j["count"] = set->count();
    const TabEstimate est = tab_lower_estimate(*set, o.R, o.L, o.stride);
    j["tab_estimate"] = {{"L", o.L},
                         {"R", o.R},
                         {"stride", o.stride},
                         {"value", to_string(est.value)},
                         {"approx", to_double(est.value)},
                         {"candidates", est.candidates},
                         {"witness", to_json(est.witness)}};
    if (o.sigma_n >= 0) {
      const std::int64_t m = o.sigma_m >= 0 ? o.sigma_m : o.sigma_n;
      j["sigma"] = {{"N", o.sigma_n}, {"M", m}, {"value", to_string(schnirelmann_2d(*set, o.sigma_n, m))}};
    }
  }
  emit(j, o.out);
  return kExitOk;
}

struct FractalArgs {
  std::string pattern, pgm, out;
  std::int64_t depth = 1;
};

int cmd_fractal(const FractalArgs& o) {
  const json pj = load(o.pattern);
  const FractalSpec spec = pattern_from_json(pj, o.depth);
  const PointSet2 a = generate(spec, o.depth);
  if (!o.pgm.empty()) write_pgm(o.pgm, a);
  json j{{"n", spec.n},
         {"pattern", points_to_json(spec.pattern)},
         {"schedule", spec.schedule},
         {"side", spec.side(o.depth)},
         {"count", a.count()},
         {"rect_formula", to_string(rect_density_formula(spec.pattern, spec.n))},
         {"tab_formula", to_string(tab_density_formula(spec.pattern, spec.n))}};
  if (!o.out.empty()) j["set"] = to_json(a);
  emit(j, o.out);
  return kExitOk;
}

struct MagnifyArgs {
  std::string instance;
  unsigned n = 1, monotone = 0, threads = 1;
  bool flow = false;
};

int cmd_magnify(const MagnifyArgs& o) {
  const MagnificationInstance inst = load_instance(o.instance);
  if (o.monotone > 0) {
    const MonotoneReport rep = check_root_monotone(inst, o.monotone);
    emit({{"D", rationals(rep.d)}, {"violations", rep.violations}, {"monotone", rep.ok()}});
    return rep.ok() ? kExitOk : kExitViolation;
  }
  const MagnificationResult r = o.flow ? magnification_flow(inst, o.n) : magnification(inst, o.n,
                                                                                       kDefaultSubsetGuard, o.threads);
  emit({{"n", o.n},
        {"route", o.flow ? "flow" : "enumeration"},
        {"D", to_string(r.d)},
        {"witness", points_to_json(r.witness)},
        {"subsets", r.subsets}});
  return kExitOk;
}

struct HeavyArgs {
  std::string instance, delta = "1/2", mode = "greedy";
  unsigned k = 2, k_prime = 1;
};

int cmd_delta_heavy(const HeavyArgs& o) {
  const MagnificationInstance inst = load_instance(o.instance);
  const DeltaHeavyResult r = delta_heavy(inst, o.k_prime, o.k, Surd(parse_rational(o.delta)),
                                         o.mode == "brute" ? HeavyMode::Brute : HeavyMode::Greedy);
  std::cout << r.to_json() << '\n';
  return r.heavy && r.bound ? kExitOk : kExitViolation;
}

struct TrimArgs {
  std::string input, verify = "auto";
};

int cmd_trim(const TrimArgs& o) {
  const json j = load(o.input);
  const Tableau shape = Tableau::from_profile(j.at("profile").get<Profile>());
  WeightedTableau wt = make_weighted(shape, cell_field(j.at("rho"), shape, "rho"));
  if (j.contains("mu")) wt.mu = cell_field(j.at("mu"), shape, "mu");
  wt.validate();
  const AlphaResult alpha = max_alpha(wt);
  const TrimOutput out = trim(wt, alpha.alpha);
  const VerifyMode vm = o.verify == "exhaustive" ? VerifyMode::Exhaustive
                        : o.verify == "dp"       ? VerifyMode::Dp
                                                 : VerifyMode::Auto;
  const TrimCheck check = check_trim(wt, alpha.alpha, out.rho_prime, vm);
  json trace = json::array();
  for (const auto& t : out.s_max_trace) trace.push_back(t.profile());
  emit({{"alpha", to_string(alpha.alpha)},
        {"alpha_witness", alpha.witness.profile()},
        {"rho_prime", field_json(out.rho_prime)},
        {"s_max_trace", trace},
        {"check", {{"below", check.below}, {"average", check.average}, {"upper", check.upper}}}});
  return check.ok() ? kExitOk : kExitViolation;
}

struct TileArgs {
  std::string region, points, svg, out;
  std::int64_t q = 2;
  double scale = 4.0;
};

int cmd_tile(const TileArgs& o) {
  const json rj = load(o.region);
  const TableauRegion f = rj.is_object() ? region_from_json(rj) : TableauRegion(points_from_json(rj));
  const TilingContext ctx = TilingContext::build(DTableauRegion(f, o.q * o.q), o.q);
  json j = json::parse(ctx.to_json());
  const BadRegion bad = bad_regions(ctx);
  j["bad"] = {{"rows_union", bad.rows_union},
              {"total_union", bad.total_union},
              {"rows_bound", bad.rows_bound},
              {"cols_exact", bad.cols_exact}};
  bool ok = bad.rows_bound && bad.cols_exact;
  std::optional<PointSet2> pts;
  std::optional<StaircaseResult> st;
  if (!o.points.empty()) {
    const json pj = load(o.points);
    pts = pj.is_object() ? point_set_from_json(pj)
                         : PointSet2::from_points(Window(f.width(), f.height()), points_from_json(pj));
    if (pts->window() != Window(f.width(), f.height())) *pts = pts->resized(Window(f.width(), f.height()));
    st = staircase(ctx, *pts);
    j["staircase"] = {{"points", points_to_json(st->points)},
                      {"s_measure", st->s_measure},
                      {"g_measure", st->g_measure},
                      {"hull_excess", st->hull.excess},
                      {"max_boundary_cells", st->hull.max_boundary_cells},
                      {"hull_bound", st->hull.bound},
                      {"gaps", st->gaps},
                      {"inside", st->inside},
                      {"disjoint", st->disjoint},
                      {"bound", st->bound},
                      {"tight", st->tight}};
    ok = ok && st->hull.bound && st->gaps && st->inside && st->disjoint && st->bound;
  }
  if (!o.svg.empty()) {
    SvgLayers layers;
    layers.bad = &bad;
    if (pts) {
      layers.points = &*pts;
      layers.s_complement = &st->s_complement;
      layers.hull = &st->hull;
      layers.stairs = &*st;
    }
    write_text_file(o.svg, render_svg(ctx, layers, o.scale));
  }
  emit(j, o.out);
  return ok ? kExitOk : kExitViolation;
}

struct PipelineArgs {
  std::string a, pattern, b, region, out, alpha, kb_density, mode = "greedy";
  std::int64_t depth = 3, L = 2, q = 8;
  unsigned k = 2, k_prime = 1;
};

int cmd_pipeline(const PipelineArgs& o) {
  PipelineInput in;
  in.f = [&] {
    const json rj = load(o.region);
    return rj.is_object() ? region_from_json(rj) : TableauRegion(points_from_json(rj));
  }();
  const Window w(in.f.width(), in.f.height());
  if (!o.pattern.empty()) {
    const FractalSpec spec = pattern_from_json(load(o.pattern), o.depth);
    const std::int64_t side = std::max({spec.side(o.depth), w.W, w.H});
    in.a = generate(spec, o.depth, Window(side, side)).resized(w);
  } else {
    require(!o.a.empty(), ErrorKind::InvalidInput, "give --a or --pattern");
    in.a = point_set_from_json(load(o.a)).resized(w);
  }
  in.b = PointSet2::from_points(w, parse_points(o.b));
  in.k = o.k;
  in.k_prime = o.k_prime;
  in.L = o.L;
  in.q = o.q;
  if (!o.alpha.empty()) in.alpha = parse_rational(o.alpha);
  if (!o.kb_density.empty()) in.kb_density = parse_rational(o.kb_density);
  in.mode = o.mode == "brute" ? HeavyMode::Brute : HeavyMode::Greedy;
  const PipelineTrace t = pipeline_replay(in);
  const std::string text = t.to_json();
  if (o.out.empty())
    std::cout << text << '\n';
  else
    write_text_file(o.out, text + "\n");
  return t.ok() ? kExitOk : kExitViolation;
}

struct SearchArgs {
  std::string kind = "box", mode = "exhaustive", out, config;
  std::int64_t n = 1, m = 1;
  unsigned k = 2, k_prime = 1;
  std::uint64_t budget = 0, cursor = 0, seed = 1;
};

int cmd_search(const SearchArgs& o) {
  SearchReport r;
  if (o.kind == "box") {
    BoxSearchOptions opt;
    opt.n = o.n;
    opt.m = o.m;
    opt.k = o.k;
    opt.k_prime = o.k_prime;
    opt.mode = o.mode == "random" ? SearchMode::Random : SearchMode::Exhaustive;
    opt.budget = o.budget;
    opt.cursor = o.cursor;
    opt.seed = o.seed;
    r = search_box_sigma(opt);
  } else {
    require(!o.config.empty(), ErrorKind::InvalidInput, "fractal screening needs --config");
    const json cfg = load(o.config);
    FractalScreenOptions opt;
    opt.k = cfg.value("k", o.k);
    opt.k_prime = cfg.value("k_prime", o.k_prime);
    opt.windows = cfg.at("windows").get<std::vector<std::int64_t>>();
    for (const auto& p : cfg.at("patterns")) opt.patterns.push_back(pattern_from_json(p, p.value("depth", 3)));
    const std::int64_t wmax = *std::max_element(opt.windows.begin(), opt.windows.end());
    for (const auto& b : cfg.at("b_family")) {
      if (b.is_string() && b.get<std::string>() == "axes") {
        // {0} x [0,w) ∪ [0,w) x {0}: a basis of order 2 on every window.
        std::vector<Point> axes;
        for (std::int64_t t = 0; t < wmax; ++t) {
          axes.push_back({t, 0});
          if (t > 0) axes.push_back({0, t});
        }
        opt.b_family.push_back(axes);
      } else {
        opt.b_family.push_back(points_from_json(b));
      }
    }
    r = search_fractal_rect(opt);
  }
  const std::string text = r.to_jsonl();
  if (o.out.empty())
    std::cout << text;
  else
    write_text_file(o.out, text);
  return exit_code(r.verdict);
}

struct VerifyArgs {
  std::string config, out;
  unsigned threads = 1;
};

int cmd_verify(const VerifyArgs& o) {
  const CampaignReport r = verify_campaign(load(o.config), o.threads);
  const std::string text = r.to_jsonl();
  if (o.out.empty())
    std::cout << text;
  else
    write_text_file(o.out, text);
  return r.clean() ? kExitOk : kExitViolation;
}

struct RenderArgs {
  std::string set, pattern, out, op = "none", b;
  std::int64_t depth = 1;
  unsigned k = 1;
};

int cmd_render(const RenderArgs& o) {
  PointSet2 s(1, 1);
  if (!o.pattern.empty())
    s = generate(pattern_from_json(load(o.pattern), o.depth), o.depth);
  else
    s = point_set_from_json(load(o.set));
  if (o.op == "sumset") {
    const PointSet2 b = PointSet2::from_points(s.window(), parse_points(o.b));
    s = sumset(s, iterated_sumset(b, o.k, s.window()), s.window());
  } else if (o.op == "iterate") {
    s = iterated_sumset(s, o.k, s.window());
  }
  write_pgm(o.out, s);
  emit({{"out", o.out}, {"window", {s.width(), s.height()}}, {"count", s.count()}});
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plünnecke-type density toolkit on N^2"};
  app.require_subcommand(1);
  int rc = kExitOk;
  auto guard = [&rc](auto fn) {
    return [&rc, fn] { rc = fn(); };
  };

  DensityArgs da;
  auto* density = app.add_subcommand("density", "Tab(L) and Schnirelmann estimates, formulas, product checks");
  density->add_option("--set", da.set, "point set JSON (file or inline)");
  density->add_option("--pattern", da.pattern, "fractal pattern JSON");
  density->add_option("--depth", da.depth, "fractal depth; 0 prints only the formulas");
  density->add_option("--L", da.L, "number of corner rectangles")->check(CLI::PositiveNumber);
  density->add_option("--R", da.R, "side floor of the candidate regions")->check(CLI::NonNegativeNumber);
  density->add_option("--stride", da.stride, "corner grid stride")->check(CLI::PositiveNumber);
  density->add_option("--window", da.window, "window side for products and fractals");
  density->add_option("--sigma-n", da.sigma_n, "also report sigma_{N,M}");
  density->add_option("--sigma-m", da.sigma_m);
  density->add_option("--box-m", da.m_param, "M of the tableau formula box (default N)");
  density->add_option("--a-period", da.a_period, "period of the first factor");
  density->add_option("--a-residues", da.a_residues, "comma separated residues");
  density->add_option("--b-period", da.b_period);
  density->add_option("--b-residues", da.b_residues);
  density->add_option("--out", da.out);
  density->callback(guard([&] { return cmd_density(da); }));

  FractalArgs fa;
  auto* fractal = app.add_subcommand("fractal", "Generate a fractal set and its exact densities");
  fractal->add_option("--pattern", fa.pattern)->required();
  fractal->add_option("--depth", fa.depth)->check(CLI::PositiveNumber);
  fractal->add_option("--pgm", fa.pgm, "write the set as a PGM image");
  fractal->add_option("--out", fa.out, "write a JSON report including the point list");
  fractal->callback(guard([&] { return cmd_fractal(fa); }));

  MagnifyArgs ma;
  auto* magnify = app.add_subcommand("magnify", "Magnification ratio D_n of a finite instance");
  magnify->add_option("--instance", ma.instance)->required();
  magnify->add_option("--n", ma.n)->check(CLI::PositiveNumber);
  magnify->add_option("--monotone", ma.monotone, "check D_n^(1/n) monotone up to this n");
  magnify->add_flag("--flow", ma.flow, "use parametric min cuts instead of enumeration");
  magnify->add_option("--threads", ma.threads);
  magnify->callback(guard([&] { return cmd_magnify(ma); }));

  HeavyArgs ha;
  auto* heavy = app.add_subcommand("delta-heavy", "Heavy subset for the truncated growth bound");
  heavy->add_option("--instance", ha.instance)->required();
  heavy->add_option("--k", ha.k);
  heavy->add_option("--k-prime", ha.k_prime);
  heavy->add_option("--delta", ha.delta);
  heavy->add_option("--mode", ha.mode)->check(CLI::IsMember({"greedy", "brute"}));
  heavy->callback(guard([&] { return cmd_delta_heavy(ha); }));

  TrimArgs ta;
  auto* trim_cmd = app.add_subcommand("trim", "Trim a weighted tableau down to its minimal average");
  trim_cmd->add_option("--input", ta.input, "{\"profile\":[..],\"rho\":[[..]],\"mu\":[[..]]}")->required();
  trim_cmd->add_option("--verify", ta.verify)->check(CLI::IsMember({"auto", "exhaustive", "dp"}));
  trim_cmd->callback(guard([&] { return cmd_trim(ta); }));

  TileArgs ti;
  auto* tile = app.add_subcommand("tile", "Refined Q^2 tiling, bad regions and staircase of a region");
  tile->add_option("--region", ti.region, "{\"corners\":[[N,M],..]} with corners divisible by Q^2")->required();
  tile->add_option("--q", ti.q)->check(CLI::Range(2, 64));
  tile->add_option("--points", ti.points, "point set whose upper set defines S");
  tile->add_option("--svg", ti.svg);
  tile->add_option("--scale", ti.scale);
  tile->add_option("--out", ti.out);
  tile->callback(guard([&] { return cmd_tile(ti); }));

  PipelineArgs pa;
  auto* pipeline = app.add_subcommand("pipeline", "Replay the density chain on one finite instance");
  pipeline->add_option("--a", pa.a, "point set JSON");
  pipeline->add_option("--pattern", pa.pattern, "fractal pattern JSON, used instead of --a");
  pipeline->add_option("--depth", pa.depth);
  pipeline->add_option("--b", pa.b, "points of B as x,y;x,y or JSON")->required();
  pipeline->add_option("--region", pa.region, "the Følner term F")->required();
  pipeline->add_option("--k", pa.k);
  pipeline->add_option("--k-prime", pa.k_prime);
  pipeline->add_option("--L", pa.L);
  pipeline->add_option("--q", pa.q);
  pipeline->add_option("--alpha", pa.alpha, "override the density used in the Q-size condition");
  pipeline->add_option("--kb-density", pa.kb_density, "reference Tab(L) density of kB");
  pipeline->add_option("--mode", pa.mode)->check(CLI::IsMember({"greedy", "brute"}));
  pipeline->add_option("--out", pa.out);
  pipeline->callback(guard([&] { return cmd_pipeline(pa); }));

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Counterexample search; exit 0 clean, 2 violation, 3 inconclusive");
  search->add_option("kind", sa.kind, "box | fractal")->check(CLI::IsMember({"box", "fractal"}));
  search->add_option("--n", sa.n);
  search->add_option("--m", sa.m);
  search->add_option("--k", sa.k);
  search->add_option("--k-prime", sa.k_prime);
  search->add_option("--mode", sa.mode)->check(CLI::IsMember({"exhaustive", "random"}));
  search->add_option("--budget", sa.budget);
  search->add_option("--cursor", sa.cursor, "resume from this instance index");
  search->add_option("--seed", sa.seed);
  search->add_option("--config", sa.config, "fractal screening config");
  search->add_option("--out", sa.out);
  search->callback(guard([&] { return cmd_search(sa); }));

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Seeded verification campaign over random instance families");
  verify->add_option("--config", va.config)->required();
  verify->add_option("--threads", va.threads);
  verify->add_option("--out", va.out);
  verify->callback(guard([&] { return cmd_verify(va); }));

  RenderArgs ra;
  auto* render = app.add_subcommand("render", "Render a set, a fractal or a sumset to PGM");
  render->add_option("--set", ra.set);
  render->add_option("--pattern", ra.pattern);
  render->add_option("--depth", ra.depth);
  render->add_option("--op", ra.op)->check(CLI::IsMember({"none", "sumset", "iterate"}));
  render->add_option("--b", ra.b, "B for --op sumset");
  render->add_option("--k", ra.k);
  render->add_option("--out", ra.out)->required();
  render->callback(guard([&] { return cmd_render(ra); }));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    const std::string text = json{{"error", to_string(e.kind())}, {"message", e.what()}}.dump();
    if (e.kind() == ErrorKind::ContractFailure) {
      std::cout << text << '\n';
      return kExitViolation;
    }
    std::cerr << text << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << '\n';
    return kExitError;
  }
  return rc;
}
