#include "plk/flow.hpp"

#include <algorithm>
#include <deque>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boykov_kolmogorov_max_flow.hpp>

#include "plk/error.hpp"

namespace plk {

namespace {

using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
using Graph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::directedS,
    boost::property<boost::vertex_index_t, long,
                    boost::property<boost::vertex_color_t, boost::default_color_type,
                                    boost::property<boost::vertex_distance_t, long,
                                                    boost::property<boost::vertex_predecessor_t,
                                                                    Traits::edge_descriptor>>>>,
    boost::property<boost::edge_capacity_t, long long,
                    boost::property<boost::edge_residual_capacity_t, long long,
                                    boost::property<boost::edge_reverse_t, Traits::edge_descriptor>>>>;

struct Network {
  Graph g;
  std::size_t s = 0, t = 0;

  explicit Network(std::size_t n) : g(n) {}

  void arc(std::size_t u, std::size_t v, long long cap) {
    auto cap_map = boost::get(boost::edge_capacity, g);
    auto rev_map = boost::get(boost::edge_reverse, g);
    auto e = boost::add_edge(u, v, g).first;
    auto r = boost::add_edge(v, u, g).first;
    cap_map[e] = cap;
    cap_map[r] = 0;
    rev_map[e] = r;
    rev_map[r] = e;
  }

  long long solve() { return boykov_kolmogorov_max_flow(g, s, t); }

  // Vertices that cannot reach t in the residual graph are on the source side
  // of the maximal min cut.
  std::vector<bool> maximal_source_side() const {
    std::size_t n = boost::num_vertices(g);
    auto res = boost::get(boost::edge_residual_capacity, g);
    auto rev = boost::get(boost::edge_reverse, g);
    std::vector<bool> reaches_t(n, false);
    std::deque<std::size_t> q{t};
    reaches_t[t] = true;
    // u reaches t if some arc u->v with residual > 0 and v reaches t; scan reverse arcs of v.
    while (!q.empty()) {
      std::size_t v = q.front();
      q.pop_front();
      for (auto [it, end] = boost::out_edges(v, g); it != end; ++it) {
        auto e_back = rev[*it];  // arc u -> v
        std::size_t u = boost::target(*it, g);
        if (!reaches_t[u] && res[e_back] > 0) {
          reaches_t[u] = true;
          q.push_back(u);
        }
      }
    }
    std::vector<bool> src(n);
    for (std::size_t v = 0; v < n; ++v) src[v] = !reaches_t[v];
    return src;
  }
};

}  // namespace

std::int64_t CoverageProblem::coverage(const std::vector<std::int64_t>& subset) const {
  std::vector<bool> seen(static_cast<std::size_t>(n_nodes), false);
  std::vector<std::int64_t> stack;
  std::int64_t total = 0;
  for (auto i : subset) {
    for (auto v : element_arcs[i]) {
      if (seen[v]) continue;
      seen[v] = true;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    total += cost[v];
    if (node_arcs.empty()) continue;
    for (auto w : node_arcs[v]) {
      if (seen[w]) continue;
      seen[w] = true;
      stack.push_back(w);
    }
  }
  return total;
}

ParametricCut max_parametric_subset(const CoverageProblem& prob, const std::vector<std::int64_t>& allowed,
                                    const Rational& lambda) {
  require(sgn(lambda) >= 0, ErrorKind::InvalidInput, "parametric cut needs lambda >= 0");
  const long long p = lambda.get_num().get_si();
  const long long q = lambda.get_den().get_si();
  require(lambda.get_num().fits_slong_p() && lambda.get_den().fits_slong_p(), ErrorKind::InvalidInput,
          "lambda too large for the flow network");
  const std::size_t ne = allowed.size();
  const std::size_t nn = static_cast<std::size_t>(prob.n_nodes);
  Network net(ne + nn + 2);
  net.s = ne + nn;
  net.t = ne + nn + 1;
  long long inf = 1 + p * static_cast<long long>(ne) + q * static_cast<long long>(nn);
  for (std::size_t i = 0; i < ne; ++i) {
    net.arc(net.s, i, p);
    for (auto v : prob.element_arcs[allowed[i]]) net.arc(i, ne + static_cast<std::size_t>(v), inf);
  }
  for (std::size_t v = 0; v < nn; ++v) {
    if (prob.cost[v]) net.arc(ne + v, net.t, q);
    if (!prob.node_arcs.empty())
      for (auto w : prob.node_arcs[v]) net.arc(ne + v, ne + static_cast<std::size_t>(w), inf);
  }
  long long cut = net.solve();
  auto src = net.maximal_source_side();
  ParametricCut out;
  for (std::size_t i = 0; i < ne; ++i)
    if (src[i]) out.subset.push_back(allowed[i]);
  std::sort(out.subset.begin(), out.subset.end());
  // cut = p(|allowed| - |X|) + q cov(X)
  out.value = rat(static_cast<std::int64_t>(cut - p * static_cast<long long>(ne)), static_cast<std::int64_t>(q));
  return out;
}

RatioSubset min_ratio_subset(const CoverageProblem& prob, const std::vector<std::int64_t>& allowed) {
  require(!allowed.empty(), ErrorKind::InvalidInput, "min ratio over an empty ground set");
  RatioSubset best;
  best.subset = allowed;
  std::sort(best.subset.begin(), best.subset.end());
  best.ratio = rat(prob.coverage(best.subset), static_cast<std::int64_t>(best.subset.size()));
  for (;;) {
    ParametricCut pc = max_parametric_subset(prob, allowed, best.ratio);
    if (sgn(pc.value) >= 0) break;
    require(!pc.subset.empty(), ErrorKind::ContractFailure, "negative cut with empty source side");
    Rational r = rat(prob.coverage(pc.subset), static_cast<std::int64_t>(pc.subset.size()));
    require(r < best.ratio, ErrorKind::ContractFailure, "Dinkelbach step did not decrease the ratio");
    best.ratio = r;
    best.subset = pc.subset;
  }
  return best;
}

}  // namespace plk
