#pragma once

#include <cstdint>
#include <vector>

#include "plk/rational.hpp"

namespace plk {

// Coverage structure: choosing element i reaches the cover nodes listed in
// element_arcs[i] and everything reachable from them along node_arcs.
// The coverage of a subset is the number of reached nodes with cost 1.
struct CoverageProblem {
  std::int64_t n_nodes = 0;
  std::vector<std::uint8_t> cost;                      // per node, 0 or 1
  std::vector<std::vector<std::int64_t>> element_arcs;  // per element
  std::vector<std::vector<std::int64_t>> node_arcs;     // per node, may be empty

  std::int64_t n_elements() const { return static_cast<std::int64_t>(element_arcs.size()); }
  std::int64_t coverage(const std::vector<std::int64_t>& subset) const;
};

struct RatioSubset {
  Rational ratio;
  std::vector<std::int64_t> subset;  // sorted element indices
};

// Exact min over nonempty X ⊆ allowed of coverage(X)/|X| (Dinkelbach + min cut).
RatioSubset min_ratio_subset(const CoverageProblem& prob, const std::vector<std::int64_t>& allowed);

// Largest X ⊆ allowed minimizing coverage(X) - lambda*|X|, with that minimum.
struct ParametricCut {
  Rational value;
  std::vector<std::int64_t> subset;
};
ParametricCut max_parametric_subset(const CoverageProblem& prob, const std::vector<std::int64_t>& allowed,
                                    const Rational& lambda);

}  // namespace plk
