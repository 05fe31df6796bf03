#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plk/magnification.hpp"
#include "plk/point_set.hpp"
#include "plk/rational.hpp"
#include "plk/tableau.hpp"
#include "plk/tiling.hpp"

namespace plk {

struct PipelineInput {
  PointSet2 a{1, 1};
  PointSet2 b{1, 1};
  unsigned k_prime = 1;
  unsigned k = 2;
  std::int64_t L = 2;
  std::int64_t q = 8;
  TableauRegion f;  // the Følner term F_n
  // Lower density of A used in the Q-size condition; defaults to alpha_n.
  std::optional<Rational> alpha;
  // Reference Tab(L) density of kB; defaults to a finite-window estimate with floor Q.
  std::optional<Rational> kb_density;
  HeavyMode mode = HeavyMode::Greedy;
};

struct PipelineStep {
  std::string id;
  std::string relation;  // human-readable form of the inequality
  std::string lhs;       // exact operands
  std::string rhs;
  double lhs_approx = 0;
  double rhs_approx = 0;
  bool pass = false;
  // Only guaranteed when Q >= 4(L+1)/alpha holds.
  bool conditional = false;
};

struct PipelineTrace {
  // Counts of the intermediate objects.
  std::int64_t f_measure = 0;
  std::int64_t a_in_f = 0;
  std::int64_t a_trim = 0;   // |A'|
  std::int64_t a0 = 0;       // |A0|
  std::int64_t a0_heavy = 0; // |A'_0|
  std::int64_t s = 0;        // |S_n|
  std::int64_t s_hull = 0;   // |S~_n|
  std::int64_t g = 0;        // |G|
  Rational alpha;
  Rational alpha_n;
  bool n_tilde = false;       // alpha_n > (3/4) alpha
  bool precondition = false;  // Q alpha >= 4(L+1)
  bool basis = false;         // kB covers the window
  Rational kb_density;
  Rational delta_empirical;
  double lambda = 0;  // lambda(n,Q)
  std::string lambda_power;  // lambda^k' exactly
  std::vector<Point> stair_points;
  std::vector<Rational> g_ratios;  // |(a_j+kB) ∩ G_j| / |G_j|
  std::vector<PipelineStep> steps;
  std::vector<std::string> diagnostics;

  // Every unconditional step passes, and the conditional ones too when the precondition holds.
  bool ok() const;
  bool all_steps_pass() const;
  const PipelineStep* find(const std::string& id) const;
  std::string to_json() const;
};

PipelineTrace pipeline_replay(const PipelineInput& in);

}  // namespace plk
