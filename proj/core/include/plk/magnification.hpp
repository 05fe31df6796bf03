#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plk/flow.hpp"
#include "plk/point_set.hpp"
#include "plk/rational.hpp"
#include "plk/surd.hpp"
#include "plk/tableau.hpp"

namespace plk {

enum class GroupMode { Lattice, Cyclic };

struct MagnificationInstance {
  PointSet2 a;
  PointSet2 b;
  PointSet2 c;
  GroupMode mode = GroupMode::Lattice;

  // All three sets must share this window; in cyclic mode it is the square Z_m x Z_m.
  const Window& window() const { return a.window(); }
  void validate() const;
};

// |(X + nB) \ (C + (n-1)B)| evaluated for many subsets X of A.
class TruncatedGrowth {
 public:
  TruncatedGrowth(const MagnificationInstance& inst, unsigned n);

  const std::vector<Point>& elements() const { return elems_; }
  std::int64_t measure(const std::vector<std::int64_t>& subset) const;
  std::int64_t measure_all() const;
  // Flow formulation over the same footprints.
  const CoverageProblem& coverage() const { return prob_; }

 private:
  std::vector<Point> elems_;
  CoverageProblem prob_;
};

struct MagnificationResult {
  Rational d;
  std::vector<Point> witness;  // lexicographically least minimizer (row-major order)
  std::int64_t subsets = 0;
};

constexpr std::int64_t kDefaultSubsetGuard = 22;

// D_n by enumerating all nonempty subsets of A in Gray-code order.
MagnificationResult magnification(const MagnificationInstance& inst, unsigned n,
                                  std::int64_t guard = kDefaultSubsetGuard, unsigned threads = 1);

// D_n through parametric min cuts; independent of the enumeration route.
MagnificationResult magnification_flow(const MagnificationInstance& inst, unsigned n);

struct MonotoneReport {
  std::vector<Rational> d;  // d[i] = D_{i+1}
  std::vector<unsigned> violations;  // n with D_{n+1}^n > D_n^{n+1}
  bool ok() const { return violations.empty(); }
};

MonotoneReport check_root_monotone(const MagnificationInstance& inst, unsigned n_max,
                                   std::int64_t guard = kDefaultSubsetGuard);

enum class HeavyMode { Brute, Greedy };

struct DeltaHeavyResult {
  std::vector<Point> a_prime;
  Surd delta;
  unsigned k_prime = 1, k = 2;
  std::int64_t a_size = 0;
  std::int64_t lhs_num = 0;  // |(A'+kB) \ (C+(k-1)B)|
  std::int64_t rhs_num = 0;  // |(A+k'B) \ (C+(k'-1)B)|
  Rational lhs;              // lhs_num / |A'|
  Rational rhs_base;         // rhs_num / |A|
  bool heavy = false;        // |A'| > delta |A|
  bool bound = false;        // lhs <= (1-delta)^(-k/k') rhs_base^(k/k')
  std::string to_json() const;
};

// The truncated-growth inequality for a candidate ratio, without roots:
// ratio^k' (1-delta)^k <= base^k.
bool heavy_bound_holds(const Rational& ratio, const Rational& base, const Surd& delta, unsigned k_prime, unsigned k);

DeltaHeavyResult delta_heavy(const MagnificationInstance& inst, unsigned k_prime, unsigned k, const Surd& delta,
                             HeavyMode mode, std::int64_t guard = kDefaultSubsetGuard);

// delta_heavy with C = window \ T. When kB covers the whole window the
// coverage is computed on the up-closure grid instead of explicit footprints.
DeltaHeavyResult truncated_heavy_tableau(const PointSet2& a, const PointSet2& b, const Tableau& t, unsigned k_prime,
                                         unsigned k, const Surd& delta, HeavyMode mode,
                                         std::int64_t guard = kDefaultSubsetGuard);

}  // namespace plk
