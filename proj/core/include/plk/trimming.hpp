#pragma once

#include <cstdint>
#include <vector>

#include "plk/rational.hpp"
#include "plk/tableau.hpp"

namespace plk {

// Tableau cells with a positive measure mu and values rho in [0,1], both indexed [x][y].
struct WeightedTableau {
  Tableau shape;
  CellField mu;
  CellField rho;

  void validate() const;
  // (Σ_S mu*f) / (Σ_S mu) over the cells of S ⊆ shape given as a profile.
  Rational average(const CellField& f, const Profile& s) const;
  // Same over shape \ S.
  Rational average_outside(const CellField& f, const Profile& s) const;
  Rational measure(const Profile& s) const;
};

// Counting measure and the given values.
WeightedTableau make_weighted(const Tableau& shape, const CellField& rho);

struct AlphaResult {
  Rational alpha;
  Tableau witness;  // a nonempty subtableau attaining the minimum
};

// min over nonempty subtableaux S of A(rho, S), by parametric staircase DP.
AlphaResult max_alpha(const WeightedTableau& wt);
// Same by exhaustive enumeration; guarded.
AlphaResult max_alpha_exhaustive(const WeightedTableau& wt,
                                 std::int64_t guard = SubtableauEnumerator::kDefaultGuard);

struct TrimOptions {
  // Shapes up to this many cells pick S_max by enumeration (largest measure,
  // then enumeration order); larger shapes use the DP growth search.
  std::int64_t enumerate_cells = 30;
  // Exhaustive re-verification up to this many cells, DP beyond.
  std::int64_t verify_cells = 20;
  bool verify = true;
};

struct TrimOutput {
  CellField rho_prime;
  std::vector<Tableau> s_max_trace;
};

TrimOutput trim(const WeightedTableau& wt, const Rational& alpha, const TrimOptions& opt = {});
// alpha defaults to max_alpha(wt).
TrimOutput trim(const WeightedTableau& wt, const TrimOptions& opt = {});

enum class VerifyMode { Auto, Exhaustive, Dp };

struct TrimCheck {
  bool below = false;      // rho' <= rho and rho' >= 0
  bool average = false;    // A(rho', I) == alpha
  bool upper = false;      // A(rho', I \ S) <= alpha for all S ⊊ I
  bool ok() const { return below && average && upper; }
};

TrimCheck check_trim(const WeightedTableau& wt, const Rational& alpha, const CellField& rho_prime,
                     VerifyMode mode = VerifyMode::Auto, std::int64_t verify_cells = 20);
bool verify_trim(const WeightedTableau& wt, const Rational& alpha, const TrimOutput& out,
                 VerifyMode mode = VerifyMode::Auto, std::int64_t verify_cells = 20);

// Inclusion-maximal S ⊊ I with A(rho, I \ S) > alpha found by the DP growth search,
// or nullopt when none exists.
std::optional<Tableau> find_s_max_dp(const WeightedTableau& wt, const Rational& alpha);
// Largest-measure S ⊊ I with A(rho, I \ S) > alpha (first in enumeration order on ties).
std::optional<Tableau> find_s_max_enumerate(const WeightedTableau& wt, const Rational& alpha,
                                            std::int64_t guard = SubtableauEnumerator::kDefaultGuard);

}  // namespace plk
