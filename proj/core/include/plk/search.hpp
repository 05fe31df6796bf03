#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "plk/fractal.hpp"
#include "plk/point_set.hpp"
#include "plk/rational.hpp"

namespace plk {

enum class Verdict { Clean, Violation, Inconclusive };

// 0, 2 and 3 respectively.
int exit_code(Verdict v);
const char* to_string(Verdict v);

struct SearchReport {
  std::string question;
  nlohmann::json params;
  std::uint64_t instances = 0;        // tested in this run
  std::uint64_t expected_total = 0;   // size of the exhaustive space, 0 for random runs
  std::uint64_t cursor = 0;           // next instance index
  bool complete = false;
  std::vector<nlohmann::json> violations;
  std::vector<std::string> notes;
  double seconds = 0;
  Verdict verdict = Verdict::Inconclusive;

  // Header line, one line per violation, summary line.
  std::string to_jsonl() const;
};

enum class SearchMode { Exhaustive, Random };

struct BoxSearchOptions {
  std::int64_t n = 1;  // box [0,N] x [0,M]
  std::int64_t m = 1;
  unsigned k = 2;
  unsigned k_prime = 1;
  SearchMode mode = SearchMode::Exhaustive;
  std::uint64_t budget = 0;  // 0: no limit in exhaustive mode
  std::uint64_t cursor = 0;  // resume point
  std::uint64_t seed = 1;    // random mode
};

// sigma_{N,M}(A+k'B)^k >= sigma_{N,M}(A)^(k-k') sigma_{N,M}(kB)^k' over A, B ⊆ box with (0,0) ∈ B.
// Sumsets are clipped to the box before sigma is taken.
SearchReport search_box_sigma(const BoxSearchOptions& opt);

// The (A,B) pair of instance `index` in exhaustive order.
std::pair<std::vector<Point>, std::vector<Point>> box_instance(std::int64_t n, std::int64_t m, std::uint64_t index);

struct FractalScreenOptions {
  std::vector<FractalSpec> patterns;  // each with a schedule of the wanted depth
  std::vector<std::vector<Point>> b_family;  // finite B; "axes" sets are passed explicitly
  std::vector<std::int64_t> windows;          // three or more growing window sides
  unsigned k = 2;
  unsigned k_prime = 1;
};

// Finite-window screening of the Rect inequality; the verdict is always Inconclusive.
SearchReport search_fractal_rect(const FractalScreenOptions& opt);

}  // namespace plk
