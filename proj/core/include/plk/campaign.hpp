#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace plk {

struct FamilyReport {
  std::string name;
  nlohmann::json params;
  std::int64_t count = 0;
  std::int64_t passed = 0;
  std::vector<nlohmann::json> violations;
  nlohmann::json extra = nlohmann::json::object();
};

struct CampaignReport {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::vector<FamilyReport> families;

  bool clean() const;
  // Header line, one line per family; no timings, so equal seeds give equal bytes.
  std::string to_jsonl() const;
};

// Config: {"seed": s, "families": [{"name": ..., "count": n, ...}]}.
// Families and their options:
//   cardinality    max_size, window, k_max         |A+B|^k >= |A|^(k-1) |kB| in N^2
//   schnirelmann   length, k_max                   sigma(A+B)^k >= sigma(A)^(k-1) sigma(kB) on [0,length)
//   magnification  max_size, window, n_max, mode   D_{n+1}^n <= D_n^(n+1), mode "lattice" or "cyclic"
//   heavy-subset   max_size, window, k_max, deltas, compare_up_to
//                                                  heavy-subset contract in brute and greedy modes
// A contract failure aborts the campaign with the instance payload.
CampaignReport verify_campaign(const nlohmann::json& config, unsigned threads = 1);

// splitmix64 step, used to derive independent per-instance seeds.
std::uint64_t mix_seed(std::uint64_t x);

}  // namespace plk
