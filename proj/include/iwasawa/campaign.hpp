#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "iwasawa/honda.hpp"
#include "iwasawa/theorem.hpp"

namespace iwasawa {

struct GrowthRow {
  int n = 0;
  long q = 0;
  long e = 0;
  long e_prev_plus_q = 0;  // e_{n-1} + q_n; equals e for n >= 1
};

std::vector<GrowthRow> growth_table(std::uint32_t p, int n_max);
nlohmann::json growth_json(std::uint32_t p, const std::vector<GrowthRow>& rows);
std::string growth_csv(const std::vector<GrowthRow>& rows);

struct CampaignResult {
  SimConfig config;
  std::vector<TrialResult> trials;  // sorted by trial index
  double wall_seconds = 0;

  bool passed() const;
  bool exhausted() const;
};

// Trials 0..trials-1, spread over `jobs` threads. The outcome does not
// depend on `jobs`.
CampaignResult run_campaign(const SimConfig& config, unsigned jobs = 1);

// Report with one record per (trial, level). Wall time sits under "timing"
// and is left out when include_timing is false.
nlohmann::json campaign_json(const CampaignResult& r, bool include_timing = true);
std::string campaign_csv(const CampaignResult& r);

struct FormalGroupReport {
  nlohmann::json body;
  bool passed = false;
  bool exhausted = false;
};

// Integrality, unit axiom, symmetry, log homomorphism, associativity to
// `assoc_degree`, epsilon residual modulo p^target and the trace unit.
FormalGroupReport formal_group_report(const HondaType& type, int degree, int target, int assoc_degree);

nlohmann::json element_json(const AlgebraElement& f);
AlgebraElement element_from_json(const nlohmann::json& j);

}  // namespace iwasawa
