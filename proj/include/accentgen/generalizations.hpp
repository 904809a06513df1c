#pragma once

// Detection of named phonological generalizations in a StatsTable.
//
// Each rule is a feature-level predicate over the table's changes.  A rule is
// detected when the summed count of matching changes reaches min_evidence.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "accentgen/features.hpp"
#include "accentgen/stats.hpp"

namespace accentgen {

enum class Rule {
  FinalObstruentDevoicing,
  ConsonantVoicing,
  StopToFricative,
  InterdentalFricativeChange,
  Palatalization,
  Retroflexing,
  AlveolarApproximantChange,
  WToFricative,
  Dentalization,
  HToVelarFricative,
  ShToS,
  StopToImplosive,
  Labialization,
  VowelRaising,
  VowelShortening,
  VowelLowering,
  VowelInsertion,
  ConsonantDeletion,
  ClusterReduction,
  ConsonantInsertion,
};

inline constexpr std::size_t kRuleCount = 20;

// All rules in reporting order.
const std::array<Rule, kRuleCount>& all_rules();
std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);

// Where a piece of evidence lives in a StatsTable.
struct ChangeRef {
  enum class Kind { Replacement, FinalReplacement, Deletion, DeletionInContext, InsertBefore, InsertAfter };
  Kind kind = Kind::Replacement;
  Phone sound;
  PhoneSeq seq;              // replacement target or inserted material
  DeletionContext context;   // DeletionInContext only

  auto operator<=>(const ChangeRef&) const = default;
  bool operator==(const ChangeRef&) const = default;
};

// The count stored in `table` for `ref` (0 when absent).
std::int64_t count_in(const StatsTable& table, const ChangeRef& ref);

// "z→s", "z→s / _#", "k→∅ / l_#", "∅→ə / _s", "∅→ɡ / ŋ_"
std::string describe(const ChangeRef& ref);

struct Evidence {
  ChangeRef ref;
  std::int64_t count = 0;
};

struct RuleResult {
  bool detected = false;
  std::int64_t total = 0;
  std::vector<Evidence> evidence;
};

struct GeneralizationReport {
  std::int64_t min_evidence = 2;
  std::map<Rule, RuleResult> rules;  // every rule present

  std::set<Rule> detected() const;
};

// Throws MissingFeatures when a phone of the table is absent from `features`.
GeneralizationReport detect(const StatsTable& table, const FeatureDb& features,
                            std::int64_t min_evidence = 2);

// Rules matched by a single replacement src→dst (position-free rules only).
std::set<Rule> replacement_rules(const Phone& src, const PhoneSeq& dst, const FeatureDb& features);

struct ComparisonRow {
  Rule rule;
  bool simplified = false;
  bool full = false;
};

std::vector<ComparisonRow> compare_inventories(const GeneralizationReport& full,
                                               const GeneralizationReport& simplified);

nlohmann::json to_json(const GeneralizationReport& report);
std::string format_report(const GeneralizationReport& report);
// Two-column table: CMU (simplified) and GMU (full).
std::string format_comparison(const std::vector<ComparisonRow>& rows);

}  // namespace accentgen
