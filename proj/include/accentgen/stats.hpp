#pragma once

// Per-sound change statistics accumulated over aligned GAE/accented pairs.
//
// For every GAE sound: how often it occurs, how often it is deleted, what it
// is replaced by, and what is inserted before or after it.  A merged
// replacement whose source spans several phones is counted once, keyed on its
// first phone; the remaining source phones only add occurrences.

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "accentgen/ipa.hpp"

namespace accentgen {

using CountMap = std::map<PhoneSeq, std::int64_t>;

struct SoundStats {
  std::int64_t occurrences = 0;
  std::int64_t deletions = 0;
  CountMap replacements;
  CountMap insertions_before;
  CountMap insertions_after;

  std::int64_t replacement_total() const;
  bool operator==(const SoundStats&) const = default;
};

// GAE neighbours of a deleted phone; nullopt is the word boundary.
struct DeletionContext {
  std::optional<Phone> left;
  std::optional<Phone> right;

  auto operator<=>(const DeletionContext&) const = default;
  bool operator==(const DeletionContext&) const = default;
};

// Position-dependent evidence kept beside the position-free counters.
struct PositionalStats {
  CountMap final_replacements;  // replacements whose source ends the word
  std::map<DeletionContext, std::int64_t> deletion_contexts;

  bool empty() const { return final_replacements.empty() && deletion_contexts.empty(); }
  bool operator==(const PositionalStats&) const = default;
};

struct StatsTable {
  std::optional<std::string> accent_tag;
  std::map<Phone, SoundStats> sounds;
  std::map<Phone, PositionalStats> positional;

  const SoundStats* find(const Phone& p) const;
  bool operator==(const StatsTable&) const = default;
};

struct SeqPair {
  PhoneSeq gae;
  PhoneSeq accented;
};

struct SkippedPair {
  std::size_t index;
  std::string reason;
};

class AccentTagMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Aligns one pair and adds its changes.  Throws AlignmentError on empty input.
void add_pair(StatsTable& table, const PhoneSeq& gae, const PhoneSeq& accented);

// Pairs that fail to align are skipped and listed in `skipped` when given.
StatsTable accumulate(std::span<const SeqPair> pairs,
                      std::vector<SkippedPair>* skipped = nullptr);

StatsTable merge(const StatsTable& a, const StatsTable& b);

struct Outcome {
  PhoneSeq seq;
  double p = 0.0;
};

struct SoundProbs {
  std::int64_t occurrences = 0;
  double p_delete = 0.0;
  double p_keep = 1.0;
  std::vector<Outcome> replacements;
  std::vector<Outcome> insert_before;
  std::vector<Outcome> insert_after;
};

class ProbTable {
 public:
  std::map<Phone, SoundProbs> sounds;

  const SoundProbs* find(const Phone& p) const {
    auto it = sounds.find(p);
    return it == sounds.end() ? nullptr : &it->second;
  }
  bool empty() const { return sounds.empty(); }
};

// Plain relative frequencies; entries with count < min_count are dropped.
ProbTable probabilities(const StatsTable& table, std::int64_t min_count = 1);

nlohmann::json to_json(const StatsTable& table);
StatsTable stats_from_json(const nlohmann::json& j);

void write_stats(const StatsTable& table, const std::filesystem::path& path);
StatsTable read_stats(const std::filesystem::path& path);

std::string render_context(const DeletionContext& ctx);
DeletionContext parse_context(const std::string& key);

}  // namespace accentgen
