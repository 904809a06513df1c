#pragma once

// Accented-variant sampling from learned change probabilities.
//
// Each variant is one left-to-right pass over the canonical word.  At every
// position one of {keep, delete, replace→d} is drawn from the sound's
// distribution, and an insertion after it (or before it, at the first
// position) is drawn independently.  Draws stop changing the word once
// max_edits_per_word changes have been made.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "accentgen/corpus.hpp"
#include "accentgen/stats.hpp"

namespace accentgen {

struct GenConfig {
  std::uint64_t seed = 0;
  int variants_per_word = 10;
  int max_edits_per_word = 2;
  std::int64_t min_count = 1;
  double scale = 1.0;
  // Draw budget per requested variant before giving up on finding distinct ones.
  int attempts_per_variant = 16;
  unsigned threads = 1;
  std::string accent_tag;
};

// Validates a config; throws std::invalid_argument.
void check_config(const GenConfig& cfg);

// The PRNG for word `index`: mt19937_64 seeded with splitmix64(seed ^ splitmix64(index)).
std::mt19937_64 word_stream(std::uint64_t seed, std::uint64_t index);

// Uniform double in [0, 1) from the top 53 bits of one draw.
double unit_draw(std::mt19937_64& rng);

// ProbTable with `scale` applied and clamped, laid out for sampling.
class Sampler {
 public:
  Sampler(const ProbTable& probs, double scale);

  struct Choice {
    double p;
    PhoneSeq seq;  // empty = delete
  };
  struct Site {
    std::vector<Choice> changes;  // delete/replace outcomes; remainder is keep
    std::vector<Choice> before;
    std::vector<Choice> after;
    bool mutable_site() const { return !changes.empty() || !before.empty() || !after.empty(); }
  };

  const Site* find(const Phone& p) const;
  // One line per sound whose scaled probabilities had to be clamped.
  const std::vector<std::string>& warnings() const { return warnings_; }

  // One sampled variant (may equal the word, may be empty).
  PhoneSeq sample(const PhoneSeq& word, int max_edits, std::mt19937_64& rng) const;

  // Up to cfg.variants_per_word distinct non-empty variants, in first-drawn order.
  std::vector<PhoneSeq> variants(const PhoneSeq& word, const GenConfig& cfg,
                                 std::uint64_t word_index) const;

 private:
  std::map<Phone, Site> sites_;
  std::vector<std::string> warnings_;
};

std::vector<PhoneSeq> generate_variants(const PhoneSeq& word, const ProbTable& probs,
                                        const GenConfig& cfg);

struct ScoredVariant {
  PhoneSeq seq;
  double p = 0.0;
};

// Exact ranking of all single-edit variants.  A variant's probability is the
// triggering change's probability times the keep probability of every
// untouched position; identical variants reached by different edits are
// summed.  Ties are broken by rendered string.
std::vector<ScoredVariant> most_probable_variants(const PhoneSeq& word, const ProbTable& probs,
                                                  std::size_t k);

struct AugmentSummary {
  std::size_t entries = 0;
  std::size_t records = 0;
  std::size_t dedup_losses = 0;
  std::vector<std::string> warnings;
};

using EntrySource = std::function<std::optional<DictEntry>()>;
using RecordSink = std::function<void(const AugRecord&)>;

// Streams entries from `source` to `sink`.  Output depends only on the input
// order and cfg, not on cfg.threads.
AugmentSummary augment_corpus(const EntrySource& source, const ProbTable& probs,
                              const GenConfig& cfg, const RecordSink& sink);

}  // namespace accentgen
