#pragma once

// Corpus ingestion and dataset files.
//
//   CMU dictionary      WORD  PH PH PH    (";;;" comments, WORD(1) alternates)
//   accent pairs (TSV)  speaker_id  accent_tag  word  gae_ipa  accented_ipa
//   augmented (TSV)     accented_ipa  canonical_ipa  word  accent_tag

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "accentgen/ipa.hpp"

namespace accentgen {

struct Diagnostic {
  std::size_t line = 0;
  std::string message;
};

struct DictEntry {
  std::string word;
  int variant_index = 0;
  PhoneSeq pron;

  bool operator==(const DictEntry&) const = default;
};

struct AccentPair {
  std::string speaker_id;
  std::string accent_tag;
  std::string word;
  PhoneSeq gae;
  PhoneSeq accented;

  bool operator==(const AccentPair&) const = default;
};

struct AugRecord {
  PhoneSeq accented;
  PhoneSeq canonical;
  std::string word;
  std::string accent_tag;
};

// --- ARPABET ----------------------------------------------------------------

// The 39 ARPABET phonemes and their IPA equivalents (stress digits removed).
const std::map<std::string, Phone>& arpabet_table();

class UnknownArpabetSymbol : public std::runtime_error {
 public:
  UnknownArpabetSymbol(std::size_t line, std::string symbol)
      : std::runtime_error("line " + std::to_string(line) + ": unknown ARPABET symbol '" +
                           symbol + "'"),
        line_(line),
        symbol_(std::move(symbol)) {}
  std::size_t line() const { return line_; }
  const std::string& symbol() const { return symbol_; }

 private:
  std::size_t line_;
  std::string symbol_;
};

// Parses one dictionary line.  Returns nullopt for blank and comment lines;
// throws UnknownArpabetSymbol or std::invalid_argument on malformed input.
std::optional<DictEntry> parse_cmudict_line(std::string_view line, std::size_t lineno);

// Streaming reader; malformed lines are recorded and skipped.
class CmudictReader {
 public:
  explicit CmudictReader(std::istream& in) : in_(in) {}

  std::optional<DictEntry> next();
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::istream& in_;
  std::size_t lineno_ = 0;
  std::vector<Diagnostic> diagnostics_;
};

std::vector<DictEntry> parse_cmudict(std::istream& in,
                                     std::vector<Diagnostic>* diagnostics = nullptr);

// --- accent pairs -------------------------------------------------------------

std::vector<AccentPair> parse_pairs(std::istream& in,
                                    std::vector<Diagnostic>* diagnostics = nullptr);
void write_pairs(std::ostream& out, std::span<const AccentPair> pairs);

// Stable partition by accent tag.
std::map<std::string, std::vector<AccentPair>> group_by_accent(std::span<const AccentPair> pairs);

// --- augmented corpus -----------------------------------------------------------

std::string format_record(const AugRecord& rec);
// Fields of one augmented-corpus line, unparsed.
std::optional<std::array<std::string_view, 4>> split_record(std::string_view line);

// --- splitting ------------------------------------------------------------------

class BadRatio : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SplitRatio {
  int train = 80;
  int val = 10;
  int test = 10;
};

// Parses "A/B/C"; throws BadRatio unless all parts are >= 0, sum to 100 and
// train is positive.
SplitRatio parse_ratio(std::string_view text);

enum class Split { Train, Val, Test };

// Bucket for a canonical transcription.  Every record sharing a canonical
// form lands in the same split.
Split assign_split(std::string_view canonical_ipa, const SplitRatio& ratio, std::uint64_t seed);

struct SplitCounts {
  std::size_t train = 0, val = 0, test = 0, malformed = 0;
};

// Streams augmented-corpus lines from `in` into the three outputs.
SplitCounts split_dataset(std::istream& in, const SplitRatio& ratio, std::uint64_t seed,
                          std::ostream& train, std::ostream& val, std::ostream& test);

std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace accentgen
