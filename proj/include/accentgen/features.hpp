#pragma once

// Articulatory features per phone.
//
// The database lists base phones; features of a phone with diacritics are
// derived from its base (ʲ palatalized, ʷ labialized, ̪ dental, ̥ voiceless,
// ̝/̞ raised/lowered, ː long, ...).  An exact entry for the full phone wins.
//
// File format (TSV, '-' for not applicable, '#' comments):
//   phone  category  voicing  manner  place  height  backness  length

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "accentgen/ipa.hpp"

namespace accentgen {

enum class Category { Consonant, Vowel };
enum class Voicing { None, Voiced, Voiceless };

enum class Manner {
  None, Stop, Fricative, Affricate, Nasal, Approximant, Lateral, LateralFricative,
  Tap, Trill, Implosive, Click,
};

enum class Place {
  None, Bilabial, Labiodental, Dental, Alveolar, Postalveolar, Retroflex,
  Palatal, Velar, Uvular, Pharyngeal, Glottal, LabialVelar,
};

// Ordered from closest to most open.
enum class Height { None = -1, High, NearHigh, MidHigh, Mid, MidLow, NearLow, Low };

enum class Backness { None, Front, Central, Back };

struct PhoneFeatures {
  Category category = Category::Consonant;
  Voicing voicing = Voicing::None;
  Manner manner = Manner::None;
  Place place = Place::None;
  Height height = Height::None;
  Backness backness = Backness::None;
  bool is_long = false;

  bool palatalized = false;
  bool labialized = false;
  bool velarized = false;
  bool pharyngealized = false;
  bool aspirated = false;
  bool nasalized = false;

  bool consonant() const { return category == Category::Consonant; }
  bool vowel() const { return category == Category::Vowel; }
  bool obstruent() const {
    return manner == Manner::Stop || manner == Manner::Fricative || manner == Manner::Affricate ||
           manner == Manner::LateralFricative;
  }

  bool operator==(const PhoneFeatures&) const = default;
};

class MissingFeatures : public std::runtime_error {
 public:
  explicit MissingFeatures(const Phone& p)
      : std::runtime_error("no features for phone '" + render(p) + "'"), phone_(p) {}
  const Phone& phone() const { return phone_; }

 private:
  Phone phone_;
};

class FeatureDb {
 public:
  static FeatureDb parse(std::istream& in);
  static FeatureDb load(const std::filesystem::path& path);

  void add(const Phone& phone, const PhoneFeatures& f) { entries_[phone] = f; }

  std::optional<PhoneFeatures> lookup(const Phone& p) const;
  // Throws MissingFeatures.
  PhoneFeatures at(const Phone& p) const;

  std::size_t size() const { return entries_.size(); }
  const std::map<Phone, PhoneFeatures>& entries() const { return entries_; }

 private:
  std::map<Phone, PhoneFeatures> entries_;
};

// Distance along the bilabial..glottal ladder; nullopt if either place is off it.
std::optional<int> place_distance(Place a, Place b);

}  // namespace accentgen
