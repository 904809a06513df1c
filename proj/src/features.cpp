#include "accentgen/features.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

namespace accentgen {

namespace {

template <typename E>
E parse_enum(const std::string& s, const std::map<std::string, E>& table, const char* what,
             std::size_t line) {
  auto it = table.find(s);
  if (it == table.end()) {
    throw std::runtime_error("features line " + std::to_string(line) + ": bad " + what + " '" + s + "'");
  }
  return it->second;
}

const std::map<std::string, Manner> kManner = {
    {"-", Manner::None},           {"stop", Manner::Stop},
    {"fricative", Manner::Fricative}, {"affricate", Manner::Affricate},
    {"nasal", Manner::Nasal},      {"approximant", Manner::Approximant},
    {"lateral", Manner::Lateral},  {"lateral-fricative", Manner::LateralFricative},
    {"tap", Manner::Tap},          {"trill", Manner::Trill},
    {"implosive", Manner::Implosive}, {"click", Manner::Click},
};

const std::map<std::string, Place> kPlace = {
    {"-", Place::None},
    {"bilabial", Place::Bilabial},
    {"labiodental", Place::Labiodental},
    {"dental", Place::Dental},
    {"alveolar", Place::Alveolar},
    {"postalveolar", Place::Postalveolar},
    {"retroflex", Place::Retroflex},
    {"palatal", Place::Palatal},
    {"velar", Place::Velar},
    {"uvular", Place::Uvular},
    {"pharyngeal", Place::Pharyngeal},
    {"glottal", Place::Glottal},
    {"labial-velar", Place::LabialVelar},
};

const std::map<std::string, Height> kHeight = {
    {"-", Height::None},        {"high", Height::High},   {"near-high", Height::NearHigh},
    {"mid-high", Height::MidHigh}, {"mid", Height::Mid},  {"mid-low", Height::MidLow},
    {"near-low", Height::NearLow}, {"low", Height::Low},
};

const std::map<std::string, Backness> kBackness = {
    {"-", Backness::None}, {"front", Backness::Front}, {"central", Backness::Central},
    {"back", Backness::Back},
};

const std::map<std::string, Category> kCategory = {
    {"consonant", Category::Consonant}, {"vowel", Category::Vowel}};

const std::map<std::string, Voicing> kVoicing = {
    {"-", Voicing::None}, {"voiced", Voicing::Voiced}, {"voiceless", Voicing::Voiceless}};

const std::map<std::string, bool> kLength = {{"-", false}, {"short", false}, {"long", true}};

Height shift(Height h, int steps) {
  if (h == Height::None) return h;
  int v = static_cast<int>(h) + steps;
  v = std::clamp(v, static_cast<int>(Height::High), static_cast<int>(Height::Low));
  return static_cast<Height>(v);
}

void apply_mark(PhoneFeatures& f, char32_t m) {
  switch (m) {
    case 0x0325:  // ring below
    case 0x030A:  // ring above
      if (f.consonant()) f.voicing = Voicing::Voiceless;
      break;
    case 0x032C:  // caron below
      if (f.consonant()) f.voicing = Voicing::Voiced;
      break;
    case 0x02B0: f.aspirated = true; break;
    case 0x02B2: f.palatalized = true; break;
    case 0x02B7: f.labialized = true; break;
    case 0x02E0: f.velarized = true; break;
    case 0x02E4: f.pharyngealized = true; break;
    case 0x032A:  // bridge below
      if (f.consonant() && f.place == Place::Alveolar) f.place = Place::Dental;
      break;
    case 0x031D:  // raised
      if (f.vowel()) f.height = shift(f.height, -1);
      break;
    case 0x031E:  // lowered
      if (f.vowel()) f.height = shift(f.height, +1);
      break;
    case 0x02D0:  // length mark
    case 0x02D1:  // half-length
      f.is_long = true;
      break;
    case 0x0306:  // extra-short
      f.is_long = false;
      break;
    case 0x0303: f.nasalized = true; break;
    default:
      break;
  }
}

}  // namespace

std::optional<int> place_distance(Place a, Place b) {
  auto on_ladder = [](Place p) { return p != Place::None && p != Place::LabialVelar; };
  if (!on_ladder(a) || !on_ladder(b)) return std::nullopt;
  return std::abs(static_cast<int>(a) - static_cast<int>(b));
}

FeatureDb FeatureDb::parse(std::istream& in) {
  FeatureDb db;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cols;
    std::istringstream ss(line);
    for (std::string c; std::getline(ss, c, '\t');) cols.push_back(c);
    if (cols.size() != 8) {
      throw std::runtime_error("features line " + std::to_string(lineno) + ": expected 8 columns");
    }
    PhoneFeatures f;
    f.category = parse_enum(cols[1], kCategory, "category", lineno);
    f.voicing = parse_enum(cols[2], kVoicing, "voicing", lineno);
    f.manner = parse_enum(cols[3], kManner, "manner", lineno);
    f.place = parse_enum(cols[4], kPlace, "place", lineno);
    f.height = parse_enum(cols[5], kHeight, "height", lineno);
    f.backness = parse_enum(cols[6], kBackness, "backness", lineno);
    f.is_long = parse_enum(cols[7], kLength, "length", lineno);
    const bool vowel_fields = f.height != Height::None || f.backness != Backness::None;
    const bool consonant_fields = f.manner != Manner::None || f.place != Place::None ||
                                  f.voicing != Voicing::None;
    if (f.vowel() ? consonant_fields : vowel_fields) {
      throw std::runtime_error("features line " + std::to_string(lineno) +
                               ": fields do not match category");
    }
    try {
      db.add(parse_phone(cols[0]), f);
    } catch (const IpaError& e) {
      throw std::runtime_error("features line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return db;
}

FeatureDb FeatureDb::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open feature db " + path.string());
  return parse(in);
}

std::optional<PhoneFeatures> FeatureDb::lookup(const Phone& p) const {
  if (auto it = entries_.find(p); it != entries_.end()) return it->second;
  auto it = entries_.find(Phone{p.base});
  if (it == entries_.end()) return std::nullopt;
  PhoneFeatures f = it->second;
  for (char32_t m : p.modifiers) apply_mark(f, m);
  return f;
}

PhoneFeatures FeatureDb::at(const Phone& p) const {
  if (auto f = lookup(p)) return *f;
  throw MissingFeatures(p);
}

}  // namespace accentgen
