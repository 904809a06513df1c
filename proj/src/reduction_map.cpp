#include "accentgen/reduction_map.hpp"

#include <fstream>
#include <istream>
#include <sstream>

namespace accentgen {

namespace {

constexpr char32_t kDottedCircle = 0x25CC;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c != ' ' && c != '\t' && c != '\r') out += c;
  }
  return out;
}

}  // namespace

void ReductionMap::add_inventory(Phone sound) { inventory_.insert(std::move(sound)); }

void ReductionMap::add_rule(Phone source, PhoneSeq target) {
  if (in_inventory(source)) {
    throw std::invalid_argument("source '" + render(source) + "' is an inventory sound");
  }
  for (const Phone& t : target) {
    if (!in_inventory(t)) {
      throw std::invalid_argument("target '" + render(t) + "' of '" + render(source) +
                                  "' is outside the inventory");
    }
  }
  rules_[std::move(source)] = std::move(target);
}

void ReductionMap::add_dropped_mark(char32_t mark) { dropped_marks_.insert(mark); }

std::optional<PhoneSeq> ReductionMap::resolve(const Phone& p) const {
  auto direct = [this](const Phone& q) -> std::optional<PhoneSeq> {
    if (auto it = rules_.find(q); it != rules_.end()) return it->second;
    if (in_inventory(q)) return PhoneSeq{q};
    return std::nullopt;
  };
  if (auto hit = direct(p)) return hit;
  if (p.modifiers.empty() || dropped_marks_.empty()) return std::nullopt;

  Phone stripped{p.base};
  for (char32_t m : p.modifiers) {
    if (!dropped_marks_.count(m)) stripped.modifiers += m;
  }
  if (stripped == p) return std::nullopt;
  return direct(stripped);
}

PhoneSeq simplify(const PhoneSeq& seq, const ReductionMap& map) {
  PhoneSeq out;
  out.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    auto target = map.resolve(seq[i]);
    if (!target) throw UnmappedPhone(seq[i], i);
    out.insert(out.end(), target->begin(), target->end());
  }
  return out;
}

ReductionMap ReductionMap::parse(std::istream& in) {
  ReductionMap map;
  bool have_inventory = false;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    try {
      if (line.rfind("!inventory", 0) == 0) {
        std::istringstream words(line.substr(10));
        std::string w;
        while (words >> w) map.add_inventory(parse_phone(w));
        have_inventory = true;
        continue;
      }
      if (!have_inventory) throw MapFormatError(lineno, "rule before !inventory declaration");

      const auto tab = raw.find('\t');
      const std::string source = trim(tab == std::string::npos ? raw : raw.substr(0, tab));
      const std::string target = tab == std::string::npos ? std::string{} : strip_spaces(raw.substr(tab + 1));

      const std::u32string src32 = unicode::nfd(unicode::decode_utf8(source));
      if (!src32.empty() && src32.front() == kDottedCircle) {
        if (!target.empty()) throw MapFormatError(lineno, "mark rules must have an empty target");
        if (src32.size() < 2) throw MapFormatError(lineno, "mark rule without a mark");
        for (std::size_t k = 1; k < src32.size(); ++k) map.add_dropped_mark(src32[k]);
        continue;
      }
      map.add_rule(parse_phone(source), tokenize(target));
    } catch (const IpaError& e) {
      throw MapFormatError(lineno, e.what());
    } catch (const std::invalid_argument& e) {
      throw MapFormatError(lineno, e.what());
    }
  }
  if (!have_inventory) throw MapFormatError(lineno, "missing !inventory declaration");
  return map;
}

ReductionMap ReductionMap::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open reduction map " + path.string());
  return parse(in);
}

}  // namespace accentgen
