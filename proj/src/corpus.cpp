#include "accentgen/corpus.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace accentgen {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos
                                                                      : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::string_view chomp(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

}  // namespace

const std::map<std::string, Phone>& arpabet_table() {
  static const std::map<std::string, Phone> table = [] {
    const std::pair<const char*, const char*> rows[] = {
        {"AA", "ɑ"},  {"AE", "æ"},  {"AH", "ʌ"},  {"AO", "ɔ"},  {"AW", "a͡ʊ"}, {"AY", "a͡ɪ"},
        {"B", "b"},   {"CH", "t͡ʃ"}, {"D", "d"},   {"DH", "ð"},  {"EH", "ɛ"},  {"ER", "ɝ"},
        {"EY", "e͡ɪ"}, {"F", "f"},   {"G", "ɡ"},   {"HH", "h"},  {"IH", "ɪ"},  {"IY", "i"},
        {"JH", "d͡ʒ"}, {"K", "k"},   {"L", "l"},   {"M", "m"},   {"N", "n"},   {"NG", "ŋ"},
        {"OW", "o͡ʊ"}, {"OY", "ɔ͡ɪ"}, {"P", "p"},   {"R", "ɹ"},   {"S", "s"},   {"SH", "ʃ"},
        {"T", "t"},   {"TH", "θ"},  {"UH", "ʊ"},  {"UW", "u"},  {"V", "v"},   {"W", "w"},
        {"Y", "j"},   {"Z", "z"},   {"ZH", "ʒ"},
    };
    std::map<std::string, Phone> t;
    for (const auto& [arpa, ipa] : rows) t.emplace(arpa, parse_phone(ipa));
    return t;
  }();
  return table;
}

std::optional<DictEntry> parse_cmudict_line(std::string_view raw, std::size_t lineno) {
  std::string_view line = chomp(raw);
  if (line.rfind(";;;", 0) == 0 || is_blank(line)) return std::nullopt;
  if (const auto hash = line.find(" #"); hash != std::string_view::npos) line = line.substr(0, hash);

  std::istringstream words{std::string(line)};
  std::string head;
  words >> head;

  DictEntry entry;
  if (const auto paren = head.find('('); paren != std::string::npos && head.back() == ')') {
    const std::string digits = head.substr(paren + 1, head.size() - paren - 2);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": bad alternate marker '" +
                                  head + "'");
    }
    entry.variant_index = std::stoi(digits);
    head.resize(paren);
  }
  std::transform(head.begin(), head.end(), head.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  entry.word = head;

  std::string sym;
  while (words >> sym) {
    std::string base = sym;
    while (!base.empty() && std::isdigit(static_cast<unsigned char>(base.back()))) base.pop_back();
    std::transform(base.begin(), base.end(), base.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    const auto& table = arpabet_table();
    auto it = table.find(base);
    if (it == table.end()) throw UnknownArpabetSymbol(lineno, sym);
    entry.pron.push_back(it->second);
  }
  if (entry.word.empty() || entry.pron.empty()) {
    throw std::invalid_argument("line " + std::to_string(lineno) + ": missing pronunciation");
  }
  return entry;
}

std::optional<DictEntry> CmudictReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++lineno_;
    try {
      if (auto entry = parse_cmudict_line(line, lineno_)) return entry;
    } catch (const std::exception& e) {
      diagnostics_.push_back({lineno_, e.what()});
    }
  }
  return std::nullopt;
}

std::vector<DictEntry> parse_cmudict(std::istream& in, std::vector<Diagnostic>* diagnostics) {
  CmudictReader reader(in);
  std::vector<DictEntry> out;
  while (auto e = reader.next()) out.push_back(std::move(*e));
  if (diagnostics) {
    diagnostics->insert(diagnostics->end(), reader.diagnostics().begin(), reader.diagnostics().end());
  }
  return out;
}

std::vector<AccentPair> parse_pairs(std::istream& in, std::vector<Diagnostic>* diagnostics) {
  std::vector<AccentPair> out;
  std::string raw;
  std::size_t lineno = 0;
  auto report = [&](std::string msg) {
    if (diagnostics) diagnostics->push_back({lineno, "line " + std::to_string(lineno) + ": " + std::move(msg)});
  };
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string_view line = chomp(raw);
    if (is_blank(line) || line.front() == '#') continue;
    const auto f = split_tabs(line);
    if (f.size() != 5) {
      report("expected 5 tab-separated fields, got " + std::to_string(f.size()));
      continue;
    }
    if (std::any_of(f.begin(), f.end(), [](std::string_view s) { return s.empty(); })) {
      report("empty field");
      continue;
    }
    try {
      AccentPair p{std::string(f[0]), std::string(f[1]), std::string(f[2]), tokenize(f[3]),
                   tokenize(f[4])};
      out.push_back(std::move(p));
    } catch (const IpaError& e) {
      report(e.what());
    }
  }
  return out;
}

void write_pairs(std::ostream& out, std::span<const AccentPair> pairs) {
  for (const AccentPair& p : pairs) {
    out << p.speaker_id << '\t' << p.accent_tag << '\t' << p.word << '\t' << render(p.gae)
        << '\t' << render(p.accented) << '\n';
  }
}

std::map<std::string, std::vector<AccentPair>> group_by_accent(std::span<const AccentPair> pairs) {
  std::map<std::string, std::vector<AccentPair>> groups;
  for (const AccentPair& p : pairs) groups[p.accent_tag].push_back(p);
  return groups;
}

std::string format_record(const AugRecord& rec) {
  std::string line = render(rec.accented);
  line += '\t';
  line += render(rec.canonical);
  line += '\t';
  line += rec.word;
  line += '\t';
  line += rec.accent_tag;
  return line;
}

std::optional<std::array<std::string_view, 4>> split_record(std::string_view line) {
  const auto f = split_tabs(chomp(line));
  if (f.size() != 4) return std::nullopt;
  return std::array<std::string_view, 4>{f[0], f[1], f[2], f[3]};
}

SplitRatio parse_ratio(std::string_view text) {
  SplitRatio r;
  int* parts[] = {&r.train, &r.val, &r.test};
  std::size_t start = 0;
  for (int k = 0; k < 3; ++k) {
    const auto slash = text.find('/', start);
    if ((k < 2) == (slash == std::string_view::npos)) {
      throw BadRatio("ratio must look like TRAIN/VAL/TEST, got '" + std::string(text) + "'");
    }
    const std::string part(text.substr(start, slash == std::string_view::npos ? std::string_view::npos
                                                                            : slash - start));
    if (part.empty() || !std::all_of(part.begin(), part.end(), ::isdigit)) {
      throw BadRatio("ratio parts must be non-negative integers, got '" + std::string(text) + "'");
    }
    *parts[k] = std::stoi(part);
    start = slash + 1;
  }
  if (r.train + r.val + r.test != 100) throw BadRatio("ratio parts must sum to 100");
  if (r.train <= 0) throw BadRatio("train share must be positive");
  return r;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Split assign_split(std::string_view canonical_ipa, const SplitRatio& ratio, std::uint64_t seed) {
  // 10000 buckets keep the rounding error of the proportions far below 1%.
  const std::uint64_t bucket = splitmix64(fnv1a64(canonical_ipa) ^ splitmix64(seed)) % 10000;
  if (bucket < static_cast<std::uint64_t>(ratio.train) * 100) return Split::Train;
  if (bucket < static_cast<std::uint64_t>(ratio.train + ratio.val) * 100) return Split::Val;
  return Split::Test;
}

SplitCounts split_dataset(std::istream& in, const SplitRatio& ratio, std::uint64_t seed,
                          std::ostream& train, std::ostream& val, std::ostream& test) {
  SplitCounts counts;
  std::string line;
  while (std::getline(in, line)) {
    const auto fields = split_record(line);
    if (!fields) {
      if (!is_blank(line)) ++counts.malformed;
      continue;
    }
    switch (assign_split((*fields)[1], ratio, seed)) {
      case Split::Train:
        train << chomp(line) << '\n';
        ++counts.train;
        break;
      case Split::Val:
        val << chomp(line) << '\n';
        ++counts.val;
        break;
      case Split::Test:
        test << chomp(line) << '\n';
        ++counts.test;
        break;
    }
  }
  return counts;
}

}  // namespace accentgen
