#include "accentgen/generalizations.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace accentgen {

namespace {

const std::array<std::pair<Rule, std::string_view>, kRuleCount> kNames = {{
    {Rule::FinalObstruentDevoicing, "final obstruent devoicing"},
    {Rule::ConsonantVoicing, "consonant voicing"},
    {Rule::StopToFricative, "stop → fricative"},
    {Rule::InterdentalFricativeChange, "interdental fricative change"},
    {Rule::Palatalization, "palatalization"},
    {Rule::Retroflexing, "retroflexing"},
    {Rule::AlveolarApproximantChange, "alveolar approximant change"},
    {Rule::WToFricative, "w → fricative"},
    {Rule::Dentalization, "dentalization"},
    {Rule::HToVelarFricative, "h → velar fricative"},
    {Rule::ShToS, "sh → s"},
    {Rule::StopToImplosive, "stop → implosive"},
    {Rule::Labialization, "labialization"},
    {Rule::VowelRaising, "vowel raising"},
    {Rule::VowelShortening, "vowel shortening"},
    {Rule::VowelLowering, "vowel lowering"},
    {Rule::VowelInsertion, "vowel insertion"},
    {Rule::ConsonantDeletion, "consonant deletion"},
    {Rule::ClusterReduction, "cluster reduction"},
    {Rule::ConsonantInsertion, "consonant insertion"},
}};

bool base_is(const Phone& p, std::u32string_view letter) { return p.base == letter; }

bool base_in(const Phone& p, std::initializer_list<std::u32string_view> letters) {
  return std::any_of(letters.begin(), letters.end(),
                     [&](std::u32string_view l) { return p.base == l; });
}

bool same_articulation(const PhoneFeatures& a, const PhoneFeatures& b) {
  return a.manner == b.manner && a.place == b.place;
}

int height_delta(const PhoneFeatures& from, const PhoneFeatures& to) {
  return static_cast<int>(to.height) - static_cast<int>(from.height);
}

// Long/short pair such as iː/ɪ or i/ɪ: same backness, at most one height step apart.
bool length_counterparts(const PhoneFeatures& a, const PhoneFeatures& b) {
  return a.is_long != b.is_long && a.backness == b.backness && std::abs(height_delta(a, b)) <= 1;
}

// The phone of `dst` that stands in for the replaced sound: the first one of
// the same category.
std::optional<Phone> counterpart(const PhoneFeatures& fs, const PhoneSeq& dst, const FeatureDb& db) {
  for (const Phone& p : dst) {
    if (db.at(p).category == fs.category) return p;
  }
  return std::nullopt;
}

bool all_of_category(const PhoneSeq& seq, Category c, const FeatureDb& db) {
  return !seq.empty() &&
         std::all_of(seq.begin(), seq.end(), [&](const Phone& p) { return db.at(p).category == c; });
}

bool is_devoicing(const PhoneFeatures& fs, const PhoneFeatures& ft) {
  return fs.consonant() && ft.consonant() && fs.obstruent() && fs.voicing == Voicing::Voiced &&
         ft.voicing == Voicing::Voiceless && same_articulation(fs, ft);
}

void check_covered(const StatsTable& table, const FeatureDb& db) {
  auto need = [&](const Phone& p) { (void)db.at(p); };
  auto need_seq = [&](const PhoneSeq& s) { std::for_each(s.begin(), s.end(), need); };
  for (const auto& [phone, s] : table.sounds) {
    need(phone);
    for (const auto& [seq, n] : s.replacements) need_seq(seq);
    for (const auto& [seq, n] : s.insertions_before) need_seq(seq);
    for (const auto& [seq, n] : s.insertions_after) need_seq(seq);
  }
  for (const auto& [phone, pos] : table.positional) {
    need(phone);
    for (const auto& [seq, n] : pos.final_replacements) need_seq(seq);
    for (const auto& [ctx, n] : pos.deletion_contexts) {
      if (ctx.left) need(*ctx.left);
      if (ctx.right) need(*ctx.right);
    }
  }
}

}  // namespace

const std::array<Rule, kRuleCount>& all_rules() {
  static const std::array<Rule, kRuleCount> rules = [] {
    std::array<Rule, kRuleCount> r{};
    for (std::size_t i = 0; i < kRuleCount; ++i) r[i] = kNames[i].first;
    return r;
  }();
  return rules;
}

std::string_view rule_name(Rule r) {
  for (const auto& [rule, name] : kNames) {
    if (rule == r) return name;
  }
  return "?";
}

std::optional<Rule> rule_from_name(std::string_view name) {
  for (const auto& [rule, n] : kNames) {
    if (n == name) return rule;
  }
  return std::nullopt;
}

std::int64_t count_in(const StatsTable& table, const ChangeRef& ref) {
  auto lookup = [](const CountMap& m, const PhoneSeq& k) -> std::int64_t {
    auto it = m.find(k);
    return it == m.end() ? 0 : it->second;
  };
  if (ref.kind == ChangeRef::Kind::FinalReplacement || ref.kind == ChangeRef::Kind::DeletionInContext) {
    auto it = table.positional.find(ref.sound);
    if (it == table.positional.end()) return 0;
    if (ref.kind == ChangeRef::Kind::FinalReplacement) return lookup(it->second.final_replacements, ref.seq);
    auto c = it->second.deletion_contexts.find(ref.context);
    return c == it->second.deletion_contexts.end() ? 0 : c->second;
  }
  const SoundStats* s = table.find(ref.sound);
  if (!s) return 0;
  switch (ref.kind) {
    case ChangeRef::Kind::Replacement: return lookup(s->replacements, ref.seq);
    case ChangeRef::Kind::Deletion: return s->deletions;
    case ChangeRef::Kind::InsertBefore: return lookup(s->insertions_before, ref.seq);
    case ChangeRef::Kind::InsertAfter: return lookup(s->insertions_after, ref.seq);
    default: return 0;
  }
}

std::string describe(const ChangeRef& ref) {
  const std::string s = render(ref.sound);
  switch (ref.kind) {
    case ChangeRef::Kind::Replacement: return s + "→" + render(ref.seq);
    case ChangeRef::Kind::FinalReplacement: return s + "→" + render(ref.seq) + " / _#";
    case ChangeRef::Kind::Deletion: return s + "→∅";
    case ChangeRef::Kind::DeletionInContext:
      return s + "→∅ / " + (ref.context.left ? render(*ref.context.left) : "#") + "_" +
             (ref.context.right ? render(*ref.context.right) : "#");
    case ChangeRef::Kind::InsertBefore: return "∅→" + render(ref.seq) + " / _" + s;
    case ChangeRef::Kind::InsertAfter: return "∅→" + render(ref.seq) + " / " + s + "_";
  }
  return s;
}

std::set<Rule> GeneralizationReport::detected() const {
  std::set<Rule> out;
  for (const auto& [rule, r] : rules) {
    if (r.detected) out.insert(rule);
  }
  return out;
}

std::set<Rule> replacement_rules(const Phone& src, const PhoneSeq& dst, const FeatureDb& db) {
  std::set<Rule> hits;
  const PhoneFeatures fs = db.at(src);
  const auto target = counterpart(fs, dst, db);
  if (!target) return hits;
  const Phone& t = *target;
  const PhoneFeatures ft = db.at(t);

  if (fs.consonant()) {
    if (fs.voicing == Voicing::Voiceless && ft.voicing == Voicing::Voiced && same_articulation(fs, ft)) {
      hits.insert(Rule::ConsonantVoicing);
    }
    if (fs.manner == Manner::Stop && ft.manner == Manner::Fricative) {
      const auto d = place_distance(fs.place, ft.place);
      if (d && *d <= 1) hits.insert(Rule::StopToFricative);
    }
    if (base_in(src, {U"θ", U"ð"}) && base_in(t, {U"t", U"d", U"s", U"z", U"f", U"v"})) {
      hits.insert(Rule::InterdentalFricativeChange);
    }
    const auto palatal = [](Place p) { return p == Place::Palatal || p == Place::Postalveolar; };
    if ((ft.palatalized && !fs.palatalized) || (palatal(ft.place) && !palatal(fs.place))) {
      hits.insert(Rule::Palatalization);
    }
    if (ft.place == Place::Retroflex && fs.place != Place::Retroflex) hits.insert(Rule::Retroflexing);
    if (base_is(src, U"ɹ") && base_in(t, {U"r", U"ɾ", U"ʀ", U"l", U"w"})) {
      hits.insert(Rule::AlveolarApproximantChange);
    }
    if (base_is(src, U"w") && base_in(t, {U"v", U"f", U"β"})) hits.insert(Rule::WToFricative);
    if (fs.place == Place::Alveolar && ft.place == Place::Dental) hits.insert(Rule::Dentalization);
    // A velar fricative collapses to k in the 39-sound inventory, so any
    // dorsal obstruent counts.
    if (base_is(src, U"h") && (ft.place == Place::Velar || ft.place == Place::Uvular) &&
        (ft.manner == Manner::Fricative || ft.manner == Manner::Stop)) {
      hits.insert(Rule::HToVelarFricative);
    }
    if ((base_is(src, U"ʃ") && base_is(t, U"s")) || (base_is(src, U"ʒ") && base_is(t, U"z"))) {
      hits.insert(Rule::ShToS);
    }
    if (fs.manner == Manner::Stop && ft.manner == Manner::Implosive) hits.insert(Rule::StopToImplosive);
    if (ft.labialized && !fs.labialized) hits.insert(Rule::Labialization);
  } else {
    const bool pair = length_counterparts(fs, ft);
    if (fs.is_long && !ft.is_long && pair) hits.insert(Rule::VowelShortening);
    if (!pair && fs.height != Height::None && ft.height != Height::None) {
      const int dh = height_delta(fs, ft);
      if (dh < 0) hits.insert(Rule::VowelRaising);
      if (dh > 0) hits.insert(Rule::VowelLowering);
    }
  }
  return hits;
}

GeneralizationReport detect(const StatsTable& table, const FeatureDb& db, std::int64_t min_evidence) {
  if (min_evidence < 1) throw std::invalid_argument("min_evidence must be >= 1");
  check_covered(table, db);

  GeneralizationReport report;
  report.min_evidence = min_evidence;
  for (Rule r : all_rules()) report.rules[r];

  auto credit = [&](Rule r, ChangeRef ref, std::int64_t n) {
    if (n <= 0) return;
    RuleResult& rr = report.rules[r];
    rr.total += n;
    rr.evidence.push_back({std::move(ref), n});
  };

  for (const auto& [phone, s] : table.sounds) {
    const PhoneFeatures fs = db.at(phone);
    for (const auto& [dst, n] : s.replacements) {
      for (Rule r : replacement_rules(phone, dst, db)) {
        credit(r, {ChangeRef::Kind::Replacement, phone, dst, {}}, n);
      }
    }
    if (fs.consonant() && s.deletions > 0) {
      credit(Rule::ConsonantDeletion, {ChangeRef::Kind::Deletion, phone, {}, {}}, s.deletions);
    }
    auto insertions = [&](const CountMap& m, ChangeRef::Kind kind) {
      for (const auto& [seq, n] : m) {
        if (all_of_category(seq, Category::Vowel, db)) credit(Rule::VowelInsertion, {kind, phone, seq, {}}, n);
        if (all_of_category(seq, Category::Consonant, db)) {
          credit(Rule::ConsonantInsertion, {kind, phone, seq, {}}, n);
        }
      }
    };
    insertions(s.insertions_before, ChangeRef::Kind::InsertBefore);
    insertions(s.insertions_after, ChangeRef::Kind::InsertAfter);
  }

  for (const auto& [phone, pos] : table.positional) {
    const PhoneFeatures fs = db.at(phone);
    for (const auto& [dst, n] : pos.final_replacements) {
      const auto t = counterpart(fs, dst, db);
      if (t && is_devoicing(fs, db.at(*t))) {
        credit(Rule::FinalObstruentDevoicing, {ChangeRef::Kind::FinalReplacement, phone, dst, {}}, n);
      }
    }
    if (!fs.consonant()) continue;
    for (const auto& [ctx, n] : pos.deletion_contexts) {
      const bool left = ctx.left && db.at(*ctx.left).consonant();
      const bool right = ctx.right && db.at(*ctx.right).consonant();
      if (left || right) {
        credit(Rule::ClusterReduction, {ChangeRef::Kind::DeletionInContext, phone, {}, ctx}, n);
      }
    }
  }

  for (auto& [rule, rr] : report.rules) rr.detected = rr.total >= min_evidence;
  return report;
}

std::vector<ComparisonRow> compare_inventories(const GeneralizationReport& full,
                                               const GeneralizationReport& simplified) {
  const auto f = full.detected();
  const auto s = simplified.detected();
  std::vector<ComparisonRow> rows;
  for (Rule r : all_rules()) rows.push_back({r, s.count(r) != 0, f.count(r) != 0});
  return rows;
}

nlohmann::json to_json(const GeneralizationReport& report) {
  nlohmann::json j = nlohmann::json::object();
  for (Rule r : all_rules()) {
    nlohmann::json ev = nlohmann::json::array();
    auto it = report.rules.find(r);
    bool detected = false;
    if (it != report.rules.end()) {
      detected = it->second.detected;
      for (const Evidence& e : it->second.evidence) ev.push_back({{"change", describe(e.ref)}, {"count", e.count}});
    }
    j[std::string(rule_name(r))] = {{"detected", detected}, {"evidence", std::move(ev)}};
  }
  return j;
}

namespace {

std::size_t display_width(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::string pad(std::string_view s, std::size_t width) {
  std::string out(s);
  for (std::size_t w = display_width(s); w < width; ++w) out += ' ';
  return out;
}

}  // namespace

std::string format_report(const GeneralizationReport& report) {
  std::ostringstream out;
  out << "min_evidence " << report.min_evidence << '\n';
  for (Rule r : all_rules()) {
    const RuleResult& rr = report.rules.at(r);
    out << (rr.detected ? "[x] " : "[ ] ") << pad(rule_name(r), 30) << rr.total;
    if (!rr.evidence.empty()) {
      out << "  (";
      for (std::size_t i = 0; i < rr.evidence.size(); ++i) {
        if (i) out << ", ";
        out << describe(rr.evidence[i].ref) << ": " << rr.evidence[i].count;
      }
      out << ')';
    }
    out << '\n';
  }
  out << "detected " << report.detected().size() << '/' << kRuleCount << '\n';
  return out.str();
}

std::string format_comparison(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  out << pad("Generalizations", 30) << "CMU  GMU\n";
  std::size_t cmu = 0, gmu = 0;
  for (const ComparisonRow& row : rows) {
    out << pad(rule_name(row.rule), 30) << (row.simplified ? " ✓   " : "     ")
        << (row.full ? " ✓" : "") << '\n';
    cmu += row.simplified;
    gmu += row.full;
  }
  out << pad("total", 30) << pad(std::to_string(cmu), 5) << gmu << '\n';
  return out.str();
}

}  // namespace accentgen
