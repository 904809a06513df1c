#include "accentgen/stats.hpp"

#include <fstream>
#include <numeric>

#include "accentgen/alignment.hpp"

namespace accentgen {

namespace {

void add_counts(CountMap& into, const CountMap& from) {
  for (const auto& [k, v] : from) into[k] += v;
}

}  // namespace

std::int64_t SoundStats::replacement_total() const {
  return std::accumulate(replacements.begin(), replacements.end(), std::int64_t{0},
                         [](std::int64_t acc, const auto& kv) { return acc + kv.second; });
}

const SoundStats* StatsTable::find(const Phone& p) const {
  auto it = sounds.find(p);
  return it == sounds.end() ? nullptr : &it->second;
}

void add_pair(StatsTable& table, const PhoneSeq& gae, const PhoneSeq& accented) {
  const EditScript script = align_merged(gae, accented);
  for (const Phone& p : gae) ++table.sounds[p].occurrences;

  for (const EditOp& op : script.ops) {
    switch (op.kind) {
      case OpKind::Equal:
        break;
      case OpKind::Replace: {
        const Phone& key = op.src.front();
        ++table.sounds[key].replacements[op.dst];
        if (op.src_pos + op.src.size() == gae.size()) {
          ++table.positional[key].final_replacements[op.dst];
        }
        break;
      }
      case OpKind::Delete:
        for (std::size_t k = 0; k < op.src.size(); ++k) {
          const std::size_t at = op.src_pos + k;
          ++table.sounds[gae[at]].deletions;
          DeletionContext ctx;
          if (at > 0) ctx.left = gae[at - 1];
          if (at + 1 < gae.size()) ctx.right = gae[at + 1];
          ++table.positional[gae[at]].deletion_contexts[ctx];
        }
        break;
      case OpKind::Insert: {
        SoundStats& s = table.sounds[gae[op.anchor]];
        auto& into = op.side == AnchorSide::Before ? s.insertions_before : s.insertions_after;
        ++into[op.dst];
        break;
      }
    }
  }
}

StatsTable accumulate(std::span<const SeqPair> pairs, std::vector<SkippedPair>* skipped) {
  StatsTable table;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    try {
      add_pair(table, pairs[i].gae, pairs[i].accented);
    } catch (const AlignmentError& e) {
      if (skipped) skipped->push_back({i, e.what()});
    }
  }
  return table;
}

StatsTable merge(const StatsTable& a, const StatsTable& b) {
  if (a.accent_tag && b.accent_tag && *a.accent_tag != *b.accent_tag) {
    throw AccentTagMismatch("cannot merge stats for accents '" + *a.accent_tag + "' and '" +
                            *b.accent_tag + "'");
  }
  StatsTable out = a;
  if (!out.accent_tag) out.accent_tag = b.accent_tag;
  for (const auto& [phone, s] : b.sounds) {
    SoundStats& t = out.sounds[phone];
    t.occurrences += s.occurrences;
    t.deletions += s.deletions;
    add_counts(t.replacements, s.replacements);
    add_counts(t.insertions_before, s.insertions_before);
    add_counts(t.insertions_after, s.insertions_after);
  }
  for (const auto& [phone, pos] : b.positional) {
    PositionalStats& t = out.positional[phone];
    add_counts(t.final_replacements, pos.final_replacements);
    for (const auto& [ctx, n] : pos.deletion_contexts) t.deletion_contexts[ctx] += n;
  }
  return out;
}

ProbTable probabilities(const StatsTable& table, std::int64_t min_count) {
  if (min_count < 1) throw std::invalid_argument("min_count must be >= 1");
  ProbTable probs;
  for (const auto& [phone, s] : table.sounds) {
    SoundProbs& sp = probs.sounds[phone];
    sp.occurrences = s.occurrences;
    if (s.occurrences <= 0) continue;
    const double n = static_cast<double>(s.occurrences);
    auto collect = [&](const CountMap& counts, std::vector<Outcome>& into) {
      for (const auto& [seq, c] : counts) {
        if (c >= min_count) into.push_back({seq, static_cast<double>(c) / n});
      }
    };
    if (s.deletions >= min_count) sp.p_delete = static_cast<double>(s.deletions) / n;
    collect(s.replacements, sp.replacements);
    collect(s.insertions_before, sp.insert_before);
    collect(s.insertions_after, sp.insert_after);
    double changed = sp.p_delete;
    for (const Outcome& o : sp.replacements) changed += o.p;
    sp.p_keep = std::max(0.0, 1.0 - changed);
  }
  return probs;
}

// --- serialization --------------------------------------------------------

namespace {

constexpr const char* kBoundary = "#";

nlohmann::json counts_to_json(const CountMap& m) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [seq, n] : m) j[render(seq)] = n;
  return j;
}

CountMap counts_from_json(const nlohmann::json& j) {
  CountMap m;
  for (const auto& [key, value] : j.items()) {
    PhoneSeq seq = tokenize(key);
    if (seq.empty()) throw std::runtime_error("empty phone sequence key in stats");
    const auto n = value.get<std::int64_t>();
    if (n <= 0) throw std::runtime_error("non-positive count for " + key);
    m[std::move(seq)] += n;
  }
  return m;
}

}  // namespace

std::string render_context(const DeletionContext& ctx) {
  return (ctx.left ? render(*ctx.left) : kBoundary) + std::string(" ") +
         (ctx.right ? render(*ctx.right) : kBoundary);
}

DeletionContext parse_context(const std::string& key) {
  const auto space = key.find(' ');
  if (space == std::string::npos) throw std::runtime_error("bad deletion context '" + key + "'");
  auto side = [](const std::string& s) -> std::optional<Phone> {
    if (s == kBoundary) return std::nullopt;
    return parse_phone(s);
  };
  return {side(key.substr(0, space)), side(key.substr(space + 1))};
}

nlohmann::json to_json(const StatsTable& table) {
  nlohmann::json j;
  j["accent_tag"] = table.accent_tag ? nlohmann::json(*table.accent_tag) : nlohmann::json(nullptr);
  nlohmann::json sounds = nlohmann::json::object();
  for (const auto& [phone, s] : table.sounds) {
    sounds[render(phone)] = {
        {"occurrences", s.occurrences},
        {"deletions", s.deletions},
        {"replacements", counts_to_json(s.replacements)},
        {"insertions_before", counts_to_json(s.insertions_before)},
        {"insertions_after", counts_to_json(s.insertions_after)},
    };
  }
  j["sounds"] = std::move(sounds);

  nlohmann::json positional = nlohmann::json::object();
  for (const auto& [phone, pos] : table.positional) {
    if (pos.empty()) continue;
    nlohmann::json contexts = nlohmann::json::object();
    for (const auto& [ctx, n] : pos.deletion_contexts) contexts[render_context(ctx)] = n;
    positional[render(phone)] = {
        {"final_replacements", counts_to_json(pos.final_replacements)},
        {"deletion_contexts", std::move(contexts)},
    };
  }
  j["positional"] = std::move(positional);
  return j;
}

StatsTable stats_from_json(const nlohmann::json& j) {
  StatsTable table;
  if (j.contains("accent_tag") && !j["accent_tag"].is_null()) {
    table.accent_tag = j["accent_tag"].get<std::string>();
  }
  for (const auto& [key, v] : j.at("sounds").items()) {
    SoundStats s;
    s.occurrences = v.at("occurrences").get<std::int64_t>();
    s.deletions = v.at("deletions").get<std::int64_t>();
    s.replacements = counts_from_json(v.at("replacements"));
    s.insertions_before = counts_from_json(v.at("insertions_before"));
    s.insertions_after = counts_from_json(v.at("insertions_after"));
    if (s.occurrences < 0 || s.deletions < 0) throw std::runtime_error("negative count for " + key);
    std::int64_t changed = s.deletions;
    for (const auto& [seq, n] : s.replacements) changed += n;
    if (changed > s.occurrences) {
      throw std::runtime_error("deletions and replacements exceed occurrences for " + key);
    }
    table.sounds[parse_phone(key)] = std::move(s);
  }
  if (j.contains("positional")) {
    for (const auto& [key, v] : j["positional"].items()) {
      PositionalStats pos;
      if (v.contains("final_replacements")) pos.final_replacements = counts_from_json(v["final_replacements"]);
      if (v.contains("deletion_contexts")) {
        for (const auto& [ctx, n] : v["deletion_contexts"].items()) {
          pos.deletion_contexts[parse_context(ctx)] += n.get<std::int64_t>();
        }
      }
      table.positional[parse_phone(key)] = std::move(pos);
    }
  }
  return table;
}

void write_stats(const StatsTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json(table).dump(2) << '\n';
}

StatsTable read_stats(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stats file " + path.string());
  return stats_from_json(nlohmann::json::parse(in));
}

}  // namespace accentgen
