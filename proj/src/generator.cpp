#include "accentgen/generator.hpp"

#include <algorithm>
#include <future>
#include <sstream>
#include <stdexcept>

namespace accentgen {

void check_config(const GenConfig& cfg) {
  if (cfg.variants_per_word < 1) throw std::invalid_argument("variants_per_word must be >= 1");
  if (cfg.max_edits_per_word < 1) throw std::invalid_argument("max_edits_per_word must be >= 1");
  if (cfg.min_count < 1) throw std::invalid_argument("min_count must be >= 1");
  if (!(cfg.scale >= 0.0) || cfg.scale > 1e6) throw std::invalid_argument("scale must be >= 0");
  if (cfg.attempts_per_variant < 1) throw std::invalid_argument("attempts_per_variant must be >= 1");
}

std::mt19937_64 word_stream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(index)));
}

double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

// Scales `choices` and renormalizes them to total at most 1.  Returns true
// when clamping was needed.
bool scale_choices(std::vector<Sampler::Choice>& choices, double scale) {
  double total = 0.0;
  for (auto& c : choices) {
    c.p *= scale;
    total += c.p;
  }
  choices.erase(std::remove_if(choices.begin(), choices.end(),
                               [](const Sampler::Choice& c) { return c.p <= 0.0; }),
                choices.end());
  if (total <= 1.0) return false;
  for (auto& c : choices) c.p /= total;
  return true;
}

const Sampler::Choice* pick(const std::vector<Sampler::Choice>& choices, double u) {
  double acc = 0.0;
  for (const auto& c : choices) {
    acc += c.p;
    if (u < acc) return &c;
  }
  return nullptr;
}

}  // namespace

Sampler::Sampler(const ProbTable& probs, double scale) {
  for (const auto& [phone, sp] : probs.sounds) {
    Site site;
    if (sp.p_delete > 0.0) site.changes.push_back({sp.p_delete, {}});
    for (const Outcome& o : sp.replacements) site.changes.push_back({o.p, o.seq});
    for (const Outcome& o : sp.insert_before) site.before.push_back({o.p, o.seq});
    for (const Outcome& o : sp.insert_after) site.after.push_back({o.p, o.seq});

    bool clamped = scale_choices(site.changes, scale);
    clamped |= scale_choices(site.before, scale);
    clamped |= scale_choices(site.after, scale);
    if (clamped) {
      std::ostringstream msg;
      msg << "scale " << scale << " pushes change probability of '" << render(phone)
          << "' above 1; clamped";
      warnings_.push_back(msg.str());
    }
    if (site.mutable_site()) sites_.emplace(phone, std::move(site));
  }
}

const Sampler::Site* Sampler::find(const Phone& p) const {
  auto it = sites_.find(p);
  return it == sites_.end() ? nullptr : &it->second;
}

PhoneSeq Sampler::sample(const PhoneSeq& word, int max_edits, std::mt19937_64& rng) const {
  PhoneSeq out;
  out.reserve(word.size() + 2);
  int edits = 0;
  auto append = [&out](const PhoneSeq& s) { out.insert(out.end(), s.begin(), s.end()); };

  for (std::size_t i = 0; i < word.size(); ++i) {
    const Site* site = find(word[i]);
    if (site == nullptr || edits >= max_edits) {
      out.push_back(word[i]);
      continue;
    }
    if (i == 0 && !site->before.empty()) {
      if (const Choice* c = pick(site->before, unit_draw(rng))) {
        append(c->seq);
        ++edits;
      }
    }
    const Choice* change = nullptr;
    if (edits < max_edits && !site->changes.empty()) change = pick(site->changes, unit_draw(rng));
    if (change == nullptr) {
      out.push_back(word[i]);
    } else {
      append(change->seq);
      ++edits;
    }
    if (edits < max_edits && !site->after.empty()) {
      if (const Choice* c = pick(site->after, unit_draw(rng))) {
        append(c->seq);
        ++edits;
      }
    }
  }
  return out;
}

std::vector<PhoneSeq> Sampler::variants(const PhoneSeq& word, const GenConfig& cfg,
                                        std::uint64_t word_index) const {
  std::vector<PhoneSeq> out;
  const bool changeable = std::any_of(word.begin(), word.end(),
                                      [this](const Phone& p) { return find(p) != nullptr; });
  if (!changeable) {
    out.push_back(word);
    return out;
  }
  std::mt19937_64 rng = word_stream(cfg.seed, word_index);
  const long budget = static_cast<long>(cfg.variants_per_word) * cfg.attempts_per_variant;
  for (long attempt = 0; attempt < budget; ++attempt) {
    PhoneSeq v = sample(word, cfg.max_edits_per_word, rng);
    if (v.empty()) continue;
    if (std::find(out.begin(), out.end(), v) != out.end()) continue;
    out.push_back(std::move(v));
    if (out.size() == static_cast<std::size_t>(cfg.variants_per_word)) break;
  }
  return out;
}

std::vector<PhoneSeq> generate_variants(const PhoneSeq& word, const ProbTable& probs,
                                        const GenConfig& cfg) {
  check_config(cfg);
  if (word.empty()) throw std::invalid_argument("generate_variants: empty word");
  return Sampler(probs, cfg.scale).variants(word, cfg, 0);
}

std::vector<ScoredVariant> most_probable_variants(const PhoneSeq& word, const ProbTable& probs,
                                                  std::size_t k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const std::size_t n = word.size();
  std::vector<const SoundProbs*> sp(n);
  std::vector<double> keep(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    sp[i] = probs.find(word[i]);
    if (sp[i]) keep[i] = sp[i]->p_keep;
  }
  auto keep_except = [&](std::size_t skip) {
    double p = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != skip) p *= keep[j];
    }
    return p;
  };
  const double keep_all = keep_except(n);

  std::map<PhoneSeq, double> found;
  auto with = [&](std::size_t at, std::size_t drop, const PhoneSeq* insert) {
    PhoneSeq v(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(at));
    if (insert) v.insert(v.end(), insert->begin(), insert->end());
    v.insert(v.end(), word.begin() + static_cast<std::ptrdiff_t>(at + drop), word.end());
    return v;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!sp[i]) continue;
    const double rest = keep_except(i);
    if (sp[i]->p_delete > 0.0 && n > 1) found[with(i, 1, nullptr)] += sp[i]->p_delete * rest;
    for (const Outcome& o : sp[i]->replacements) found[with(i, 1, &o.seq)] += o.p * rest;
    if (i == 0) {
      for (const Outcome& o : sp[i]->insert_before) found[with(0, 0, &o.seq)] += o.p * keep_all;
    }
    for (const Outcome& o : sp[i]->insert_after) found[with(i + 1, 0, &o.seq)] += o.p * keep_all;
  }

  std::vector<std::pair<std::string, ScoredVariant>> ranked;
  ranked.reserve(found.size());
  for (auto& [seq, p] : found) {
    if (p > 0.0) ranked.push_back({render(seq), ScoredVariant{seq, p}});
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second.p != b.second.p) return a.second.p > b.second.p;
    return a.first < b.first;
  });
  std::vector<ScoredVariant> out;
  for (std::size_t i = 0; i < ranked.size() && i < k; ++i) out.push_back(std::move(ranked[i].second));
  return out;
}

AugmentSummary augment_corpus(const EntrySource& source, const ProbTable& probs,
                              const GenConfig& cfg, const RecordSink& sink) {
  check_config(cfg);
  const Sampler sampler(probs, cfg.scale);
  AugmentSummary summary;
  summary.warnings = sampler.warnings();

  constexpr std::size_t kBatch = 4096;
  const unsigned workers = std::max(1u, cfg.threads);
  std::vector<DictEntry> batch;
  std::vector<std::vector<PhoneSeq>> results;
  batch.reserve(kBatch);

  auto run_slice = [&](std::size_t begin, std::size_t end, std::uint64_t first_index) {
    for (std::size_t i = begin; i < end; ++i) {
      results[i] = sampler.variants(batch[i].pron, cfg, first_index + i);
    }
  };

  bool done = false;
  while (!done) {
    batch.clear();
    while (batch.size() < kBatch) {
      auto entry = source();
      if (!entry) {
        done = true;
        break;
      }
      if (entry->pron.empty()) continue;
      batch.push_back(std::move(*entry));
    }
    if (batch.empty()) break;

    const std::uint64_t first_index = summary.entries;
    results.assign(batch.size(), {});
    if (workers == 1) {
      run_slice(0, batch.size(), first_index);
    } else {
      std::vector<std::future<void>> jobs;
      const std::size_t step = (batch.size() + workers - 1) / workers;
      for (std::size_t b = 0; b < batch.size(); b += step) {
        jobs.push_back(std::async(std::launch::async, run_slice, b,
                                  std::min(batch.size(), b + step), first_index));
      }
      for (auto& j : jobs) j.get();
    }

    for (std::size_t i = 0; i < batch.size(); ++i) {
      AugRecord rec;
      rec.canonical = batch[i].pron;
      rec.word = batch[i].word;
      rec.accent_tag = cfg.accent_tag;
      for (PhoneSeq& v : results[i]) {
        rec.accented = std::move(v);
        sink(rec);
      }
      summary.records += results[i].size();
      summary.dedup_losses += static_cast<std::size_t>(cfg.variants_per_word) - results[i].size();
    }
    summary.entries += batch.size();
  }
  return summary;
}

}  // namespace accentgen
