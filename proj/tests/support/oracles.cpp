#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <stdexcept>
#include <tuple>

namespace oracle {

using accentgen::EditOp;
using accentgen::OpKind;
using accentgen::ProbTable;
using accentgen::SoundProbs;

int brute_force_cost(const PhoneSeq& a, const PhoneSeq& b) {
  int best = static_cast<int>(std::max(a.size(), b.size()));  // replace-all/insert-rest is always possible
  std::function<void(std::size_t, std::size_t, int)> go = [&](std::size_t i, std::size_t j, int cost) {
    if (cost >= best) return;
    if (i == a.size() && j == b.size()) {
      best = cost;
      return;
    }
    if (i < a.size() && j < b.size()) go(i + 1, j + 1, cost + (a[i] == b[j] ? 0 : 1));
    if (i < a.size()) go(i + 1, j, cost + 1);
    if (j < b.size()) go(i, j + 1, cost + 1);
  };
  go(0, 0, 0);
  return best;
}

bool replay(const accentgen::EditScript& script, const PhoneSeq& gae, const PhoneSeq& accented,
            std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  std::size_t i = 0, j = 0;
  PhoneSeq rebuilt;
  for (const EditOp& op : script.ops) {
    if (op.src_pos != i || op.dst_pos != j) return fail("non-contiguous positions");
    if (i + op.src.size() > gae.size() || j + op.dst.size() > accented.size()) {
      return fail("op runs past the end");
    }
    if (!std::equal(op.src.begin(), op.src.end(), gae.begin() + static_cast<std::ptrdiff_t>(i))) {
      return fail("src does not match gae");
    }
    switch (op.kind) {
      case OpKind::Equal:
        if (op.src != op.dst || op.src.empty()) return fail("bad Equal");
        break;
      case OpKind::Replace:
        if (op.src.empty() || op.dst.empty()) return fail("bad Replace");
        break;
      case OpKind::Delete:
        if (op.src.empty() || !op.dst.empty()) return fail("bad Delete");
        break;
      case OpKind::Insert: {
        if (!op.src.empty() || op.dst.empty()) return fail("bad Insert");
        const bool before = i == 0;
        if (before != (op.side == accentgen::AnchorSide::Before)) return fail("bad insert side");
        if (op.anchor != (before ? 0 : i - 1)) return fail("bad insert anchor");
        break;
      }
    }
    rebuilt.insert(rebuilt.end(), op.dst.begin(), op.dst.end());
    i += op.src.size();
    j += op.dst.size();
  }
  if (i != gae.size() || j != accented.size()) return fail("script does not cover both sides");
  if (rebuilt != accented) return fail("rebuilt sequence differs");
  return true;
}

namespace {

std::vector<PhoneSeq> outcomes(const std::vector<accentgen::Outcome>& list) {
  std::vector<PhoneSeq> out;
  for (const auto& o : list) {
    if (o.p > 0.0) out.push_back(o.seq);
  }
  return out;
}

bool matches_at(const PhoneSeq& v, std::size_t j, const PhoneSeq& s) {
  return j + s.size() <= v.size() &&
         std::equal(s.begin(), s.end(), v.begin() + static_cast<std::ptrdiff_t>(j));
}

}  // namespace

bool reachable(const PhoneSeq& word, const PhoneSeq& variant, const ProbTable& probs, int max_edits) {
  // Memoized search over (word position, variant position, edits used, stage).
  // Stage 0: before the change draw; stage 1: after it (insert-after pending).
  std::set<std::tuple<std::size_t, std::size_t, int, int>> dead;
  std::function<bool(std::size_t, std::size_t, int, int)> go = [&](std::size_t i, std::size_t j, int e,
                                                                   int stage) -> bool {
    if (e > max_edits) return false;
    if (i == word.size()) return j == variant.size();
    const auto key = std::make_tuple(i, j, e, stage);
    if (dead.count(key)) return false;
    const SoundProbs* sp = probs.find(word[i]);
    bool ok = false;
    if (stage == 0) {
      // Optional insertion before the first phone, then the change draw.
      auto change = [&](std::size_t jj, int ee) {
        if (matches_at(variant, jj, {word[i]}) && go(i, jj + 1, ee, 1)) return true;
        if (!sp) return false;
        if (sp->p_delete > 0.0 && go(i, jj, ee + 1, 1)) return true;
        for (const PhoneSeq& r : outcomes(sp->replacements)) {
          if (matches_at(variant, jj, r) && go(i, jj + r.size(), ee + 1, 1)) return true;
        }
        return false;
      };
      ok = change(j, e);
      if (!ok && i == 0 && sp) {
        for (const PhoneSeq& ins : outcomes(sp->insert_before)) {
          if (matches_at(variant, j, ins) && change(j + ins.size(), e + 1)) {
            ok = true;
            break;
          }
        }
      }
    } else {
      ok = go(i + 1, j, e, 0);
      if (!ok && sp) {
        for (const PhoneSeq& ins : outcomes(sp->insert_after)) {
          if (matches_at(variant, j, ins) && go(i + 1, j + ins.size(), e + 1, 0)) {
            ok = true;
            break;
          }
        }
      }
    }
    if (!ok) dead.insert(key);
    return ok;
  };
  return go(0, 0, 0, 0);
}

std::map<PhoneSeq, double> single_edit_distribution(const PhoneSeq& word, const ProbTable& probs) {
  std::map<PhoneSeq, double> dist;
  const std::size_t n = word.size();
  auto keep = [&](std::size_t i) {
    const SoundProbs* sp = probs.find(word[i]);
    return sp ? sp->p_keep : 1.0;
  };
  auto others_keep = [&](std::size_t skip) {
    double p = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != skip) p *= keep(i);
    }
    return p;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const SoundProbs* sp = probs.find(word[i]);
    if (!sp) continue;
    // Delete / replace at i.
    if (sp->p_delete > 0.0 && n > 1) {
      PhoneSeq v;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != i) v.push_back(word[k]);
      }
      dist[v] += sp->p_delete * others_keep(i);
    }
    for (const auto& o : sp->replacements) {
      PhoneSeq v;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) {
          for (const Phone& p : o.seq) v.push_back(p);
        } else {
          v.push_back(word[k]);
        }
      }
      dist[v] += o.p * others_keep(i);
    }
    // Insertions leave every phone in place.
    const double all_keep = others_keep(n);
    for (const auto& o : sp->insert_after) {
      PhoneSeq v;
      for (std::size_t k = 0; k < n; ++k) {
        v.push_back(word[k]);
        if (k == i) {
          for (const Phone& p : o.seq) v.push_back(p);
        }
      }
      dist[v] += o.p * all_keep;
    }
    if (i == 0) {
      for (const auto& o : sp->insert_before) {
        PhoneSeq v = o.seq;
        for (const Phone& p : word) v.push_back(p);
        dist[v] += o.p * all_keep;
      }
    }
  }
  for (auto it = dist.begin(); it != dist.end();) {
    it = it->second > 0.0 ? std::next(it) : dist.erase(it);
  }
  return dist;
}

PhoneSeq random_seq(std::mt19937_64& rng, int min_len, int max_len, int alphabet) {
  static const char32_t kLetters[] = U"ptkbdgaeiosznmlrwjfv";
  std::uniform_int_distribution<int> len(min_len, max_len);
  std::uniform_int_distribution<int> pick(0, alphabet - 1);
  PhoneSeq out(static_cast<std::size_t>(len(rng)));
  for (Phone& p : out) p.base = std::u32string(1, kLetters[pick(rng)]);
  return out;
}

PhoneSeq ipa(const char* text) { return accentgen::tokenize(text); }

std::filesystem::path data_dir() { return ACCENTGEN_DATA_DIR; }

std::filesystem::path fixture(const std::string& name) { return data_dir() / "fixtures" / name; }

std::vector<accentgen::AccentPair> load_pairs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<accentgen::Diagnostic> diags;
  auto pairs = accentgen::parse_pairs(in, &diags);
  if (!diags.empty()) throw std::runtime_error(path.string() + ": " + diags.front().message);
  return pairs;
}

std::vector<accentgen::SeqPair> seq_pairs(const std::vector<accentgen::AccentPair>& pairs) {
  std::vector<accentgen::SeqPair> out;
  for (const auto& p : pairs) out.push_back({p.gae, p.accented});
  return out;
}

std::vector<accentgen::SeqPair> simplified_pairs(const std::vector<accentgen::AccentPair>& pairs,
                                                 const accentgen::ReductionMap& map) {
  std::vector<accentgen::SeqPair> out;
  for (const auto& p : pairs) out.push_back({simplify(p.gae, map), simplify(p.accented, map)});
  return out;
}

}  // namespace oracle
