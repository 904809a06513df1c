#include "accentgen/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "accentgen/alignment.hpp"
#include "accentgen/corpus.hpp"
#include "accentgen/generalizations.hpp"
#include "accentgen/generator.hpp"
#include "accentgen/reduction_map.hpp"
#include "accentgen/stats.hpp"

namespace accentgen::cli {

namespace {

// Raised for data problems; maps to exit code 1.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

class Input {
 public:
  Input(const std::string& path, std::istream& fallback) {
    if (path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ifstream>(path);
      if (!*file_) throw DataError("cannot open " + path);
      stream_ = file_.get();
    }
  }
  std::istream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::istream* stream_ = nullptr;
};

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw DataError("cannot write " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

StatsTable load_stats(const std::string& path, Io& io) {
  Input in(path, io.in);
  try {
    return stats_from_json(nlohmann::json::parse(in.get()));
  } catch (const nlohmann::json::exception& e) {
    throw DataError("bad stats file " + path + ": " + e.what());
  }
}

void report(const std::vector<Diagnostic>& diags, Io& io) {
  for (const Diagnostic& d : diags) io.err << "warning: " << d.message << '\n';
}

// --- simplify -------------------------------------------------------------

struct SimplifyArgs {
  std::string map_path;
  std::string in = "-";
  std::string out = "-";
  bool skip_unmapped = false;
};

int cmd_simplify(const SimplifyArgs& a, Io& io) {
  const ReductionMap map = ReductionMap::load(a.map_path);
  Input in(a.in, io.in);
  Output out(a.out, io.out);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in.get(), line)) {
    ++lineno;
    std::istringstream words(line);
    std::string word;
    bool first = true;
    while (words >> word) {
      std::string simplified;
      std::string problem;
      try {
        simplified = render(simplify(tokenize(word), map));
      } catch (const IpaError& e) {
        problem = e.what();
      } catch (const UnmappedPhone& e) {
        problem = e.what();
      }
      if (!problem.empty()) {
        if (!a.skip_unmapped) {
          io.err << "error: line " << lineno << ", word '" << word << "': " << problem << '\n';
          return kUsageError;
        }
        io.err << "warning: line " << lineno << ": skipped '" << word << "': " << problem << '\n';
        continue;
      }
      if (simplified.empty()) continue;
      if (!first) out.get() << ' ';
      out.get() << simplified;
      first = false;
    }
    out.get() << '\n';
  }
  return kOk;
}

// --- stats ------------------------------------------------------------------

struct StatsArgs {
  std::string pairs;
  std::string accent;
  std::string map_path;
  std::string out = "-";
};

int cmd_stats(const StatsArgs& a, Io& io) {
  std::vector<Diagnostic> diags;
  std::vector<AccentPair> pairs;
  {
    Input in(a.pairs, io.in);
    pairs = parse_pairs(in.get(), &diags);
  }
  report(diags, io);

  if (!a.accent.empty()) {
    auto groups = group_by_accent(pairs);
    auto it = groups.find(a.accent);
    if (it == groups.end()) throw DataError("no pairs with accent tag '" + a.accent + "'");
    pairs = std::move(it->second);
  }
  if (pairs.empty()) throw DataError("no usable pairs in " + a.pairs);

  std::optional<ReductionMap> map;
  if (!a.map_path.empty()) map = ReductionMap::load(a.map_path);

  std::vector<SeqPair> seqs;
  seqs.reserve(pairs.size());
  for (const AccentPair& p : pairs) {
    if (!map) {
      seqs.push_back({p.gae, p.accented});
      continue;
    }
    try {
      SeqPair s{simplify(p.gae, *map), simplify(p.accented, *map)};
      if (s.gae.empty() || s.accented.empty()) {
        io.err << "warning: " << p.speaker_id << " '" << p.word << "' simplifies to an empty word; skipped\n";
        continue;
      }
      seqs.push_back(std::move(s));
    } catch (const UnmappedPhone& e) {
      io.err << "warning: " << p.speaker_id << " '" << p.word << "': " << e.what() << "; skipped\n";
    }
  }
  if (seqs.empty()) throw DataError("no pairs left after simplification");

  std::vector<SkippedPair> skipped;
  StatsTable table = accumulate(seqs, &skipped);
  for (const SkippedPair& s : skipped) io.err << "warning: pair " << s.index << ": " << s.reason << '\n';

  if (!a.accent.empty()) {
    table.accent_tag = a.accent;
  } else {
    const auto groups = group_by_accent(pairs);
    if (groups.size() == 1) table.accent_tag = groups.begin()->first;
  }
  Output out(a.out, io.out);
  out.get() << to_json(table).dump(2) << '\n';
  return kOk;
}

// --- generate -------------------------------------------------------------

struct GenerateArgs {
  std::string stats;
  std::string dict;
  std::string out = "-";
  std::string accent_tag;
  GenConfig cfg;
};

int cmd_generate(const GenerateArgs& a, Io& io) {
  const StatsTable table = load_stats(a.stats, io);
  GenConfig cfg = a.cfg;
  cfg.accent_tag = !a.accent_tag.empty() ? a.accent_tag : table.accent_tag.value_or("unknown");
  const ProbTable probs = probabilities(table, cfg.min_count);

  Input in(a.dict, io.in);
  Output out(a.out, io.out);
  CmudictReader reader(in.get());
  std::ostream& sink = out.get();

  const auto start = std::chrono::steady_clock::now();
  const AugmentSummary summary = augment_corpus(
      [&reader] { return reader.next(); }, probs, cfg,
      [&sink](const AugRecord& rec) { sink << format_record(rec) << '\n'; });
  sink.flush();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  report(reader.diagnostics(), io);
  for (const std::string& w : summary.warnings) io.err << "warning: " << w << '\n';
  io.err << "entries " << summary.entries << "  records " << summary.records << "  dedup_losses "
         << summary.dedup_losses << "  runtime " << secs << "s\n";
  return kOk;
}

// --- rank -------------------------------------------------------------------

struct RankArgs {
  std::string stats;
  std::string word;
  std::size_t k = 5;
  std::int64_t min_count = 1;
};

int cmd_rank(const RankArgs& a, Io& io) {
  const StatsTable table = load_stats(a.stats, io);
  const PhoneSeq word = tokenize(a.word);
  if (word.empty()) throw DataError("empty word");
  for (const ScoredVariant& v : most_probable_variants(word, probabilities(table, a.min_count), a.k)) {
    io.out << render(v.seq) << '\t' << v.p << '\n';
  }
  return kOk;
}

// --- detect / compare ----------------------------------------------------------

struct DetectArgs {
  std::string stats;
  std::string features;
  std::int64_t min_evidence = 2;
  std::string format = "json";
};

int cmd_detect(const DetectArgs& a, Io& io) {
  const FeatureDb db = FeatureDb::load(a.features);
  const GeneralizationReport rep = detect(load_stats(a.stats, io), db, a.min_evidence);
  if (a.format == "json") {
    io.out << to_json(rep).dump(2) << '\n';
  } else {
    io.out << format_report(rep);
  }
  return kOk;
}

struct CompareArgs {
  std::string full;
  std::string simplified;
  std::string features;
  std::int64_t min_evidence = 2;
  std::string format = "text";
};

int cmd_compare(const CompareArgs& a, Io& io) {
  const FeatureDb db = FeatureDb::load(a.features);
  const auto rows = compare_inventories(detect(load_stats(a.full, io), db, a.min_evidence),
                                        detect(load_stats(a.simplified, io), db, a.min_evidence));
  if (a.format == "json") {
    nlohmann::json j = nlohmann::json::object();
    for (const ComparisonRow& r : rows) {
      j[std::string(rule_name(r.rule))] = {{"simplified", r.simplified}, {"full", r.full}};
    }
    io.out << j.dump(2) << '\n';
  } else {
    io.out << format_comparison(rows);
  }
  return kOk;
}

// --- align --------------------------------------------------------------------

struct AlignArgs {
  std::string gae;
  std::string accented;
  std::string format = "text";
};

int cmd_align(const AlignArgs& a, Io& io) {
  const EditScript raw = align(tokenize(a.gae), tokenize(a.accented));
  const EditScript merged = merge_ops(raw);
  if (a.format == "json") {
    static const char* kinds[] = {"equal", "replace", "insert", "delete"};
    nlohmann::json ops = nlohmann::json::array();
    for (const EditOp& op : merged.ops) {
      ops.push_back({{"op", kinds[static_cast<int>(op.kind)]}, {"src", render(op.src)}, {"dst", render(op.dst)}});
    }
    io.out << nlohmann::json{{"cost", merged.cost}, {"ops", ops}}.dump(2) << '\n';
  } else {
    io.out << format_script(merged);
  }
  return kOk;
}

// --- split ----------------------------------------------------------------------

struct SplitArgs {
  std::string in;
  std::string ratio = "80/10/10";
  std::uint64_t seed = 0;
  std::string prefix;
};

int cmd_split(const SplitArgs& a, Io& io) {
  SplitRatio ratio;
  try {
    ratio = parse_ratio(a.ratio);
  } catch (const BadRatio& e) {
    io.err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  std::string prefix = a.prefix;
  if (prefix.empty()) {
    if (a.in == "-") {
      io.err << "error: --out-prefix is required when reading stdin\n";
      return kUsageError;
    }
    prefix = a.in;
  }
  Input in(a.in, io.in);
  Output train(prefix + ".train", io.out);
  Output val(prefix + ".val", io.out);
  Output test(prefix + ".test", io.out);
  const SplitCounts c = split_dataset(in.get(), ratio, a.seed, train.get(), val.get(), test.get());
  io.err << "train " << c.train << "  val " << c.val << "  test " << c.test;
  if (c.malformed) io.err << "  malformed " << c.malformed;
  io.err << '\n';
  return c.malformed ? kDataError : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Io io{in, out, err};
  CLI::App app{"Accent statistics, generalization detection and accented corpus generation",
               "accentgen"};
  app.require_subcommand(1);

  SimplifyArgs simplify_args;
  auto* simplify_cmd = app.add_subcommand("simplify", "Reduce rich IPA words to the target inventory");
  simplify_cmd->add_option("--reduction-map", simplify_args.map_path, "Reduction map file")->required();
  simplify_cmd->add_option("--in", simplify_args.in, "Input text, '-' for stdin");
  simplify_cmd->add_option("--out", simplify_args.out, "Output text, '-' for stdout");
  simplify_cmd->add_flag("--skip-unmapped", simplify_args.skip_unmapped, "Drop words with unmapped phones");

  StatsArgs stats_args;
  auto* stats_cmd = app.add_subcommand("stats", "Accumulate per-sound change statistics");
  stats_cmd->add_option("--pairs", stats_args.pairs, "Accent pair TSV")->required();
  stats_cmd->add_option("--accent", stats_args.accent, "Only use pairs with this accent tag");
  stats_cmd->add_option("--reduction-map", stats_args.map_path, "Simplify both sides first");
  stats_cmd->add_option("--out", stats_args.out, "Stats JSON, '-' for stdout");

  GenerateArgs gen_args;
  auto* gen_cmd = app.add_subcommand("generate", "Generate an augmented accented corpus");
  gen_cmd->add_option("--stats", gen_args.stats, "Stats JSON")->required();
  gen_cmd->add_option("--dict", gen_args.dict, "CMU-format dictionary")->required();
  gen_cmd->add_option("--n", gen_args.cfg.variants_per_word, "Variants per word")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen_args.cfg.seed, "PRNG seed");
  gen_cmd->add_option("--max-edits", gen_args.cfg.max_edits_per_word, "Changes per variant")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--scale", gen_args.cfg.scale, "Multiplier on change probabilities")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--min-count", gen_args.cfg.min_count, "Drop changes seen fewer times")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--attempts", gen_args.cfg.attempts_per_variant, "Draws per requested variant")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--threads", gen_args.cfg.threads, "Worker threads");
  gen_cmd->add_option("--accent-tag", gen_args.accent_tag, "Tag written to every record");
  gen_cmd->add_option("--out", gen_args.out, "Output TSV, '-' for stdout");

  RankArgs rank_args;
  auto* rank_cmd = app.add_subcommand("rank", "Most probable single-edit variants of a word");
  rank_cmd->add_option("word", rank_args.word, "IPA word")->required();
  rank_cmd->add_option("--stats", rank_args.stats, "Stats JSON")->required();
  rank_cmd->add_option("--k", rank_args.k, "How many")->check(CLI::PositiveNumber);
  rank_cmd->add_option("--min-count", rank_args.min_count, "Drop changes seen fewer times")->check(CLI::PositiveNumber);

  DetectArgs detect_args;
  auto* detect_cmd = app.add_subcommand("detect", "Report phonological generalizations in a stats file");
  detect_cmd->add_option("--stats", detect_args.stats, "Stats JSON")->required();
  detect_cmd->add_option("--features", detect_args.features, "Feature database TSV")->required();
  detect_cmd->add_option("--min-evidence", detect_args.min_evidence, "Minimum supporting count")->check(CLI::PositiveNumber);
  detect_cmd->add_option("--format", detect_args.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  CompareArgs cmp_args;
  auto* cmp_cmd = app.add_subcommand("compare", "Compare generalizations on full and simplified stats");
  cmp_cmd->add_option("--stats-full", cmp_args.full, "Stats from full transcriptions")->required();
  cmp_cmd->add_option("--stats-simplified", cmp_args.simplified, "Stats from simplified transcriptions")->required();
  cmp_cmd->add_option("--features", cmp_args.features, "Feature database TSV")->required();
  cmp_cmd->add_option("--min-evidence", cmp_args.min_evidence, "Minimum supporting count")->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--format", cmp_args.format, "text or json")->check(CLI::IsMember({"json", "text"}));

  AlignArgs align_args;
  auto* align_cmd = app.add_subcommand("align", "Show the merged edit script between two IPA words");
  align_cmd->add_option("gae", align_args.gae, "Reference (GAE) word")->required();
  align_cmd->add_option("accented", align_args.accented, "Accented word")->required();
  align_cmd->add_option("--format", align_args.format, "text or json")->check(CLI::IsMember({"json", "text"}));

  SplitArgs split_args;
  auto* split_cmd = app.add_subcommand("split", "Split an augmented corpus into train/val/test by canonical form");
  split_cmd->add_option("--in", split_args.in, "Augmented corpus TSV")->required();
  split_cmd->add_option("--ratio", split_args.ratio, "TRAIN/VAL/TEST percentages");
  split_cmd->add_option("--seed", split_args.seed, "Hash seed");
  split_cmd->add_option("--out-prefix", split_args.prefix, "Output prefix (default: input path)");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("accentgen");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*simplify_cmd) return cmd_simplify(simplify_args, io);
    if (*stats_cmd) return cmd_stats(stats_args, io);
    if (*gen_cmd) return cmd_generate(gen_args, io);
    if (*rank_cmd) return cmd_rank(rank_args, io);
    if (*detect_cmd) return cmd_detect(detect_args, io);
    if (*cmp_cmd) return cmd_compare(cmp_args, io);
    if (*align_cmd) return cmd_align(align_args, io);
    if (*split_cmd) return cmd_split(split_args, io);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsageError;
}

}  // namespace accentgen::cli
