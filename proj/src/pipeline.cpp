#include "aescap/pipeline.hpp"

#include <fstream>
#include <functional>

#include <nlohmann/json.hpp>

#include "aescap/assemble.hpp"
#include "aescap/corpus_io.hpp"
#include "aescap/errors.hpp"
#include "aescap/lexicon.hpp"
#include "aescap/sampling.hpp"
#include "aescap/version.hpp"

namespace aescap {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Every artifact lands as <name>.tmp and is renamed into place once the
// stage succeeds; on failure the leftovers are renamed *.stale so a partial
// run cannot be mistaken for a finished one.
void write_text_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw DataError("cannot write: " + tmp.string());
    out << content;
    if (!out) throw DataError("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

void write_with(const fs::path& path, const std::function<void(const fs::path&)>& writer) {
  const fs::path tmp = path.string() + ".tmp";
  writer(tmp);
  fs::rename(tmp, path);
}

void mark_stale(const fs::path& dir) {
  if (!fs::is_directory(dir)) return;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const fs::path p = entry.path();
    if (p.extension() == ".tmp") {
      fs::path stale = p;
      stale.replace_extension(".stale");
      std::error_code ec;
      fs::rename(p, stale, ec);
    }
  }
}

json issues_to_json(const std::vector<ParseIssue>& issues) {
  json arr = json::array();
  // cap so one pathological file cannot bloat the manifest
  const std::size_t limit = std::min<std::size_t>(issues.size(), 50);
  for (std::size_t i = 0; i < limit; ++i)
    arr.push_back({{"line", issues[i].line}, {"message", issues[i].message}});
  return arr;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  for (const auto& [label, path] :
       {std::pair<const char*, const fs::path*>{"fully annotated corpus", &cfg.fully_annotated},
        {"weakly annotated corpus", &cfg.weakly_annotated},
        {"negative corpus", &cfg.negatives}}) {
    if (!fs::exists(*path))
      throw StageError("config", std::string(label) + " not found: " + path->string());
  }
  fs::create_directories(cfg.out_dir);

  PipelineResult result;
  result.canonical_fully_annotated = cfg.out_dir / "canonical_fully_annotated.jsonl";
  result.canonical_weakly_annotated = cfg.out_dir / "canonical_weakly_annotated.jsonl";
  result.canonical_negatives = cfg.out_dir / "canonical_negatives.jsonl";
  result.lexicon_csv = cfg.out_dir / "lexicon.csv";
  result.classifier_model = cfg.out_dir / "classifier.json";
  result.scored = cfg.out_dir / "scored.jsonl";
  result.dataset = cfg.out_dir / "dataset.jsonl";
  result.stats = cfg.out_dir / "stats.json";
  result.manifest = cfg.out_dir / "manifest.json";

  json manifest;
  manifest["tool"] = kToolName;
  manifest["version"] = kToolVersion;
  manifest["rng"] = kRngScheme;

  // The config echo carries every knob that affects the artifacts. Worker
  // count is deliberately absent: parallelism never changes output bytes,
  // so it is not provenance.
  json cfg_echo;
  cfg_echo["lexicon_k"] = cfg.lexicon_k;
  cfg_echo["variant"] = cfg.variant == BowVariant::Count ? "count" : "frequency_weighted";
  if (cfg.top_fraction)
    cfg_echo["top_fraction"] = *cfg.top_fraction;
  else
    cfg_echo["top_n"] = cfg.top_n;
  cfg_echo["per_attribute_rank"] = cfg.per_attribute_rank;
  cfg_echo["threshold"] = cfg.threshold;
  cfg_echo["alpha"] = cfg.alpha;
  cfg_echo["min_refs"] = cfg.min_refs;
  cfg_echo["min_tokens"] = cfg.min_tokens;
  cfg_echo["max_tokens"] = cfg.max_tokens;
  cfg_echo["seed"] = cfg.seed;
  cfg_echo["norm_config"] = cfg.norm_config.empty() ? "builtin" : cfg.norm_config.filename().string();
  cfg_echo["split_config"] =
      cfg.split_config.empty() ? "builtin" : cfg.split_config.filename().string();
  manifest["config"] = cfg_echo;

  json inputs;
  for (const auto& [name, path] :
       {std::pair<const char*, const fs::path*>{"fully_annotated", &cfg.fully_annotated},
        {"weakly_annotated", &cfg.weakly_annotated},
        {"negatives", &cfg.negatives}}) {
    inputs[name] = {{"file", path->filename().string()}, {"checksum", file_checksum(*path)}};
  }
  manifest["inputs"] = inputs;

  const auto stage = [&](const char* name, const std::function<void()>& body) {
    try {
      body();
    } catch (const StageError&) {
      mark_stale(cfg.out_dir);
      throw;
    } catch (const std::exception& e) {
      mark_stale(cfg.out_dir);
      throw StageError(name, e.what());
    }
  };

  const NormalizationConfig norm = cfg.norm_config.empty()
                                       ? NormalizationConfig::builtin()
                                       : NormalizationConfig::load(cfg.norm_config);
  const AttributeSplitConfig split = cfg.split_config.empty()
                                         ? AttributeSplitConfig::builtin()
                                         : AttributeSplitConfig::load(cfg.split_config);

  ParsedCorpus fully;
  ParsedCorpus weakly;
  ParsedCorpus negatives;
  stage("ingest", [&] {
    fully = parse_corpus(cfg.fully_annotated, Source::FullyAnnotated);
    weakly = parse_corpus(cfg.weakly_annotated, Source::WeaklyAnnotated);
    negatives = parse_corpus(cfg.negatives, Source::NegativeCorpus);
    write_with(result.canonical_fully_annotated,
               [&](const fs::path& p) { write_corpus(fully, p); });
    write_with(result.canonical_weakly_annotated,
               [&](const fs::path& p) { write_corpus(weakly, p); });
    write_with(result.canonical_negatives, [&](const fs::path& p) { write_corpus(negatives, p); });
    json st;
    for (const auto& [name, corpus] :
         {std::pair<const char*, const ParsedCorpus*>{"fully_annotated", &fully},
          {"weakly_annotated", &weakly},
          {"negatives", &negatives}}) {
      st[name] = {{"comments", corpus->comments.size()},
                  {"images", corpus->images.size()},
                  {"lines", corpus->line_count},
                  {"malformed", corpus->issues.size()},
                  {"issues", issues_to_json(corpus->issues)}};
    }
    manifest["stages"]["ingest"] = st;
  });

  std::map<AttributeV2, Lexicon> lexicons;
  stage("lexicon", [&] {
    const auto tables = count_terms(fully.comments, norm, cfg.workers);
    std::map<LegacyAttribute, Lexicon> legacy;
    for (auto attr : kLegacyAttributes) {
      auto it = tables.find(attr);
      const TermCounts empty;
      legacy[attr] =
          top_k(it == tables.end() ? empty : it->second, cfg.lexicon_k,
                std::string(to_string(attr)));
    }
    lexicons = merge_attributes(legacy, split);
    write_with(result.lexicon_csv, [&](const fs::path& p) { write_lexicons_csv(lexicons, p); });
    json st;
    json legacy_counts;
    for (const auto& [attr, lex] : legacy) legacy_counts[std::string(to_string(attr))] = lex.entries.size();
    json v2_counts;
    for (const auto& [attr, lex] : lexicons) v2_counts[std::string(to_string(attr))] = lex.entries.size();
    st["k"] = cfg.lexicon_k;
    st["legacy_terms"] = legacy_counts;
    st["v2_terms"] = v2_counts;
    manifest["stages"]["lexicon"] = st;
  });

  ClassifierModel model;
  stage("classifier", [&] {
    if (fully.comments.empty()) throw DataError("no positive training comments");
    const std::size_t want = cfg.negative_count.value_or(fully.comments.size());
    if (negatives.comments.size() < want)
      throw DataError("negative corpus has " + std::to_string(negatives.comments.size()) +
                      " comments, need " + std::to_string(want));
    const auto picks = sample_without_replacement(negatives.comments.size(), want, cfg.seed);
    std::vector<RawComment> sampled;
    sampled.reserve(picks.size());
    for (const std::size_t i : picks) sampled.push_back(negatives.comments[i]);
    model = train_classifier(fully.comments, sampled, cfg.alpha);
    write_with(result.classifier_model, [&](const fs::path& p) { model.save(p); });
    manifest["stages"]["classifier"] = {{"positives", fully.comments.size()},
                                        {"negatives_sampled", sampled.size()},
                                        {"vocabulary", model.vocabulary().size()},
                                        {"alpha", cfg.alpha}};
  });

  std::vector<ScoredComment> scored;
  stage("score", [&] {
    ScoreOptions options;
    options.variant = cfg.variant;
    options.top_n = cfg.top_n;
    options.top_fraction = cfg.top_fraction;
    options.per_attribute_rank = cfg.per_attribute_rank;
    options.threshold = cfg.threshold;
    options.workers = cfg.workers;
    ClassifierSource source;
    source.model = &model;
    scored = score_comments(weakly.comments, lexicons, norm, source, options);
    write_with(result.scored, [&](const fs::path& p) { write_scored(scored, p); });
    std::size_t passed_rank = 0;
    std::size_t passed_classifier = 0;
    std::size_t survivors = 0;
    for (const auto& sc : scored) {
      passed_rank += sc.passed_rank ? 1 : 0;
      passed_classifier += sc.passed_classifier ? 1 : 0;
      survivors += sc.survives() ? 1 : 0;
    }
    manifest["stages"]["score"] = {{"comments", scored.size()},
                                   {"passed_rank", passed_rank},
                                   {"passed_classifier", passed_classifier},
                                   {"survivors", survivors}};
  });

  stage("assemble", [&] {
    AssembleOptions options;
    options.min_refs = cfg.min_refs;
    options.min_tokens = cfg.min_tokens;
    options.max_tokens = cfg.max_tokens;
    const AssembleResult assembled = assemble_dataset(scored, lexicons, norm, options);
    write_with(result.dataset, [&](const fs::path& p) { write_dataset(assembled.sets, p); });

    const Lexicon unioned = union_lexicon(lexicons);
    const DatasetStats stats = compute_stats(assembled.sets, &unioned, &norm);
    write_text_atomic(result.stats, stats_to_json_string(stats));

    json drops;
    drops["emitted"] = assembled.drops.emitted;
    drops["failed_rank"] = assembled.drops.failed_rank;
    drops["failed_classifier"] = assembled.drops.failed_classifier;
    drops["failed_length"] = assembled.drops.failed_length;
    drops["no_attribute"] = assembled.drops.no_attribute;
    drops["group_too_small"] = assembled.drops.group_too_small;
    drops["excess_in_group"] = assembled.drops.excess_in_group;
    manifest["stages"]["assemble"] = {
        {"sets", assembled.sets.size()},
        {"dropped_groups", assembled.dropped_groups},
        {"images_without_attributes", assembled.images_without_attributes},
        {"fates", drops}};
    manifest["reconciliation"] = {{"weak_comments_in", scored.size()},
                                  {"accounted", assembled.drops.total()}};
  });

  stage("manifest", [&] {
    json artifacts;
    for (const fs::path* p :
         {&result.canonical_fully_annotated, &result.canonical_weakly_annotated,
          &result.canonical_negatives, &result.lexicon_csv, &result.classifier_model,
          &result.scored, &result.dataset, &result.stats}) {
      artifacts[p->filename().string()] = file_checksum(*p);
    }
    manifest["artifacts"] = artifacts;
    write_text_atomic(result.manifest, manifest.dump(2) + "\n");
  });

  return result;
}

}  // namespace aescap
