#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "aescap/assemble.hpp"
#include "aescap/corpus_io.hpp"
#include "aescap/errors.hpp"
#include "aescap/filter.hpp"
#include "aescap/lexicon.hpp"
#include "aescap/loss.hpp"
#include "aescap/metrics.hpp"
#include "aescap/pipeline.hpp"
#include "aescap/sampling.hpp"
#include "aescap/textnorm.hpp"
#include "aescap/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace aescap;

namespace {

NormalizationConfig load_norm(const std::string& path) {
  return path.empty() ? NormalizationConfig::builtin() : NormalizationConfig::load(path);
}

Lexicon union_of(const std::map<AttributeV2, Lexicon>& lexicons) {
  return union_lexicon(lexicons);
}

BowVariant parse_variant(const std::string& name) {
  if (name == "count") return BowVariant::Count;
  if (name == "frequency_weighted") return BowVariant::FrequencyWeighted;
  throw UsageError("unknown variant '" + name + "' (count | frequency_weighted)");
}

BleuSmoothing parse_smoothing(const std::string& name) {
  if (name == "none") return BleuSmoothing::None;
  if (name == "add_one") return BleuSmoothing::AddOne;
  throw UsageError("unknown smoothing '" + name + "' (none | add_one)");
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write: " + path.string());
  out << content;
  if (!out) throw DataError("write failed: " + path.string());
}

int cmd_ingest(const std::string& corpus, const std::string& source_name, const std::string& out,
               const std::string& manifest_path, const std::string& name) {
  const auto source = source_from_string(source_name);
  if (!source)
    throw UsageError("unknown source '" + source_name +
                     "' (fully_annotated | weakly_annotated | negative_corpus)");
  const ParsedCorpus parsed = parse_corpus(corpus, *source);
  write_corpus(parsed, out);
  for (const auto& issue : parsed.issues)
    std::cerr << corpus << ":" << issue.line << ": " << issue.message << '\n';

  json manifest;
  manifest["corpus"] = name.empty() ? fs::path(corpus).filename().string() : name;
  manifest["counts"] = {{std::string(to_string(*source)), parsed.comments.size()},
                        {"images", parsed.images.size()},
                        {"lines", parsed.line_count},
                        {"malformed", parsed.issues.size()}};
  manifest["checksums"] = {{fs::path(out).filename().string(), file_checksum(out)}};
  json issues = json::array();
  for (const auto& issue : parsed.issues)
    issues.push_back({{"line", issue.line}, {"message", issue.message}});
  manifest["issues"] = issues;
  if (!manifest_path.empty()) write_text(manifest_path, manifest.dump(2) + "\n");

  std::cout << "ingested " << parsed.comments.size() << " comments, " << parsed.images.size()
            << " image records (" << parsed.issues.size() << " malformed line(s)) -> " << out
            << '\n';
  return 0;
}

int cmd_lexicon(const std::string& in, std::size_t k, const std::string& out,
                const std::string& legacy_out, const std::string& norm_path,
                const std::string& split_path, std::size_t workers) {
  const NormalizationConfig norm = load_norm(norm_path);
  const AttributeSplitConfig split =
      split_path.empty() ? AttributeSplitConfig::builtin() : AttributeSplitConfig::load(split_path);
  const ParsedCorpus corpus = parse_corpus(in, Source::FullyAnnotated);
  if (!corpus.issues.empty())
    std::cerr << corpus.issues.size() << " malformed line(s) skipped\n";
  const auto tables = count_terms(corpus.comments, norm, workers);
  std::map<LegacyAttribute, Lexicon> legacy;
  for (auto attr : kLegacyAttributes) {
    const TermCounts empty;
    auto it = tables.find(attr);
    legacy[attr] =
        top_k(it == tables.end() ? empty : it->second, k, std::string(to_string(attr)));
  }
  if (!legacy_out.empty()) {
    // legacy dump reuses the same CSV shape with legacy attribute names
    std::ofstream lout(legacy_out, std::ios::binary);
    if (!lout) throw DataError("cannot write: " + legacy_out);
    lout << "attribute,term,frequency,rank\n";
    for (const auto& [attr, lex] : legacy) {
      std::size_t rank = 1;
      for (const auto& e : lex.entries)
        lout << to_string(attr) << ',' << e.term << ',' << e.frequency << ',' << rank++ << '\n';
    }
  }
  const auto merged = merge_attributes(legacy, split);
  write_lexicons_csv(merged, out);
  for (const auto& [attr, lex] : merged)
    std::cout << to_string(attr) << ": " << lex.entries.size() << " terms\n";
  return 0;
}

int cmd_score(const std::string& lexicon_path, const std::string& in, const std::string& variant,
              std::size_t top_n, std::optional<double> top_fraction, bool per_attribute_rank,
              const std::string& classifier_path, double threshold, const std::string& out,
              const std::string& norm_path, std::size_t workers) {
  const NormalizationConfig norm = load_norm(norm_path);
  const auto lexicons = read_lexicons_csv(lexicon_path);
  const ParsedCorpus corpus = parse_corpus(in, Source::WeaklyAnnotated);
  if (!corpus.issues.empty())
    std::cerr << corpus.issues.size() << " malformed line(s) skipped\n";

  // A model file is a JSON object with format "aescap-nb"; anything else is
  // treated as a JSONL sidecar of {comment_id, prob} verdicts.
  ClassifierModel model;
  std::unordered_map<std::string, double> sidecar;
  ClassifierSource source;
  bool is_model = false;
  {
    std::ifstream probe(classifier_path);
    if (!probe) throw DataError("cannot read classifier: " + classifier_path);
    std::string first_line;
    std::getline(probe, first_line);
    const json j = json::parse(first_line, nullptr, false);
    is_model = !j.is_discarded() && j.is_object() && j.value("format", "") == "aescap-nb";
  }
  if (is_model) {
    model = ClassifierModel::load(classifier_path);
    source.model = &model;
  } else {
    sidecar = load_prob_sidecar(classifier_path);
    source.sidecar = &sidecar;
  }

  ScoreOptions options;
  options.variant = parse_variant(variant);
  options.top_n = top_n;
  options.top_fraction = top_fraction;
  options.per_attribute_rank = per_attribute_rank;
  options.threshold = threshold;
  options.workers = workers;
  const auto scored = score_comments(corpus.comments, lexicons, norm, source, options);
  write_scored(scored, out);

  std::size_t survivors = 0;
  for (const auto& sc : scored) survivors += sc.survives() ? 1 : 0;
  std::cout << scored.size() << " comments scored, " << survivors << " survive both screens -> "
            << out << '\n';
  return 0;
}

int cmd_assemble(const std::string& scored_path, const std::string& lexicon_path,
                 std::size_t min_refs, std::size_t min_len, std::size_t max_len,
                 const std::string& out, const std::string& stats_path,
                 const std::string& drops_path, const std::string& norm_path) {
  const NormalizationConfig norm = load_norm(norm_path);
  const auto lexicons = read_lexicons_csv(lexicon_path);
  const auto scored = read_scored(scored_path);

  AssembleOptions options;
  options.min_refs = min_refs;
  options.min_tokens = min_len;
  options.max_tokens = max_len;
  const AssembleResult assembled = assemble_dataset(scored, lexicons, norm, options);
  const DatasetManifest manifest = write_dataset(assembled.sets, out);

  const Lexicon unioned = union_of(lexicons);
  const DatasetStats stats = compute_stats(assembled.sets, &unioned, &norm);
  if (!stats_path.empty()) write_text(stats_path, stats_to_json_string(stats));
  if (!drops_path.empty()) {
    json drops;
    drops["fates"] = {{"emitted", assembled.drops.emitted},
                      {"failed_rank", assembled.drops.failed_rank},
                      {"failed_classifier", assembled.drops.failed_classifier},
                      {"failed_length", assembled.drops.failed_length},
                      {"no_attribute", assembled.drops.no_attribute},
                      {"group_too_small", assembled.drops.group_too_small},
                      {"excess_in_group", assembled.drops.excess_in_group}};
    drops["dropped_groups"] = assembled.dropped_groups;
    drops["images_without_attributes"] = assembled.images_without_attributes;
    write_text(drops_path, drops.dump(2) + "\n");
  }
  std::cout << assembled.sets.size() << " caption sets (" << manifest.checksum << ") -> " << out
            << '\n'
            << render_stats_table(stats);
  return 0;
}

int cmd_stats(const std::string& dataset_path, const std::string& lexicon_path,
              const std::string& out, const std::string& norm_path) {
  const auto dataset = read_dataset(dataset_path);
  DatasetStats stats;
  if (!lexicon_path.empty()) {
    const NormalizationConfig norm = load_norm(norm_path);
    const auto lexicons = read_lexicons_csv(lexicon_path);
    const Lexicon unioned = union_of(lexicons);
    stats = compute_stats(dataset, &unioned, &norm);
  } else {
    stats = compute_stats(dataset);
  }
  std::cout << render_stats_table(stats);
  if (!out.empty()) write_text(out, stats_to_json_string(stats));
  return 0;
}

int cmd_eval(const std::string& dataset_path, const std::string& pred_path,
             const std::string& smoothing_name, const std::string& method, bool sentence_bleu,
             bool gt_only, const std::string& out, const std::string& norm_path) {
  const NormalizationConfig norm = load_norm(norm_path);
  const auto dataset = read_dataset(dataset_path);

  // (image_id, attribute) -> reference captions
  std::map<std::pair<std::string, AttributeV2>, std::vector<TokenizedText>> references;
  for (const auto& rec : dataset) {
    auto& refs = references[{rec.image_id, rec.attribute}];
    refs.push_back(tokenize(rec.ground_truth));
    if (!gt_only)
      for (const auto& r : rec.references) refs.push_back(tokenize(r));
  }

  std::ifstream in(pred_path, std::ios::binary);
  if (!in) throw DataError("cannot read predictions: " + pred_path);
  std::vector<EvalPair> pairs;
  std::set<std::pair<std::string, AttributeV2>> seen;
  std::size_t unmatched = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("image_id") ||
        !j.contains("attribute") || !j.contains("caption"))
      throw DataError(pred_path + ":" + std::to_string(lineno) +
                      ": expected {image_id, attribute, caption}");
    const auto attr = attribute_v2_from_string(j["attribute"].get<std::string>());
    if (!attr)
      throw DataError(pred_path + ":" + std::to_string(lineno) + ": unknown attribute '" +
                      j["attribute"].get<std::string>() + "'");
    const std::pair<std::string, AttributeV2> key{j["image_id"].get<std::string>(), *attr};
    if (!seen.insert(key).second)
      throw DataError(pred_path + ":" + std::to_string(lineno) + ": duplicate prediction for (" +
                      key.first + ", " + std::string(to_string(*attr)) + ")");
    const auto it = references.find(key);
    if (it == references.end()) {
      ++unmatched;
      continue;
    }
    EvalPair pair;
    pair.candidate = tokenize(j["caption"].get<std::string>());
    pair.references = it->second;
    pair.attribute = *attr;
    pairs.push_back(std::move(pair));
  }

  EvaluateOptions options;
  options.smoothing = parse_smoothing(smoothing_name);
  options.sentence_level_bleu = sentence_bleu;
  MetricReport report = evaluate_corpus(pairs, norm, options);
  if (unmatched > 0)
    report.notes.push_back(std::to_string(unmatched) +
                           " prediction(s) had no dataset entry and were skipped");

  std::cout << render_metric_table(report, method);
  if (!out.empty()) {
    json j;
    j["method"] = method;
    j["smoothing"] = smoothing_name;
    j["bleu_aggregation"] = sentence_bleu ? "sentence_mean" : "corpus";
    j["units"] = {{"bleu4", "fraction"}, {"spice", "fraction"}};
    json per = json::object();
    for (const auto& [attr, m] : report.per_attribute)
      per[std::string(to_string(attr))] = {
          {"pairs", m.pairs}, {"bleu4", m.bleu4}, {"spice", m.spice}};
    j["per_attribute"] = per;
    j["overall"] = {{"pairs", report.overall.pairs},
                    {"bleu4", report.overall.bleu4},
                    {"spice", report.overall.spice}};
    j["notes"] = report.notes;
    write_text(out, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_loss_check(std::uint64_t seed, std::size_t n, std::size_t m, std::size_t dims,
                   std::size_t batches, double bias, bool normalized_object, double tolerance) {
  LossOptions options;
  options.include_object = true;
  options.normalized_object = normalized_object;
  double worst = 0.0;
  std::size_t coords = 0;
  for (std::size_t b = 0; b < batches; ++b) {
    const LossBatch batch = random_batch(seed + b, n, m, dims, bias);
    const GradCheckResult result = finite_difference_check(batch, options);
    worst = std::max(worst, result.max_rel_error);
    coords += result.coordinates;

    const double combined = total_loss(batch, options);
    const double split = total_loss(batch, {.include_object = false}) +
                         object_loss(batch, normalized_object);
    if (std::abs(combined - split) > 1e-12)
      throw DataError("object-inclusive loss does not equal base loss + object term");
  }
  std::printf("gradcheck: batches=%zu n=%zu m=%zu dims=%zu coords=%zu max_rel_error=%.3e %s\n",
              batches, n, m, dims, coords, worst, worst < tolerance ? "PASS" : "FAIL");
  if (worst >= tolerance) throw DataError("gradient check exceeded tolerance");
  return 0;
}

int cmd_pipeline(const PipelineConfig& cfg) {
  const PipelineResult result = run_pipeline(cfg);
  std::cout << "pipeline complete\n"
            << "  lexicon:    " << result.lexicon_csv.string() << '\n'
            << "  classifier: " << result.classifier_model.string() << '\n'
            << "  scored:     " << result.scored.string() << '\n'
            << "  dataset:    " << result.dataset.string() << '\n'
            << "  stats:      " << result.stats.string() << '\n'
            << "  manifest:   " << result.manifest.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aesthetic caption corpus toolkit"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);
  // config keys live under a [pipeline] section mirroring the flag names
  app.set_config("--config", "", "read options from a TOML-style config file");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "parse a corpus into canonical JSONL");
  std::string in_corpus, in_source, in_out, in_manifest, in_name;
  ingest->add_option("--corpus", in_corpus, "input corpus (JSONL)")->required();
  ingest->add_option("--source", in_source, "fully_annotated | weakly_annotated | negative_corpus")
      ->required();
  ingest->add_option("--out", in_out, "canonical output path")->required();
  ingest->add_option("--manifest", in_manifest, "manifest JSON path");
  ingest->add_option("--name", in_name, "corpus name recorded in the manifest");

  // lexicon
  auto* lexicon = app.add_subcommand("lexicon", "build attribute lexicons from a fully annotated corpus");
  std::string lx_in, lx_out, lx_legacy, lx_norm, lx_split;
  std::size_t lx_k = 1000;
  std::size_t lx_workers = 1;
  lexicon->add_option("--in", lx_in, "fully annotated corpus (JSONL)")->required();
  lexicon->add_option("--k", lx_k, "lexicon size cap")->check(CLI::PositiveNumber);
  lexicon->add_option("--out", lx_out, "merged lexicon CSV")->required();
  lexicon->add_option("--legacy-out", lx_legacy, "also dump the seven legacy lexicons");
  lexicon->add_option("--norm-config", lx_norm, "normalization config file");
  lexicon->add_option("--split-config", lx_split, "light/color partition file");
  lexicon->add_option("--workers", lx_workers, "worker threads")->check(CLI::PositiveNumber);

  // score
  auto* score = app.add_subcommand("score", "BoW-weight, rank and classify comments");
  std::string sc_lexicon, sc_in, sc_variant = "count", sc_classifier, sc_out, sc_norm;
  std::size_t sc_top = 100000;
  double sc_fraction = -1.0;
  bool sc_per_attr = false;
  double sc_threshold = 0.5;
  std::size_t sc_workers = 1;
  score->add_option("--lexicon", sc_lexicon, "lexicon CSV")->required();
  score->add_option("--in", sc_in, "comments corpus (JSONL)")->required();
  score->add_option("--variant", sc_variant, "count | frequency_weighted");
  score->add_option("--top", sc_top, "rank cut: keep the top N comments");
  score->add_option("--top-fraction", sc_fraction,
                    "rank cut as a fraction of the corpus (overrides --top)");
  score->add_flag("--per-attribute-rank", sc_per_attr, "experimental: rank within each attribute");
  score->add_option("--classifier", sc_classifier, "model file or verdict sidecar (JSONL)")
      ->required();
  score->add_option("--threshold", sc_threshold, "classifier pass threshold");
  score->add_option("--out", sc_out, "scored output (JSONL)")->required();
  score->add_option("--norm-config", sc_norm, "normalization config file");
  score->add_option("--workers", sc_workers, "worker threads")->check(CLI::PositiveNumber);

  // assemble
  auto* assemble = app.add_subcommand("assemble", "build per-(image, attribute) caption sets");
  std::string as_scored, as_lexicon, as_out, as_stats, as_drops, as_norm;
  std::size_t as_min_refs = 3, as_min_len = 5, as_max_len = 30;
  assemble->add_option("--scored", as_scored, "scored comments (JSONL)")->required();
  assemble->add_option("--lexicon", as_lexicon, "lexicon CSV")->required();
  assemble->add_option("--min-refs", as_min_refs, "minimum reference captions per set");
  assemble->add_option("--min-len", as_min_len, "minimum caption tokens");
  assemble->add_option("--max-len", as_max_len, "maximum caption tokens");
  assemble->add_option("--out", as_out, "dataset output (JSONL)")->required();
  assemble->add_option("--stats", as_stats, "stats JSON path");
  assemble->add_option("--drops", as_drops, "drop report JSON path");
  assemble->add_option("--norm-config", as_norm, "normalization config file");

  // stats
  auto* stats = app.add_subcommand("stats", "report dataset statistics");
  std::string st_dataset, st_lexicon, st_out, st_norm;
  stats->add_option("--dataset", st_dataset, "dataset (JSONL)")->required();
  stats->add_option("--lexicon", st_lexicon, "lexicon CSV for the BoW bias surrogate");
  stats->add_option("--out", st_out, "stats JSON path");
  stats->add_option("--norm-config", st_norm, "normalization config file");

  // eval
  auto* eval = app.add_subcommand("eval", "score predictions with BLEU-4 and SPICE-style F1");
  std::string ev_dataset, ev_pred, ev_smoothing = "add_one", ev_method = "predictions", ev_out,
              ev_norm;
  bool ev_sentence = false, ev_gt_only = false;
  eval->add_option("--dataset", ev_dataset, "dataset (JSONL)")->required();
  eval->add_option("--pred", ev_pred, "predictions (JSONL: image_id, attribute, caption)")
      ->required();
  eval->add_option("--smoothing", ev_smoothing, "none | add_one");
  eval->add_option("--method", ev_method, "method label for the report");
  eval->add_flag("--sentence-bleu", ev_sentence, "mean of sentence BLEU instead of corpus BLEU");
  eval->add_flag("--gt-only", ev_gt_only, "evaluate against the ground truth caption only");
  eval->add_option("--out", ev_out, "report JSON path");
  eval->add_option("--norm-config", ev_norm, "normalization config file");

  // loss-check
  auto* loss_check = app.add_subcommand("loss-check", "finite-difference check of the loss gradients");
  std::uint64_t lc_seed = 42;
  std::size_t lc_n = 16, lc_m = 5, lc_dims = 4, lc_batches = 1;
  double lc_bias = 1.0, lc_tol = 1e-6;
  bool lc_normalized = false;
  loss_check->add_option("--seed", lc_seed, "base seed");
  loss_check->add_option("--n", lc_n, "batch size")->check(CLI::PositiveNumber);
  loss_check->add_option("--m", lc_m, "attribute count")->check(CLI::PositiveNumber);
  loss_check->add_option("--dims", lc_dims, "score dimensions per head")->check(CLI::PositiveNumber);
  loss_check->add_option("--batches", lc_batches, "number of random batches")
      ->check(CLI::PositiveNumber);
  loss_check->add_option("--bias", lc_bias, "aesthetic bias coefficient");
  loss_check->add_flag("--normalized-object", lc_normalized, "apply 1/2N to the object term");
  loss_check->add_option("--tol", lc_tol, "max relative error tolerance");

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "run the full construction pipeline");
  pipeline->fallthrough(true);
  PipelineConfig cfg;
  std::string pl_fa, pl_weak, pl_neg, pl_out, pl_variant = "count", pl_norm, pl_split;
  double pl_fraction = -1.0;
  long long pl_neg_count = -1;
  pipeline->add_option("--fa", pl_fa, "fully annotated corpus (JSONL)")->required();
  pipeline->add_option("--weak", pl_weak, "weakly annotated corpus (JSONL)")->required();
  pipeline->add_option("--neg", pl_neg, "negative corpus (JSONL)")->required();
  pipeline->add_option("--out-dir", pl_out, "output directory")->required();
  pipeline->add_option("--k", cfg.lexicon_k, "lexicon size cap")->check(CLI::PositiveNumber);
  pipeline->add_option("--variant", pl_variant, "count | frequency_weighted");
  pipeline->add_option("--top", cfg.top_n, "rank cut: keep the top N comments");
  pipeline->add_option("--top-fraction", pl_fraction, "rank cut as a fraction (overrides --top)");
  pipeline->add_flag("--per-attribute-rank", cfg.per_attribute_rank,
                     "experimental: rank within each attribute");
  pipeline->add_option("--threshold", cfg.threshold, "classifier pass threshold");
  pipeline->add_option("--alpha", cfg.alpha, "classifier smoothing");
  pipeline->add_option("--neg-count", pl_neg_count,
                       "negative sample size (default: number of positives)");
  pipeline->add_option("--min-refs", cfg.min_refs, "minimum reference captions per set");
  pipeline->add_option("--min-len", cfg.min_tokens, "minimum caption tokens");
  pipeline->add_option("--max-len", cfg.max_tokens, "maximum caption tokens");
  pipeline->add_option("--seed", cfg.seed, "seed for negative sampling");
  pipeline->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
  pipeline->add_option("--norm-config", pl_norm, "normalization config file");
  pipeline->add_option("--split-config", pl_split, "light/color partition file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(in_corpus, in_source, in_out, in_manifest, in_name);
    if (lexicon->parsed())
      return cmd_lexicon(lx_in, lx_k, lx_out, lx_legacy, lx_norm, lx_split, lx_workers);
    if (score->parsed())
      return cmd_score(sc_lexicon, sc_in, sc_variant, sc_top,
                       sc_fraction > 0 ? std::optional<double>(sc_fraction) : std::nullopt,
                       sc_per_attr, sc_classifier, sc_threshold, sc_out, sc_norm, sc_workers);
    if (assemble->parsed())
      return cmd_assemble(as_scored, as_lexicon, as_min_refs, as_min_len, as_max_len, as_out,
                          as_stats, as_drops, as_norm);
    if (stats->parsed()) return cmd_stats(st_dataset, st_lexicon, st_out, st_norm);
    if (eval->parsed())
      return cmd_eval(ev_dataset, ev_pred, ev_smoothing, ev_method, ev_sentence, ev_gt_only,
                      ev_out, ev_norm);
    if (loss_check->parsed())
      return cmd_loss_check(lc_seed, lc_n, lc_m, lc_dims, lc_batches, lc_bias, lc_normalized,
                            lc_tol);
    if (pipeline->parsed()) {
      cfg.fully_annotated = pl_fa;
      cfg.weakly_annotated = pl_weak;
      cfg.negatives = pl_neg;
      cfg.out_dir = pl_out;
      cfg.variant = parse_variant(pl_variant);
      if (pl_fraction > 0) cfg.top_fraction = pl_fraction;
      if (pl_neg_count >= 0) cfg.negative_count = static_cast<std::size_t>(pl_neg_count);
      cfg.norm_config = pl_norm;
      cfg.split_config = pl_split;
      return cmd_pipeline(cfg);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const StageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}
