#include "aescap/filter.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numeric>

#include <nlohmann/json.hpp>

#include "aescap/errors.hpp"
#include "aescap/parallel.hpp"

namespace aescap {

using nlohmann::json;

double bow_weight(const TokenizedText& text, const LexiconIndex& lexicon, BowVariant variant) {
  double weight = 0.0;
  for (const auto& token : text.tokens) {
    auto it = lexicon.frequencies.find(token);
    if (it == lexicon.frequencies.end()) continue;
    weight += variant == BowVariant::Count ? 1.0 : static_cast<double>(it->second);
  }
  return weight;
}

double bow_weight(const TokenizedText& text, const Lexicon& lexicon, BowVariant variant) {
  return bow_weight(text, LexiconIndex::from(lexicon), variant);
}

void rank_and_cut(std::vector<ScoredComment>& scored, std::size_t n) {
  std::vector<std::size_t> order(scored.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scored[a].bow_weight != scored[b].bow_weight)
      return scored[a].bow_weight > scored[b].bow_weight;
    return scored[a].comment.comment_id < scored[b].comment.comment_id;
  });
  const std::size_t cut = std::min(n, order.size());
  for (std::size_t i = 0; i < order.size(); ++i) scored[order[i]].passed_rank = i < cut;
}

namespace {

void count_tokens(std::span<const RawComment> docs,
                  std::unordered_map<std::string, std::uint64_t>& counts, std::uint64_t& total) {
  for (const auto& doc : docs) {
    for (const auto& token : tokenize(doc.text).tokens) {
      ++counts[token];
      ++total;
    }
  }
}

}  // namespace

ClassifierModel train_classifier(std::span<const RawComment> positives,
                                 std::span<const RawComment> negatives, double alpha) {
  if (positives.empty()) throw DataError("train_classifier: positive class is empty");
  if (negatives.empty()) throw DataError("train_classifier: negative class is empty");
  if (!(alpha > 0.0)) throw DataError("train_classifier: smoothing alpha must be > 0");

  std::unordered_map<std::string, std::uint64_t> pos_counts;
  std::unordered_map<std::string, std::uint64_t> neg_counts;
  std::uint64_t pos_total = 0;
  std::uint64_t neg_total = 0;
  count_tokens(positives, pos_counts, pos_total);
  count_tokens(negatives, neg_counts, neg_total);

  ClassifierModel model;
  model.alpha_ = alpha;
  const double n_pos = static_cast<double>(positives.size());
  const double n_neg = static_cast<double>(negatives.size());
  model.log_prior_pos_ = std::log(n_pos / (n_pos + n_neg));
  model.log_prior_neg_ = std::log(n_neg / (n_pos + n_neg));

  // Vocabulary is the union of training tokens; sorted so the persisted
  // model is byte-stable.
  model.vocab_.reserve(pos_counts.size() + neg_counts.size());
  for (const auto& [term, n] : pos_counts) {
    (void)n;
    model.vocab_.push_back(term);
  }
  for (const auto& [term, n] : neg_counts) {
    (void)n;
    if (!pos_counts.contains(term)) model.vocab_.push_back(term);
  }
  std::sort(model.vocab_.begin(), model.vocab_.end());

  const double v = static_cast<double>(model.vocab_.size());
  model.log_lik_pos_.reserve(model.vocab_.size());
  model.log_lik_neg_.reserve(model.vocab_.size());
  for (const auto& term : model.vocab_) {
    const auto pos_it = pos_counts.find(term);
    const auto neg_it = neg_counts.find(term);
    const double pos_n = pos_it == pos_counts.end() ? 0.0 : static_cast<double>(pos_it->second);
    const double neg_n = neg_it == neg_counts.end() ? 0.0 : static_cast<double>(neg_it->second);
    model.log_lik_pos_.push_back(
        std::log((pos_n + alpha) / (static_cast<double>(pos_total) + alpha * v)));
    model.log_lik_neg_.push_back(
        std::log((neg_n + alpha) / (static_cast<double>(neg_total) + alpha * v)));
  }
  model.rebuild_index();
  return model;
}

void ClassifierModel::rebuild_index() {
  index_.clear();
  index_.reserve(vocab_.size());
  for (std::size_t i = 0; i < vocab_.size(); ++i) index_.emplace(vocab_[i], i);
}

double ClassifierModel::log_likelihood_pos(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) throw DataError("term not in vocabulary: " + std::string(term));
  return log_lik_pos_[it->second];
}

double ClassifierModel::log_likelihood_neg(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) throw DataError("term not in vocabulary: " + std::string(term));
  return log_lik_neg_[it->second];
}

bool ClassifierModel::lookup(const std::string& term, double& log_lik_pos,
                             double& log_lik_neg) const {
  auto it = index_.find(term);
  if (it == index_.end()) return false;
  log_lik_pos = log_lik_pos_[it->second];
  log_lik_neg = log_lik_neg_[it->second];
  return true;
}

ClassifyResult classify(const ClassifierModel& model, const TokenizedText& text,
                        double threshold) {
  // Unknown tokens would add the same alpha-only mass to both classes, a
  // factor that cancels in the posterior, so they are skipped outright.
  double log_pos = model.log_prior_pos();
  double log_neg = model.log_prior_neg();
  for (const auto& token : text.tokens) {
    double lp = 0.0;
    double ln = 0.0;
    if (!model.lookup(token, lp, ln)) continue;
    log_pos += lp;
    log_neg += ln;
  }
  ClassifyResult result;
  // logistic form keeps the posterior stable for large |log odds|
  result.prob = 1.0 / (1.0 + std::exp(log_neg - log_pos));
  result.pass = result.prob >= threshold;
  return result;
}

void ClassifierModel::save(const std::filesystem::path& path) const {
  json j;
  j["format"] = "aescap-nb";
  j["version"] = 1;
  j["alpha"] = alpha_;
  j["log_prior_pos"] = log_prior_pos_;
  j["log_prior_neg"] = log_prior_neg_;
  j["vocabulary"] = vocab_;
  j["log_likelihood_pos"] = log_lik_pos_;
  j["log_likelihood_neg"] = log_lik_neg_;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write classifier model: " + path.string());
  out << j.dump() << '\n';
  if (!out) throw DataError("write failed: " + path.string());
}

ClassifierModel ClassifierModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read classifier model: " + path.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object() || j.value("format", "") != "aescap-nb")
    throw DataError("not an aescap-nb model file: " + path.string());
  if (j.value("version", 0) != 1)
    throw DataError("unsupported model version in " + path.string());
  ClassifierModel model;
  try {
    model.alpha_ = j.at("alpha").get<double>();
    model.log_prior_pos_ = j.at("log_prior_pos").get<double>();
    model.log_prior_neg_ = j.at("log_prior_neg").get<double>();
    model.vocab_ = j.at("vocabulary").get<std::vector<std::string>>();
    model.log_lik_pos_ = j.at("log_likelihood_pos").get<std::vector<double>>();
    model.log_lik_neg_ = j.at("log_likelihood_neg").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw DataError("bad model file " + path.string() + ": " + e.what());
  }
  if (model.vocab_.size() != model.log_lik_pos_.size() ||
      model.vocab_.size() != model.log_lik_neg_.size())
    throw DataError("model file arrays disagree in length: " + path.string());
  model.rebuild_index();
  return model;
}

std::vector<ScoredComment> score_comments(std::span<const RawComment> comments,
                                          const std::map<AttributeV2, Lexicon>& lexicons,
                                          const NormalizationConfig& cfg,
                                          const ClassifierSource& classifier,
                                          const ScoreOptions& options) {
  if (classifier.model == nullptr && classifier.sidecar == nullptr)
    throw DataError("score_comments: a classifier model or sidecar is required");

  const Lexicon unioned = union_lexicon(lexicons);
  const LexiconIndex union_index = LexiconIndex::from(unioned);
  std::map<AttributeV2, LexiconIndex> attr_indexes;
  if (options.per_attribute_rank)
    for (const auto& [attr, lex] : lexicons) attr_indexes.emplace(attr, LexiconIndex::from(lex));

  std::vector<ScoredComment> scored(comments.size());
  std::vector<std::vector<AttributeV2>> assigned(options.per_attribute_rank ? comments.size() : 0);
  std::string sidecar_error;
  std::mutex error_mutex;

  parallel_chunks(comments.size(), options.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      ScoredComment& sc = scored[i];
      sc.comment = comments[i];
      const TokenizedText raw = tokenize(sc.comment.text);
      const TokenizedText normalized = normalize(raw, cfg, NormalizeMode::BowScoring);
      sc.bow_weight = bow_weight(normalized, union_index, options.variant);
      if (options.per_attribute_rank) {
        for (const auto& [attr, index] : attr_indexes) {
          const bool hit = std::any_of(normalized.tokens.begin(), normalized.tokens.end(),
                                       [&](const std::string& t) { return index.contains(t); });
          if (hit) assigned[i].push_back(attr);
        }
      }
      if (classifier.model != nullptr) {
        const ClassifyResult verdict = classify(*classifier.model, raw, options.threshold);
        sc.classifier_prob = verdict.prob;
        sc.passed_classifier = verdict.pass;
      } else {
        auto it = classifier.sidecar->find(sc.comment.comment_id);
        if (it == classifier.sidecar->end()) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (sidecar_error.empty())
            sidecar_error = "sidecar has no verdict for comment '" + sc.comment.comment_id + "'";
          continue;
        }
        sc.classifier_prob = it->second;
        sc.passed_classifier = sc.classifier_prob >= options.threshold;
      }
    }
  });
  if (!sidecar_error.empty()) throw DataError(sidecar_error);

  std::size_t cut = options.top_n;
  if (options.top_fraction) {
    if (*options.top_fraction <= 0.0 || *options.top_fraction > 1.0)
      throw DataError("top fraction must be in (0,1]");
    cut = static_cast<std::size_t>(
        std::llround(*options.top_fraction * static_cast<double>(scored.size())));
    if (!scored.empty()) cut = std::max<std::size_t>(cut, 1);
  }

  if (!options.per_attribute_rank) {
    rank_and_cut(scored, cut);
  } else {
    // Rank separately inside every attribute; any top-n membership passes.
    for (const auto& [attr, index] : attr_indexes) {
      (void)index;
      std::vector<std::size_t> member_of;
      for (std::size_t i = 0; i < scored.size(); ++i)
        if (std::find(assigned[i].begin(), assigned[i].end(), attr) != assigned[i].end())
          member_of.push_back(i);
      std::sort(member_of.begin(), member_of.end(), [&](std::size_t a, std::size_t b) {
        if (scored[a].bow_weight != scored[b].bow_weight)
          return scored[a].bow_weight > scored[b].bow_weight;
        return scored[a].comment.comment_id < scored[b].comment.comment_id;
      });
      const std::size_t take = std::min(cut, member_of.size());
      for (std::size_t i = 0; i < take; ++i) scored[member_of[i]].passed_rank = true;
    }
  }
  return scored;
}

void write_scored(const std::vector<ScoredComment>& scored, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write scored file: " + path.string());
  for (const auto& sc : scored) {
    json j;
    j["comment_id"] = sc.comment.comment_id;
    j["image_id"] = sc.comment.image_id;
    j["source"] = std::string(to_string(sc.comment.source));
    if (sc.comment.attribute_hint)
      j["attribute_hint"] = std::string(to_string(*sc.comment.attribute_hint));
    j["text"] = sc.comment.text;
    j["bow_weight"] = sc.bow_weight;
    j["classifier_prob"] = sc.classifier_prob;
    j["passed_rank"] = sc.passed_rank;
    j["passed_classifier"] = sc.passed_classifier;
    out << j.dump() << '\n';
  }
  if (!out) throw DataError("write failed: " + path.string());
}

std::vector<ScoredComment> read_scored(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read scored file: " + path.string());
  std::vector<ScoredComment> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": not a JSON object");
    ScoredComment sc;
    try {
      sc.comment.comment_id = j.at("comment_id").get<std::string>();
      sc.comment.image_id = j.at("image_id").get<std::string>();
      const auto source = source_from_string(j.at("source").get<std::string>());
      if (!source) throw DataError("unknown source");
      sc.comment.source = *source;
      if (j.contains("attribute_hint")) {
        const auto hint = legacy_attribute_from_string(j["attribute_hint"].get<std::string>());
        if (!hint) throw DataError("unknown attribute_hint");
        sc.comment.attribute_hint = *hint;
      }
      sc.comment.text = j.at("text").get<std::string>();
      sc.bow_weight = j.at("bow_weight").get<double>();
      sc.classifier_prob = j.at("classifier_prob").get<double>();
      sc.passed_rank = j.at("passed_rank").get<bool>();
      sc.passed_classifier = j.at("passed_classifier").get<bool>();
    } catch (const json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
    out.push_back(std::move(sc));
  }
  return out;
}

std::unordered_map<std::string, double> load_prob_sidecar(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read sidecar: " + path.string());
  std::unordered_map<std::string, double> probs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("comment_id") || !j.contains("prob"))
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": expected {comment_id, prob}");
    const double p = j["prob"].get<double>();
    if (p < 0.0 || p > 1.0)
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": prob outside [0,1]");
    if (!probs.emplace(j["comment_id"].get<std::string>(), p).second)
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": duplicate comment_id");
  }
  return probs;
}

}  // namespace aescap
