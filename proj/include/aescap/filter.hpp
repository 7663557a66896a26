#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "aescap/lexicon.hpp"
#include "aescap/textnorm.hpp"
#include "aescap/types.hpp"

namespace aescap {

enum class BowVariant {
  // Number of token occurrences (with multiplicity) that are lexicon
  // members.
  Count,
  // Sum of the lexicon frequency over those occurrences.
  FrequencyWeighted,
};

// text must already be normalized in bow-scoring mode. Both variants yield
// exact integer-valued doubles, so ranking comparisons are deterministic.
double bow_weight(const TokenizedText& text, const LexiconIndex& lexicon, BowVariant variant);
double bow_weight(const TokenizedText& text, const Lexicon& lexicon, BowVariant variant);

struct ScoredComment {
  RawComment comment;
  double bow_weight = 0.0;
  double classifier_prob = 0.0;
  bool passed_rank = false;
  bool passed_classifier = false;

  bool survives() const { return passed_rank && passed_classifier; }
};

// Marks passed_rank on exactly min(n, scored.size()) comments: those with
// the highest bow_weight, ties broken by comment_id ascending. Input order
// is preserved.
void rank_and_cut(std::vector<ScoredComment>& scored, std::size_t n);

// Multinomial naive Bayes over the union of training tokens, with Laplace
// smoothing alpha. Stands behind the same interface a neural text
// classifier would use; external verdicts can be supplied as a sidecar
// instead (see load_prob_sidecar).
class ClassifierModel {
 public:
  ClassifierModel() = default;

  double log_prior_pos() const { return log_prior_pos_; }
  double log_prior_neg() const { return log_prior_neg_; }
  double alpha() const { return alpha_; }
  const std::vector<std::string>& vocabulary() const { return vocab_; }
  double log_likelihood_pos(std::string_view term) const;
  double log_likelihood_neg(std::string_view term) const;
  // False when the term is out of vocabulary.
  bool lookup(const std::string& term, double& log_lik_pos, double& log_lik_neg) const;

  void save(const std::filesystem::path& path) const;
  static ClassifierModel load(const std::filesystem::path& path);

  friend ClassifierModel train_classifier(std::span<const RawComment> positives,
                                          std::span<const RawComment> negatives, double alpha);

 private:
  double alpha_ = 1.0;
  double log_prior_pos_ = 0.0;
  double log_prior_neg_ = 0.0;
  std::vector<std::string> vocab_;  // sorted
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> log_lik_pos_;
  std::vector<double> log_lik_neg_;

  void rebuild_index();
};

// Throws DataError when either class is empty or alpha <= 0.
ClassifierModel train_classifier(std::span<const RawComment> positives,
                                 std::span<const RawComment> negatives, double alpha);

struct ClassifyResult {
  double prob = 0.0;  // posterior of the positive class
  bool pass = false;
};

// Out-of-vocabulary tokens contribute the same smoothing mass to both
// classes, so they cancel in the posterior; a text of only unknown tokens
// scores the class prior.
ClassifyResult classify(const ClassifierModel& model, const TokenizedText& text,
                        double threshold);

// JSONL sidecar {comment_id, prob}: externally produced classifier
// verdicts keyed by comment id.
std::unordered_map<std::string, double> load_prob_sidecar(const std::filesystem::path& path);

// Either a trained model or a sidecar of externally produced verdicts.
struct ClassifierSource {
  const ClassifierModel* model = nullptr;
  const std::unordered_map<std::string, double>* sidecar = nullptr;
};

struct ScoreOptions {
  BowVariant variant = BowVariant::Count;
  std::size_t top_n = 100000;
  std::optional<double> top_fraction;  // overrides top_n when set
  // Experimental: rank within each attribute instead of globally; a comment
  // passes when it is in the top n of any attribute it is assigned to.
  bool per_attribute_rank = false;
  double threshold = 0.5;
  std::size_t workers = 1;
};

// Scores every comment (BoW weight, rank flag, classifier flag). Weighting
// and classification are per-comment maps run in index order, so output is
// identical for any worker count.
std::vector<ScoredComment> score_comments(std::span<const RawComment> comments,
                                          const std::map<AttributeV2, Lexicon>& lexicons,
                                          const NormalizationConfig& cfg,
                                          const ClassifierSource& classifier,
                                          const ScoreOptions& options);

void write_scored(const std::vector<ScoredComment>& scored, const std::filesystem::path& path);
std::vector<ScoredComment> read_scored(const std::filesystem::path& path);

}  // namespace aescap
