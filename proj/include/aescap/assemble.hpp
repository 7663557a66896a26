#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aescap/filter.hpp"
#include "aescap/lexicon.hpp"
#include "aescap/textnorm.hpp"
#include "aescap/types.hpp"

namespace aescap {

// Attributes whose lexicon contains at least one token of the normalized
// text. Multi-assignment is allowed; the empty set means the comment is
// dropped downstream. Returned in enum order.
std::vector<AttributeV2> assign_attributes(const TokenizedText& normalized,
                                           const std::map<AttributeV2, Lexicon>& lexicons);

// Inclusive bounds on the raw token count.
bool length_filter(const TokenizedText& tokens, std::size_t min_tokens, std::size_t max_tokens);

struct AssembleOptions {
  std::size_t min_refs = 3;
  std::size_t max_captions = 5;  // 1 ground truth + up to 4 references
  std::size_t min_tokens = 5;
  std::size_t max_tokens = 30;
};

// Terminal fate of every comment entering assembly; buckets are mutually
// exclusive so the counts reconcile against the input count.
struct DropCounts {
  std::uint64_t emitted = 0;
  std::uint64_t failed_rank = 0;
  std::uint64_t failed_classifier = 0;
  std::uint64_t failed_length = 0;
  std::uint64_t no_attribute = 0;
  std::uint64_t group_too_small = 0;
  std::uint64_t excess_in_group = 0;

  std::uint64_t total() const {
    return emitted + failed_rank + failed_classifier + failed_length + no_attribute +
           group_too_small + excess_in_group;
  }
};

struct AssembleResult {
  std::vector<AttributeCaptionSet> sets;  // sorted by (image_id, attribute)
  DropCounts drops;
  std::uint64_t dropped_groups = 0;
  std::vector<std::string> images_without_attributes;  // sorted
};

// Screens scored comments (rank, classifier, length), assigns attributes,
// groups by (image_id, attribute) and builds caption sets. Per group the
// comments are ordered by (bow_weight desc, comment_id asc); the first is
// the ground truth, the next up to max_captions-1 are references; groups
// with fewer than 1+min_refs comments are dropped and counted.
AssembleResult assemble_dataset(std::span<const ScoredComment> scored,
                                const std::map<AttributeV2, Lexicon>& lexicons,
                                const NormalizationConfig& cfg, const AssembleOptions& options);

struct AttributeStats {
  std::uint64_t images = 0;
  std::uint64_t captions = 0;
  double average_captions_per_image = 0.0;
};

struct DatasetStats {
  std::uint64_t total_images = 0;
  std::uint64_t total_captions = 0;
  std::uint64_t total_sets = 0;
  // Total captions divided by the number of distinct images.
  double average_captions_per_image = 0.0;
  // Same ratio per (image, attribute) group.
  double average_captions_per_set = 0.0;
  bool average_defined = false;  // false for an empty dataset
  std::map<AttributeV2, AttributeStats> per_attribute;
  // Mean frequency-weighted BoW score per caption against the supplied
  // lexicon. A reporting surrogate; only present when a lexicon is given.
  std::optional<double> bow_bias_per_caption;
};

DatasetStats compute_stats(std::span<const AttributeCaptionSet> dataset,
                           const Lexicon* bias_lexicon = nullptr,
                           const NormalizationConfig* cfg = nullptr);

std::string render_stats_table(const DatasetStats& stats);
std::string stats_to_json_string(const DatasetStats& stats);

}  // namespace aescap
