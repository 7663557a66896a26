#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace aescap {

struct TokenizedText {
  std::vector<std::string> tokens;
  std::string original;

  bool operator==(const TokenizedText&) const = default;
};

// Lowercases and splits on non-alphanumeric boundaries. Apostrophes and '&'
// survive only between word characters ("black&white", "don't" stay single
// tokens); digits are kept; bytes outside ASCII are treated as word
// characters and passed through unchanged.
TokenizedText tokenize(std::string_view text);

std::string join_tokens(const std::vector<std::string>& tokens);

enum class NormalizeMode {
  // Drops stopwords and function words (adverbs, prepositions,
  // conjunctions), then merges variants. Used when building lexicons.
  KeywordExtraction,
  // Drops stopwords and the noun-exclusion list, then merges variants.
  // Used when scoring comments against a lexicon.
  BowScoring,
};

// Term lists driving normalize(). Loaded from a plain-text config file with
// one section per list; canonical merge targets always map to themselves.
struct NormalizationConfig {
  std::unordered_set<std::string> stopwords;
  std::unordered_set<std::string> function_words;
  std::unordered_map<std::string, std::string> variant_merge;
  std::unordered_set<std::string> noun_exclusion;

  // Applies the variant-merge map, folding a trailing "s" when the stem is
  // a known canonical term ("colors" -> "color"). Unknown terms pass
  // through.
  std::string merge_variant(const std::string& term) const;

  // The versioned defaults compiled into the library. data/normalization.cfg
  // ships the same lists in file form.
  static const NormalizationConfig& builtin();

  static NormalizationConfig load(const std::filesystem::path& path);
  static NormalizationConfig parse_text(std::string_view text);
};

TokenizedText normalize(const TokenizedText& text, const NormalizationConfig& cfg,
                        NormalizeMode mode);

}  // namespace aescap
