#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "aescap/textnorm.hpp"
#include "aescap/types.hpp"

namespace aescap {

struct LexiconEntry {
  std::string term;
  std::uint64_t frequency = 0;

  bool operator==(const LexiconEntry&) const = default;
};

// Ranked term-frequency table for one attribute. Entries are sorted by
// frequency descending, ties broken lexicographically ascending, and capped
// at k.
struct Lexicon {
  std::string attribute;
  std::vector<LexiconEntry> entries;
  std::size_t k = 0;

  bool contains(std::string_view term) const;
  std::uint64_t frequency_of(std::string_view term) const;
};

using TermCounts = std::unordered_map<std::string, std::uint64_t>;

// Counts normalized term occurrences (keyword-extraction mode) per hinted
// attribute. Counting is a sharded commutative reduction: results are
// independent of worker count and input order. A comment without an
// attribute hint is rejected with DataError.
std::map<LegacyAttribute, TermCounts> count_terms(std::span<const RawComment> comments,
                                                  const NormalizationConfig& cfg,
                                                  std::size_t workers = 1);

// The k highest-frequency entries under the documented tie-break. A table
// smaller than k yields the whole table sorted. k must be >= 1.
Lexicon top_k(const TermCounts& table, std::size_t k, std::string attribute);

// Routing of legacy ColorLighting terms into the Light and Color lexicons.
// Terms absent from the partition go to both.
struct AttributeSplitConfig {
  enum class Target { Light, Color, Both };
  std::unordered_map<std::string, Target> partition;

  static const AttributeSplitConfig& builtin();
  static AttributeSplitConfig load(const std::filesystem::path& path);
  static AttributeSplitConfig parse_text(std::string_view text);

  Target target_of(const std::string& term) const;
};

// Folds the seven legacy lexicons into the four target attributes:
// Composition + DepthOfField + Focus merge by summing frequencies then
// re-ranking and re-capping; ColorLighting splits into Light and Color via
// the partition; SubjectOfPhoto becomes Subject; GeneralImpression and
// UseOfCamera are dropped.
std::map<AttributeV2, Lexicon> merge_attributes(const std::map<LegacyAttribute, Lexicon>& lexicons,
                                                const AttributeSplitConfig& split);

// Union of the four attribute lexicons for BoW scoring. Duplicate terms
// keep their highest per-attribute frequency so terms routed to both sides
// of a split are not double counted. Not re-capped.
Lexicon union_lexicon(const std::map<AttributeV2, Lexicon>& lexicons);

// Hashed view of a lexicon for per-token membership tests on large
// corpora.
struct LexiconIndex {
  std::unordered_map<std::string, std::uint64_t> frequencies;

  static LexiconIndex from(const Lexicon& lex);
  bool contains(const std::string& term) const { return frequencies.contains(term); }
  std::uint64_t frequency_of(const std::string& term) const {
    auto it = frequencies.find(term);
    return it == frequencies.end() ? 0 : it->second;
  }
};

// CSV persistence: header "attribute,term,frequency,rank", rows sorted by
// (attribute, rank).
void write_lexicons_csv(const std::map<AttributeV2, Lexicon>& lexicons,
                        const std::filesystem::path& path);
std::map<AttributeV2, Lexicon> read_lexicons_csv(const std::filesystem::path& path);

}  // namespace aescap
