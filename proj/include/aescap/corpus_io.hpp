#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "aescap/types.hpp"

namespace aescap {

struct ParseIssue {
  std::size_t line = 0;
  std::string message;

  bool operator==(const ParseIssue&) const = default;
};

// Result of parsing one corpus file. Comments and images keep input order;
// malformed lines land in issues, never silently dropped, so
// comments.size() + images.size() + issues.size() == line_count.
struct ParsedCorpus {
  std::vector<RawComment> comments;
  std::vector<ImageRecord> images;
  std::vector<ParseIssue> issues;
  std::size_t line_count = 0;
};

// Parses a JSON Lines corpus file. Each line is either a comment record
// {comment_id?, image_id, text, attribute_hint?} or an image record
// {image_id, comment_ids, scores?}. The source enum is imposed on every
// comment; a comment_id is synthesized as "<image_id>#<ordinal>" when
// missing. Throws DataError for an unreadable file or a duplicated
// comment_id (naming both lines).
ParsedCorpus parse_corpus(const std::filesystem::path& path, Source source);

struct CorpusManifest {
  std::string corpus;
  std::map<std::string, std::uint64_t> record_counts;
  std::map<std::string, std::string> checksums;
  std::vector<ParseIssue> issues;
};

// Canonical JSONL writers. Output is byte-identical across runs for the
// same records in the same order.
void write_corpus(const ParsedCorpus& corpus, const std::filesystem::path& path);

struct DatasetManifest {
  std::uint64_t records = 0;
  std::string checksum;
};

DatasetManifest write_dataset(const std::vector<AttributeCaptionSet>& records,
                              const std::filesystem::path& path);
std::vector<AttributeCaptionSet> read_dataset(const std::filesystem::path& path);

std::string file_checksum(const std::filesystem::path& path);

}  // namespace aescap
