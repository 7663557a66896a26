#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "aescap/types.hpp"

namespace aescap::testing {

// Synthetic corpus triple written as JSONL files: a fully annotated corpus
// with per-attribute comments, a weakly annotated corpus of free comments
// and a generic-caption negative corpus. Fully deterministic for a given
// seed.
struct FixturePaths {
  std::filesystem::path fully_annotated;
  std::filesystem::path weakly_annotated;
  std::filesystem::path negatives;
  std::size_t fa_comments = 0;
  std::size_t weak_comments = 0;
  std::size_t weak_images = 0;
  std::size_t negative_comments = 0;
};

FixturePaths make_fixture_corpora(const std::filesystem::path& dir, std::uint64_t seed);

// In-memory comment helpers for unit tests.
RawComment comment(std::string id, std::string image, std::string text,
                   Source source = Source::WeaklyAnnotated);
RawComment hinted(std::string id, std::string image, std::string text, LegacyAttribute hint);

// Fresh scratch directory under the system temp dir; wiped on reuse.
std::filesystem::path temp_dir(const std::string& name);

}  // namespace aescap::testing
