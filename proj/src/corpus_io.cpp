#include "aescap/corpus_io.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "aescap/errors.hpp"

namespace aescap {

using nlohmann::json;

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::string to_hex(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return out;
}

json comment_to_json(const RawComment& c) {
  json j;
  j["comment_id"] = c.comment_id;
  j["image_id"] = c.image_id;
  j["source"] = std::string(to_string(c.source));
  if (c.attribute_hint) j["attribute_hint"] = std::string(to_string(*c.attribute_hint));
  j["text"] = c.text;
  return j;
}

json image_to_json(const ImageRecord& r) {
  json j;
  j["image_id"] = r.image_id;
  j["comment_ids"] = r.comment_ids;
  if (!r.scores.empty()) {
    json scores = json::object();
    for (const auto& [attr, value] : r.scores) scores[std::string(to_string(attr))] = value;
    j["scores"] = scores;
  }
  return j;
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

std::string trimmed(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

ParsedCorpus parse_corpus(const std::filesystem::path& path, Source source) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read corpus file: " + path.string());

  ParsedCorpus out;
  // comment_id -> first line seen, for the duplicate check
  std::unordered_map<std::string, std::size_t> seen_ids;
  std::unordered_map<std::string, std::size_t> per_image_ordinal;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    ++out.line_count;
    if (is_blank(line)) {
      out.issues.push_back({lineno, "blank line"});
      continue;
    }
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      out.issues.push_back({lineno, "not a JSON object"});
      continue;
    }

    if (j.contains("comment_ids")) {
      ImageRecord rec;
      if (!j.contains("image_id") || !j["image_id"].is_string()) {
        out.issues.push_back({lineno, "image record missing image_id"});
        continue;
      }
      rec.image_id = j["image_id"].get<std::string>();
      if (!j["comment_ids"].is_array() || j["comment_ids"].empty()) {
        out.issues.push_back({lineno, "image record needs a non-empty comment_ids array"});
        continue;
      }
      bool ok = true;
      for (const auto& id : j["comment_ids"]) {
        if (!id.is_string()) {
          out.issues.push_back({lineno, "comment_ids must be strings"});
          ok = false;
          break;
        }
        rec.comment_ids.push_back(id.get<std::string>());
      }
      if (!ok) continue;
      {
        auto ids = rec.comment_ids;
        std::sort(ids.begin(), ids.end());
        if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
          out.issues.push_back({lineno, "duplicate id in comment_ids"});
          continue;
        }
      }
      if (j.contains("scores")) {
        if (!j["scores"].is_object()) {
          out.issues.push_back({lineno, "scores must be an object"});
          continue;
        }
        for (const auto& [key, value] : j["scores"].items()) {
          const auto attr = legacy_attribute_from_string(key);
          if (!attr || !value.is_number()) {
            out.issues.push_back({lineno, "bad score entry '" + key + "'"});
            ok = false;
            break;
          }
          const double v = value.get<double>();
          if (v < 0.0 || v > 10.0) {
            out.issues.push_back({lineno, "score out of [0,10] for '" + key + "'"});
            ok = false;
            break;
          }
          rec.scores[*attr] = v;
        }
        if (!ok) continue;
      }
      out.images.push_back(std::move(rec));
      continue;
    }

    if (!j.contains("text")) {
      out.issues.push_back({lineno, "record is neither a comment (text) nor an image (comment_ids)"});
      continue;
    }
    RawComment c;
    c.source = source;
    if (!j.contains("image_id") || !j["image_id"].is_string()) {
      out.issues.push_back({lineno, "comment missing image_id"});
      continue;
    }
    c.image_id = j["image_id"].get<std::string>();
    if (!j["text"].is_string()) {
      out.issues.push_back({lineno, "text must be a string"});
      continue;
    }
    c.text = j["text"].get<std::string>();
    if (trimmed(c.text).empty()) {
      out.issues.push_back({lineno, "text is empty after trimming"});
      continue;
    }
    if (j.contains("attribute_hint")) {
      if (source != Source::FullyAnnotated) {
        out.issues.push_back({lineno, "attribute_hint only allowed for fully_annotated records"});
        continue;
      }
      if (!j["attribute_hint"].is_string()) {
        out.issues.push_back({lineno, "attribute_hint must be a string"});
        continue;
      }
      const auto hint = legacy_attribute_from_string(j["attribute_hint"].get<std::string>());
      if (!hint) {
        out.issues.push_back(
            {lineno, "unknown attribute_hint '" + j["attribute_hint"].get<std::string>() + "'"});
        continue;
      }
      c.attribute_hint = *hint;
    } else if (source == Source::FullyAnnotated) {
      out.issues.push_back({lineno, "fully_annotated comment needs an attribute_hint"});
      continue;
    }
    if (j.contains("comment_id")) {
      if (!j["comment_id"].is_string() || j["comment_id"].get<std::string>().empty()) {
        out.issues.push_back({lineno, "comment_id must be a non-empty string"});
        continue;
      }
      c.comment_id = j["comment_id"].get<std::string>();
    } else {
      c.comment_id = c.image_id + "#" + std::to_string(per_image_ordinal[c.image_id]);
    }
    per_image_ordinal[c.image_id]++;

    if (auto [it, inserted] = seen_ids.emplace(c.comment_id, lineno); !inserted) {
      throw DataError("duplicate comment_id '" + c.comment_id + "' in " + path.string() +
                      " (lines " + std::to_string(it->second) + " and " + std::to_string(lineno) +
                      ")");
    }
    out.comments.push_back(std::move(c));
  }
  return out;
}

void write_corpus(const ParsedCorpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write corpus file: " + path.string());
  for (const auto& c : corpus.comments) out << comment_to_json(c).dump() << '\n';
  for (const auto& r : corpus.images) out << image_to_json(r).dump() << '\n';
  if (!out) throw DataError("write failed: " + path.string());
}

DatasetManifest write_dataset(const std::vector<AttributeCaptionSet>& records,
                              const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write dataset file: " + path.string());
  for (const auto& rec : records) {
    json j;
    j["image_id"] = rec.image_id;
    j["attribute"] = std::string(to_string(rec.attribute));
    j["ground_truth"] = rec.ground_truth;
    j["references"] = rec.references;
    j["weights"] = rec.weights;
    out << j.dump() << '\n';
  }
  out.flush();
  if (!out) throw DataError("write failed: " + path.string());
  out.close();
  DatasetManifest manifest;
  manifest.records = records.size();
  manifest.checksum = file_checksum(path);
  return manifest;
}

std::vector<AttributeCaptionSet> read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read dataset file: " + path.string());
  std::vector<AttributeCaptionSet> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank(line)) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": not a JSON object");
    AttributeCaptionSet rec;
    try {
      rec.image_id = j.at("image_id").get<std::string>();
      const auto attr = attribute_v2_from_string(j.at("attribute").get<std::string>());
      if (!attr) throw DataError("unknown attribute");
      rec.attribute = *attr;
      rec.ground_truth = j.at("ground_truth").get<std::string>();
      rec.references = j.at("references").get<std::vector<std::string>>();
      rec.weights = j.at("weights").get<std::vector<double>>();
    } catch (const json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (rec.weights.size() != rec.references.size() + 1)
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": weights must parallel [ground_truth] + references");
    out.push_back(std::move(rec));
  }
  return out;
}

std::string file_checksum(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read file for checksum: " + path.string());
  std::uint64_t h = kFnvOffset;
  char buf[1 << 14];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= kFnvPrime;
    }
    if (!in) break;
  }
  return "fnv1a64:" + to_hex(h);
}

}  // namespace aescap
