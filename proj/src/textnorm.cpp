#include "aescap/textnorm.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "aescap/errors.hpp"

namespace aescap {

namespace {

bool is_word_byte(unsigned char c) {
  // Non-ASCII bytes pass through as word characters; case folding is ASCII
  // only.
  return std::isalnum(c) != 0 || c >= 0x80;
}

}  // namespace

TokenizedText tokenize(std::string_view text) {
  TokenizedText out;
  out.original.assign(text);
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (is_word_byte(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
      continue;
    }
    // '&' and apostrophes join a token only between word characters, so
    // "black&white" and "don't" survive while stray punctuation splits.
    const bool joiner = (c == '&' || c == '\'');
    if (joiner && !current.empty() && i + 1 < text.size() &&
        is_word_byte(static_cast<unsigned char>(text[i + 1]))) {
      current.push_back(static_cast<char>(c));
      continue;
    }
    if (!current.empty()) {
      out.tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.tokens.push_back(std::move(current));
  return out;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string joined;
  for (const auto& t : tokens) {
    if (!joined.empty()) joined.push_back(' ');
    joined += t;
  }
  return joined;
}

std::string NormalizationConfig::merge_variant(const std::string& term) const {
  if (auto it = variant_merge.find(term); it != variant_merge.end()) return it->second;
  if (term.size() > 1 && term.back() == 's') {
    const std::string stem = term.substr(0, term.size() - 1);
    if (auto it = variant_merge.find(stem); it != variant_merge.end()) return it->second;
  }
  return term;
}

TokenizedText normalize(const TokenizedText& text, const NormalizationConfig& cfg,
                        NormalizeMode mode) {
  TokenizedText out;
  out.original = text.original;
  out.tokens.reserve(text.tokens.size());
  for (const auto& token : text.tokens) {
    if (cfg.stopwords.contains(token)) continue;
    if (mode == NormalizeMode::KeywordExtraction && cfg.function_words.contains(token)) continue;
    if (mode == NormalizeMode::BowScoring && cfg.noun_exclusion.contains(token)) continue;
    out.tokens.push_back(cfg.merge_variant(token));
  }
  return out;
}

namespace {

// Config sections: [stopwords], [function_words], [variant_merge],
// [noun_exclusion]. One term (or variant=canonical pair) per line; '#'
// starts a comment.
NormalizationConfig parse_sections(std::string_view text) {
  NormalizationConfig cfg;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    // trim
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    if (line.front() == '[' && line.back() == ']') {
      section = line.substr(1, line.size() - 2);
      continue;
    }
    if (section == "stopwords") {
      cfg.stopwords.insert(line);
    } else if (section == "function_words") {
      cfg.function_words.insert(line);
    } else if (section == "noun_exclusion") {
      cfg.noun_exclusion.insert(line);
    } else if (section == "variant_merge") {
      const auto eq = line.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 >= line.size())
        throw DataError("normalization config line " + std::to_string(lineno) +
                        ": expected variant=canonical, got '" + line + "'");
      cfg.variant_merge.emplace(line.substr(0, eq), line.substr(eq + 1));
    } else {
      throw DataError("normalization config line " + std::to_string(lineno) +
                      ": term outside a known section");
    }
  }
  // Canonical targets map to themselves so merging is idempotent.
  for (const auto& [variant, canonical] : std::unordered_map<std::string, std::string>(
           cfg.variant_merge.begin(), cfg.variant_merge.end())) {
    (void)variant;
    cfg.variant_merge.emplace(canonical, canonical);
  }
  for (const auto& [variant, canonical] : cfg.variant_merge) {
    if (cfg.merge_variant(canonical) != canonical)
      throw DataError("variant merge map is not idempotent at '" + variant + "' -> '" +
                      canonical + "'");
    if (cfg.stopwords.contains(canonical) || cfg.function_words.contains(canonical) ||
        cfg.noun_exclusion.contains(canonical))
      throw DataError("canonical term '" + canonical + "' would be dropped by a filter list");
  }
  return cfg;
}

}  // namespace

NormalizationConfig NormalizationConfig::parse_text(std::string_view text) {
  return parse_sections(text);
}

NormalizationConfig NormalizationConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read normalization config: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_sections(buffer.str());
}

}  // namespace aescap
