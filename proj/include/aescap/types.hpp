#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aescap {

// Which corpus a comment comes from. The fully annotated corpus carries
// per-attribute comments, the weakly annotated one carries free-form
// comments, and the negative corpus provides generic (non-aesthetic)
// captions for classifier training.
enum class Source {
  FullyAnnotated,
  WeaklyAnnotated,
  NegativeCorpus,
};

// The seven attribute labels of the fully annotated corpus.
enum class LegacyAttribute {
  ColorLighting,
  Composition,
  DepthOfField,
  Focus,
  GeneralImpression,
  SubjectOfPhoto,
  UseOfCamera,
};

// The four target attributes of the assembled dataset.
enum class AttributeV2 {
  Composition,
  Light,
  Color,
  Subject,
};

inline constexpr std::array<LegacyAttribute, 7> kLegacyAttributes = {
    LegacyAttribute::ColorLighting,     LegacyAttribute::Composition,
    LegacyAttribute::DepthOfField,      LegacyAttribute::Focus,
    LegacyAttribute::GeneralImpression, LegacyAttribute::SubjectOfPhoto,
    LegacyAttribute::UseOfCamera,
};

inline constexpr std::array<AttributeV2, 4> kAttributesV2 = {
    AttributeV2::Composition,
    AttributeV2::Light,
    AttributeV2::Color,
    AttributeV2::Subject,
};

std::string_view to_string(Source s);
std::string_view to_string(LegacyAttribute a);
std::string_view to_string(AttributeV2 a);

std::optional<Source> source_from_string(std::string_view s);
std::optional<LegacyAttribute> legacy_attribute_from_string(std::string_view s);
std::optional<AttributeV2> attribute_v2_from_string(std::string_view s);

// One user comment attached to an image. attribute_hint is present exactly
// when the comment comes from the fully annotated corpus.
struct RawComment {
  std::string comment_id;
  std::string image_id;
  Source source = Source::WeaklyAnnotated;
  std::optional<LegacyAttribute> attribute_hint;
  std::string text;

  bool operator==(const RawComment&) const = default;
};

// An image with the ids of its comments; the fully annotated corpus may
// attach per-attribute scores in [0,10]. Scores pass through untouched.
struct ImageRecord {
  std::string image_id;
  std::vector<std::string> comment_ids;
  std::map<LegacyAttribute, double> scores;

  bool operator==(const ImageRecord&) const = default;
};

// Per (image, attribute) caption group: the ground truth caption plus up to
// four reference captions. weights runs parallel to [ground_truth] followed
// by references, so weights.front() is the ground-truth weight.
struct AttributeCaptionSet {
  std::string image_id;
  AttributeV2 attribute = AttributeV2::Composition;
  std::string ground_truth;
  std::vector<std::string> references;
  std::vector<double> weights;

  bool operator==(const AttributeCaptionSet&) const = default;
};

}  // namespace aescap
