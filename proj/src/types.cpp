#include "aescap/types.hpp"

namespace aescap {

std::string_view to_string(Source s) {
  switch (s) {
    case Source::FullyAnnotated: return "fully_annotated";
    case Source::WeaklyAnnotated: return "weakly_annotated";
    case Source::NegativeCorpus: return "negative_corpus";
  }
  return "unknown";
}

std::string_view to_string(LegacyAttribute a) {
  switch (a) {
    case LegacyAttribute::ColorLighting: return "color_lighting";
    case LegacyAttribute::Composition: return "composition";
    case LegacyAttribute::DepthOfField: return "depth_of_field";
    case LegacyAttribute::Focus: return "focus";
    case LegacyAttribute::GeneralImpression: return "general_impression";
    case LegacyAttribute::SubjectOfPhoto: return "subject_of_photo";
    case LegacyAttribute::UseOfCamera: return "use_of_camera";
  }
  return "unknown";
}

std::string_view to_string(AttributeV2 a) {
  switch (a) {
    case AttributeV2::Composition: return "composition";
    case AttributeV2::Light: return "light";
    case AttributeV2::Color: return "color";
    case AttributeV2::Subject: return "subject";
  }
  return "unknown";
}

std::optional<Source> source_from_string(std::string_view s) {
  if (s == "fully_annotated") return Source::FullyAnnotated;
  if (s == "weakly_annotated") return Source::WeaklyAnnotated;
  if (s == "negative_corpus") return Source::NegativeCorpus;
  return std::nullopt;
}

std::optional<LegacyAttribute> legacy_attribute_from_string(std::string_view s) {
  for (auto a : kLegacyAttributes)
    if (s == to_string(a)) return a;
  return std::nullopt;
}

std::optional<AttributeV2> attribute_v2_from_string(std::string_view s) {
  for (auto a : kAttributesV2)
    if (s == to_string(a)) return a;
  return std::nullopt;
}

}  // namespace aescap
