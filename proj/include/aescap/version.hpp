#pragma once

namespace aescap {

inline constexpr const char* kToolName = "aescap";
inline constexpr const char* kToolVersion = "0.1.0";

// Named, portable PRNG scheme used for every seeded step. mt19937_64 has a
// standard-defined sequence; bounded draws use rejection sampling, so the
// same seed yields the same sample on any platform.
inline constexpr const char* kRngScheme =
    "mt19937_64 + rejection-bounded draws + partial fisher-yates";

}  // namespace aescap
