#pragma once

namespace lingdetect {

inline constexpr const char* kArtifactVersion = "0.1.0";
inline constexpr int kModelFormatVersion = 1;
inline constexpr const char* kGrammarRulesetVersion = "gr-v1";

// Pinned compressor setting for the gzip_ratio feature. Absolute ratios
// depend on this; it is recorded in run manifests and model artifacts.
inline constexpr const char* kCompressorId = "zlib-deflate-6";
inline constexpr int kCompressorLevel = 6;

} // namespace lingdetect
