#pragma once

namespace zapmmv {

inline constexpr const char* kVersion = "0.1.0";
/// Identifier of the fixed random stream: std::mt19937_64 with 53-bit uniforms
/// and Box-Muller normals. Bump only if the stream ever changes.
inline constexpr const char* kRngId = "mt19937_64-boxmuller-v1";

}  // namespace zapmmv
