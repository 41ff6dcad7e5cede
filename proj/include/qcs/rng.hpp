#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qcs {

/// SplitMix64 finalizer. Used only to derive independent stream keys.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// FNV-1a over a purpose tag such as "matrix" or "dither".
constexpr std::uint64_t tag_hash(std::string_view tag) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Combines a parent seed with an index. Order matters: hash64(s, a, b) and
/// hash64(s, b, a) are unrelated.
constexpr std::uint64_t hash64(std::uint64_t seed) noexcept { return mix64(seed); }

template <typename... Rest>
constexpr std::uint64_t hash64(std::uint64_t seed, std::uint64_t next, Rest... rest) noexcept {
  return hash64(mix64(seed) ^ mix64(next + 0x632be59bd9b4e019ULL), static_cast<std::uint64_t>(rest)...);
}

/// Seed of the stream identified by (seed, purpose tag, indices...).
template <typename... Indices>
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::string_view tag, Indices... idx) noexcept {
  return hash64(seed, tag_hash(tag), static_cast<std::uint64_t>(idx)...);
}

using Engine = std::mt19937_64;

/// Engine for the stream (seed, tag, indices...). Streams with different tags
/// or indices are statistically independent.
template <typename... Indices>
Engine make_stream(std::uint64_t seed, std::string_view tag, Indices... idx) {
  std::seed_seq seq{static_cast<std::uint32_t>(stream_seed(seed, tag, idx...)),
                    static_cast<std::uint32_t>(stream_seed(seed, tag, idx...) >> 32),
                    static_cast<std::uint32_t>(mix64(stream_seed(seed, tag, idx...)))};
  return Engine(seq);
}

}  // namespace qcs
