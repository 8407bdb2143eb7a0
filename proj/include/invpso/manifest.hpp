#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "invpso/config.hpp"

namespace invpso {

inline constexpr std::string_view kVersion = "1.0.0";

/// 64-bit FNV-1a over the bytes.
std::uint64_t content_digest(std::string_view bytes) noexcept;

std::string hex_digest(std::uint64_t digest);

struct InputDigest {
  std::string role;
  std::string path;
  std::uint64_t digest = 0;
};

struct RunManifest {
  Settings config;
  std::vector<InputDigest> inputs;
  std::uint64_t seed = 0;
  std::string version{kVersion};
};

std::string render_manifest(const RunManifest& manifest);

}  // namespace invpso
