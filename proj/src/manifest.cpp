#include "invpso/manifest.hpp"

#include <cstdio>
#include <json.hpp>

namespace invpso {

std::uint64_t content_digest(std::string_view bytes) noexcept {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string hex_digest(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

std::string render_manifest(const RunManifest& manifest) {
  nlohmann::ordered_json doc;
  doc["version"] = manifest.version;
  doc["seed"] = manifest.seed;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [key, value] : manifest.config) config[key] = value;
  doc["config"] = std::move(config);
  nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
  for (const InputDigest& input : manifest.inputs) {
    inputs.push_back({{"role", input.role}, {"path", input.path}, {"fnv1a64", hex_digest(input.digest)}});
  }
  doc["inputs"] = std::move(inputs);
  return doc.dump(2) + "\n";
}

}  // namespace invpso
