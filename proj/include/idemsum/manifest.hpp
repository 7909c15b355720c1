#pragma once

#include <filesystem>

#include "json.hpp"

#include "idemsum/families.hpp"

namespace idemsum {

// Writes q1.txt ... qn.txt and manifest.json into dir (created if missing).
// extra is merged into the manifest object.
void save_family(const std::filesystem::path& dir, const IdempotentFamily& fam,
                 const nlohmann::ordered_json& extra = nlohmann::ordered_json::object());

nlohmann::ordered_json manifest_json(const IdempotentFamily& fam);

// Accepts the manifest file itself or the directory holding manifest.json.
IdempotentFamily load_family(const std::filesystem::path& path);

}  // namespace idemsum
