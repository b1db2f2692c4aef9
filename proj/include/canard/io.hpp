#pragma once

#include "canard/bigreal.hpp"
#include "canard/flow.hpp"
#include "canard/pws.hpp"
#include "canard/regfun.hpp"
#include "canard/sdi.hpp"
#include "canard/synthesis.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

namespace canard::io {

using nlohmann::json;

// All numeric payloads travel as decimal strings so that files round-trip
// exactly at the working precision.

json system_to_json(const PWSSystem& sys);
PWSSystem system_from_json(const json& j);
PWSSystem load_system(const std::filesystem::path& path);

json regfun_to_json(const RegularizationFunction& f);
RegularizationFunction regfun_from_json(const json& j);
// Accepts a file path or the built-in name "arctan".
RegularizationFunction load_regfun(const std::string& path_or_name);

json synthesis_result_to_json(const SynthesisSpec& spec, const SynthesisResult& res);

// temp file + rename; no partial files on failure
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

std::string csv_join(const std::vector<std::string>& cells);

// FNV-1a over the canonical config string, for the run manifest.
std::string config_hash(const std::string& canonical);

} // namespace canard::io
