#pragma once

#include <string>

#include <json.hpp>

#include "qgibbs/extrapolation.hpp"

namespace qgibbs {

std::string version_string();

/// +inf serializes as the literal string "inf" (JSON has no inf).
nlohmann::json json_number(double v);

/// CSV with the fixed, versioned column pair.
std::string series_csv(const ExtrapolationSeries& s);
nlohmann::json series_json(const ExtrapolationSeries& s);

void ensure_directory(const std::string& dir);
void write_text_file(const std::string& path, const std::string& content);
void write_json_file(const std::string& path, const nlohmann::json& j);

/// <dir>/<name>.csv plus the series block inside a summary elsewhere.
void write_series_csv(const std::string& dir, const std::string& name,
                      const ExtrapolationSeries& s);

}  // namespace qgibbs
