#include "qgibbs/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "qgibbs/errors.hpp"

namespace qgibbs {

std::string version_string() { return "qgibbs 0.1.0"; }

nlohmann::json json_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

std::string series_csv(const ExtrapolationSeries& s) {
  std::ostringstream os;
  os << "volume,value\n";
  os << std::setprecision(17);
  for (const auto& [v, y] : s.points) os << v << "," << y << "\n";
  return os.str();
}

nlohmann::json series_json(const ExtrapolationSeries& s) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& [v, y] : s.points)
    points.push_back({{"volume", v}, {"value", json_number(y)}});
  return {{"points", points},
          {"limit_estimate", json_number(s.limit_estimate)},
          {"fit_residual", json_number(s.fit_residual)},
          {"method", s.method}};
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir + ": " + ec.message());
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

void write_series_csv(const std::string& dir, const std::string& name,
                      const ExtrapolationSeries& s) {
  ensure_directory(dir);
  write_text_file(dir + "/" + name + ".csv", series_csv(s));
}

}  // namespace qgibbs
