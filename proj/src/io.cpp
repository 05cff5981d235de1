#include "crem/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace crem::io {

using nlohmann::json;

CovarianceProfile parse_profile_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigParseError(std::string("profile JSON: ") + e.what());
  }
  if (!doc.contains("knots") || !doc["knots"].is_array())
    throw ConfigParseError("profile JSON: missing knots array");
  std::vector<Knot> knots;
  for (const auto& pair : doc["knots"]) {
    if (!pair.is_array() || pair.size() != 2)
      throw ConfigParseError("profile JSON: each knot must be [x, a]");
    knots.push_back({pair[0].get<double>(), pair[1].get<double>()});
  }
  const double alpha = doc.value("holder_alpha", 0.5);
  const double C = doc.value("holder_C", 0.0);
  const double x1 = doc.value("x1", knots.size() > 1 ? knots[1].x : 1.0);
  return CovarianceProfile::validate(std::move(knots), alpha, C, x1);
}

CovarianceProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigParseError("cannot open profile file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_profile_json(ss.str());
}

std::string profile_to_json(const CovarianceProfile& profile) {
  json doc;
  doc["knots"] = json::array();
  for (const Knot& k : profile.knots()) doc["knots"].push_back({k.x, k.a});
  doc["holder_alpha"] = profile.holder_alpha();
  doc["holder_C"] = profile.holder_C();
  doc["x1"] = profile.x1();
  return doc.dump(2);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string profile_digest_hex(const CovarianceProfile& profile) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(profile.digest()));
  return buf;
}

}  // namespace crem::io
