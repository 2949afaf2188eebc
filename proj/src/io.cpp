#include "qfock/io.hpp"

namespace qfock {

namespace {

nlohmann::ordered_json quad(const Quaterniond& q) { return {q.w(), q.x(), q.y(), q.z()}; }

Quaterniond quad_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4) throw ConfigError("expected [w,x,y,z] quadruple");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

long checked_dim(const nlohmann::json& j, std::size_t expected_entries_per_dim) {
  if (!j.contains("dim") || !j.contains("data")) throw ConfigError("missing dim or data");
  if (j.value("layout", std::string("row-major")) != "row-major")
    throw ConfigError("unsupported layout");
  const long d = j["dim"].get<long>();
  if (d <= 0) throw ConfigError("dim must be positive");
  const std::size_t n = expected_entries_per_dim == 1 ? d : static_cast<std::size_t>(d) * d;
  if (j["data"].size() != n) throw DimensionMismatch("data length does not match dim");
  return d;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

nlohmann::ordered_json to_json(const FockVectord& v) {
  nlohmann::ordered_json j;
  j["dim"] = v.dim();
  auto& data = j["data"] = nlohmann::ordered_json::array();
  for (Index k = 0; k < v.dim(); ++k) data.push_back(quad(v[k]));
  j["layout"] = "row-major";
  return j;
}

nlohmann::ordered_json to_json(const QOperatord& a) {
  nlohmann::ordered_json j;
  j["dim"] = a.dim();
  auto& data = j["data"] = nlohmann::ordered_json::array();
  for (Index r = 0; r < a.dim(); ++r)
    for (Index c = 0; c < a.dim(); ++c) data.push_back(quad(a(r, c)));
  j["layout"] = "row-major";
  return j;
}

FockVectord vector_from_json(const nlohmann::json& j) {
  const long d = checked_dim(j, 1);
  FockVectord v(d);
  for (long k = 0; k < d; ++k) v.set(k, quad_from(j["data"][k]));
  return v;
}

QOperatord operator_from_json(const nlohmann::json& j) {
  const long d = checked_dim(j, 2);
  QOperatord a(d);
  for (long r = 0; r < d; ++r)
    for (long c = 0; c < d; ++c) a.set(r, c, quad_from(j["data"][r * d + c]));
  return a;
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header)
    : os_(os), width_(header.size()) {
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != width_) throw DimensionMismatch("csv row width");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os_ << ',';
    os_ << csv_field(fields[i]);
  }
  os_ << "\r\n";
}

}  // namespace qfock
