#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qfock/fock.hpp"

namespace qfock {

// Schema: {"dim": d, "data": [[w,x,y,z], ...], "layout": "row-major"}.
nlohmann::ordered_json to_json(const FockVectord& v);
nlohmann::ordered_json to_json(const QOperatord& a);
FockVectord vector_from_json(const nlohmann::json& j);
QOperatord operator_from_json(const nlohmann::json& j);

/// Minimal CSV writer: header row, fields quoted only when needed.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& os_;
  std::size_t width_;
};

}  // namespace qfock
