#include "qfock/report.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace qfock {

double Report::deviation(const std::string& identity) const {
  for (const auto& c : checks_)
    if (c.identity == identity) return c.deviation;
  throw std::out_of_range("no check named " + identity);
}

std::vector<std::string> Report::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks_)
    if (!c.passed()) out.push_back(c.identity);
  return out;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["title"] = title_;
  j["passed"] = passed();
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks_) {
    arr.push_back({{"identity", c.identity},
                   {"deviation", c.deviation},
                   {"tolerance", c.tolerance},
                   {"passed", c.passed()}});
  }
  return j;
}

bool Ledger::contains(const std::string& identity) const {
  for (const auto& e : entries_)
    if (e.identity == identity) return true;
  return false;
}

const LedgerEntry& Ledger::find(const std::string& identity) const {
  for (const auto& e : entries_)
    if (e.identity == identity) return e;
  throw std::out_of_range("no ledger entry " + identity);
}

nlohmann::ordered_json Ledger::to_json() const {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : entries_) {
    nlohmann::ordered_json j;
    j["identity"] = e.identity;
    j["paper_variant"] = e.paper_variant;
    j["oracle_variant"] = e.oracle_variant;
    if (std::isfinite(e.measured_deviation))
      j["measured_deviation"] = e.measured_deviation;
    else
      j["measured_deviation"] = "inf";
    j["dim"] = e.dim;
    j["margin"] = e.margin;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace qfock
