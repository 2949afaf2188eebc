#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace qfock {

/// One measured identity: deviation against an explicit tolerance.
struct Check {
  std::string identity;
  double deviation{0};
  double tolerance{0};

  bool passed() const { return deviation <= tolerance; }
};

class Report {
 public:
  Report() = default;
  explicit Report(std::string title) : title_(std::move(title)) {}

  void add(std::string identity, double deviation, double tolerance) {
    checks_.push_back({std::move(identity), deviation, tolerance});
  }
  void merge(const Report& other) {
    checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
  }

  const std::string& title() const { return title_; }
  const std::vector<Check>& checks() const { return checks_; }
  bool passed() const {
    for (const auto& c : checks_)
      if (!c.passed()) return false;
    return true;
  }
  double max_deviation() const {
    double m = 0;
    for (const auto& c : checks_) m = c.deviation > m ? c.deviation : m;
    return m;
  }
  /// Deviation of the named check; throws if absent.
  double deviation(const std::string& identity) const;
  std::vector<std::string> failures() const;

  nlohmann::ordered_json to_json() const;

 private:
  std::string title_;
  std::vector<Check> checks_;
};

/// A printed formula contradicted (or only partly confirmed) by the
/// matrix oracle.
struct LedgerEntry {
  std::string identity;
  std::string paper_variant;
  std::string oracle_variant;
  double measured_deviation{0};
  long dim{0};
  long margin{0};
};

class Ledger {
 public:
  void add(LedgerEntry e) { entries_.push_back(std::move(e)); }
  void merge(const Ledger& other) {
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  }
  const std::vector<LedgerEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  bool contains(const std::string& identity) const;
  const LedgerEntry& find(const std::string& identity) const;

  nlohmann::ordered_json to_json() const;

 private:
  std::vector<LedgerEntry> entries_;
};

/// Shortest round-trip decimal for a double, locale independent.
std::string format_double(double v);

}  // namespace qfock
