#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qfock/fock.hpp"
#include "qfock/quadrature.hpp"
#include "qfock/quaternion.hpp"
#include "qfock/report.hpp"

namespace qfock {

struct VerifyConfig {
  Index dim{64};
  Index margin{16};
  /// Floor applied to every tolerance; 0 keeps the built-in bounds.
  double tol{0};
  SliceAxis<double> axis;
  MeasureSpec measure;
  int threads{1};

  /// Throws ConfigError for margin >= dim, dim < 4 or negative tol.
  void validate() const;
  double bound(double base) const { return base > tol ? base : tol; }
  /// Squeeze and state sizes are chosen for dim 64 and scaled with dim.
  Index scaled(Index d64) const;
};

struct Section {
  int criterion{0};
  Report report;
};

struct SliceRow {
  std::string state;
  std::string axis;
  double r_p{0}, theta_p{0}, r_q{0}, theta_q{0};
  Index dim{0};
  std::string observable;
  double printed_deviation{0};
  double derived_deviation{0};
  Quaterniond numeric;
};

struct VerifyResult {
  std::vector<Section> sections;
  Ledger ledger;
  std::vector<SliceRow> slice_rows;
  nlohmann::ordered_json structure_constants;

  bool passed() const;
  std::vector<std::string> failures() const;
};

VerifyResult run_verify(const VerifyConfig& cfg);

/// ledger.json, verify.csv, slice.csv and structure_constants.json.
void write_verify_outputs(const VerifyResult& res, const std::filesystem::path& dir);

/// Runs f(0..n-1) on up to `threads` workers; results keep index order.
/// The first exception (by index) is rethrown.
template <typename T, typename F>
std::vector<T> parallel_map(int n, int threads, F f) {
  std::vector<std::optional<T>> out(static_cast<std::size_t>(std::max(n, 0)));
  std::vector<std::exception_ptr> err(out.size());
  std::atomic<int> next{0};
  const auto work = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        out[i].emplace(f(i));
      } catch (...) {
        err[i] = std::current_exception();
      }
    }
  };
  const int workers = std::clamp(threads, 1, std::max(n, 1));
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  std::vector<T> res;
  res.reserve(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (err[i]) std::rethrow_exception(err[i]);
    res.push_back(std::move(*out[i]));
  }
  return res;
}

}  // namespace qfock
