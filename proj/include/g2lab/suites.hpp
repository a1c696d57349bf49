#pragma once

// Batch verification suites behind the command-line subcommands. Every
// suite is a pure function of its RunConfig: reports carry no timestamps
// and all randomness flows from RunConfig::seed.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>

#include "g2lab/io.hpp"

namespace g2lab {

struct RunConfig {
  int m = 3;
  std::optional<double> r;
  Tolerance tol;
  std::uint64_t seed = 0;
  int trials = 100;
  std::string out_path;
  /// hypersurface-check only: jitter phi_1 of every case by this much.
  double inject_jitter = 0.0;
  /// type-a only: where to write the spectrum CSV over a radius grid.
  std::string csv_path;

  /// Throws InvalidM / RadiusOutOfRange / InvalidTolerance.
  void validate() const;
};

/// Default tolerance, honoring the G2LAB_TOL environment variable.
Tolerance default_tolerance();

/// CLI radii are kept this far away from the poles at 0 and pi/sqrt(8).
inline constexpr double kRadiusMargin = 1e-6;
/// Threshold for the least-squares fit of the q-forms.
inline constexpr double kEq5FitTol = 1e-8;

/// Keeps the worst value per identity name in first-seen order.
class WorstResiduals {
 public:
  void update(const std::string& name, double value);
  void update(const NamedResiduals& rs, const std::string& prefix = "");
  const NamedResiduals& values() const { return values_; }

 private:
  NamedResiduals values_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct SuiteReport {
  std::string suite_name;
  int cases = 0;
  int passes = 0;
  WorstResiduals worst;
  double wall_seconds = 0.0;
  RunConfig config;
  Json details = Json::object();

  bool pass() const { return cases > 0 && passes == cases; }
  /// Serialized report. Wall time is left out so equal configs give equal bytes.
  Json to_json() const;
};

SuiteReport run_ambient_check(const RunConfig& cfg);
SuiteReport run_hypersurface_check(const RunConfig& cfg);

struct TypeAOutputs {
  SuiteReport report;
  TypeAModel model;
  std::vector<SpectrumA> spectrum_grid;
};

/// Needs cfg.r. The model is returned so callers can emit hyperpoint and
/// shape-operator documents from it.
TypeAOutputs run_type_a(const RunConfig& cfg);

/// Radii r_k = k * pi / (sqrt(8) * (n + 1)), k = 1..n.
std::vector<double> radius_grid(int n);

}  // namespace g2lab
