#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "cli/request.hpp"
#include "cli/selftest.hpp"
#include "ellipsurf/asymptotics.hpp"
#include "ellipsurf/ellipsoid.hpp"

namespace ellipsurf::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitSelftestFailure = 1,
  kExitInputError = 2,
  kExitNonConvergence = 3,
};

/// Entry point shared by the binary and the tests. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const SelftestHooks& hooks = {});

/// One isoperimetric-ratio computation with its timing.
struct MethodRun {
  Estimate iso;
  std::optional<double> alpha;
  double wall_ms = 0.0;
};

/// laplace for n <= 1e5, asymptotic above.
Method auto_method(std::size_t n) noexcept;

MethodRun run_method(const Ellipsoid& e, Method m, const RunRequest& req);

/// The single-computation record: dimension, axes_sha256, method, volume,
/// iso_ratio, surface_area, abs_error, evals, seed, alpha, converged,
/// wall_time_ms, log_volume, log_surface_area, iso_ratio_abs_error.
nlohmann::ordered_json area_record(const Ellipsoid& e, const MethodRun& run);

struct PairDeviation {
  Method a = Method::laplace;
  Method b = Method::laplace;
  double abs_deviation = 0.0;
  double rel_deviation = 0.0;
  /// Absolute 4-sigma band for stochastic pairs, relative bound otherwise.
  double tolerance = 0.0;
  std::string tolerance_kind;
  std::string verdict;
};

struct ComparisonReport {
  std::vector<MethodRun> runs;
  std::vector<PairDeviation> deviations;
  BoundsReport bounds;
  LovarDiagnostic lovar;
  std::vector<std::string> notes;
  std::string verdict;
};

inline constexpr double kDeterministicPairTolerance = 1e-6;
inline constexpr double kStochasticPairSigmas = 4.0;

ComparisonReport compare_methods(const Ellipsoid& e, std::span<const Method> methods,
                                 const RunRequest& req);

nlohmann::ordered_json to_json(const Ellipsoid& e, const ComparisonReport& report);

struct ConvergeRow {
  std::size_t n = 0;
  double lovar_ratio = 0.0;
  double laplace = 0.0;
  double asymptotic = 0.0;
  /// |laplace / asymptotic - 1|
  double deviation = 0.0;
  bool converged = true;
};

/// Throws InputError unless dims is strictly ascending and positive.
std::vector<ConvergeRow> converge_study(std::span<const std::size_t> dims, const AxisLaw& law,
                                        std::uint64_t seed, double tol);

std::string converge_csv(std::span<const ConvergeRow> rows);

struct BoundsCheck {
  BoundsReport report;
  std::optional<MethodRun> laplace;
  std::optional<bool> contained;
};

/// bounds_l2, plus the laplace ratio and its containment when `check` is set.
/// Containment allows a relative slack of 1e-12 on each side.
BoundsCheck bounds_check(const Ellipsoid& e, bool check, const RunRequest& req);

nlohmann::ordered_json to_json(const Ellipsoid& e, const BoundsCheck& b);

}  // namespace ellipsurf::cli
