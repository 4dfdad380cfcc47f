#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace ellipsurf::cli {

enum class RequestMethod { auto_select, mc, gauss, laplace, lauricella, asymptotic, bounds };

std::string_view to_string(RequestMethod m) noexcept;
std::optional<RequestMethod> request_method_from_string(std::string_view s) noexcept;

enum class Format { json, csv, text };

std::string_view to_string(Format f) noexcept;
std::optional<Format> format_from_string(std::string_view s) noexcept;

struct RunRequest {
  std::vector<double> axes;
  bool inverse = false;
  RequestMethod method = RequestMethod::auto_select;
  double tol = 1e-12;
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 0x5EEDull;
  std::optional<double> alpha;
  Format format = Format::json;

  friend bool operator==(const RunRequest&, const RunRequest&) = default;
};

nlohmann::ordered_json to_json(const RunRequest& r);
RunRequest request_from_json(const nlohmann::ordered_json& j);

/// Axes list: "1,2,3" inline, or "@path" with one decimal per line (blank lines
/// and lines starting with '#' are skipped). Throws InputError naming the
/// offending entry.
std::vector<double> parse_axes(std::string_view spec);

/// Comma-separated list of non-empty tokens.
std::vector<std::string> split_list(std::string_view s);

/// Hex SHA-256 of the axes printed with %.17g and joined by commas.
std::string axes_sha256(std::span<const double> axes);

/// Random or structured axes for studies.
///   uniform:lo,hi     a_i uniform on [lo, hi]
///   loguniform:lo,hi  log a_i uniform on [log lo, log hi]
///   equal:v           a_i = v
///   zipf-like:s       a_i = i^s (so q_i is proportional to i^{-s})
struct AxisLaw {
  enum class Kind { uniform, loguniform, equal, zipf_like } kind = Kind::uniform;
  double p1 = 1.0;
  double p2 = 2.0;
};

AxisLaw parse_axis_law(std::string_view s);
std::string to_string(const AxisLaw& law);
std::vector<double> draw_axes(const AxisLaw& law, std::size_t n, std::uint64_t seed);

}  // namespace ellipsurf::cli
