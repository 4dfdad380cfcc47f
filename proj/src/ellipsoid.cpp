#include "ellipsurf/ellipsoid.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "ellipsurf/detail/summation.hpp"
#include "ellipsurf/errors.hpp"

namespace ellipsurf {
namespace {

void require_positive_finite(std::span<const double> values, const char* what) {
  if (values.empty()) {
    throw InputError(std::string("ellipsoid needs at least one ") + what);
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InputError(std::string(what) + " " + std::to_string(i + 1) + " (value " +
                       std::to_string(v) + ") must be positive and finite");
    }
  }
}

std::vector<double> reciprocals(std::span<const double> v, const char* what) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = 1.0 / v[i];
    if (!(out[i] > 0.0) || !std::isfinite(out[i])) {
      throw InputError(std::string("reciprocal of ") + what + " " + std::to_string(i + 1) +
                       " is not representable");
    }
  }
  return out;
}

}  // namespace

Ellipsoid::Ellipsoid(std::vector<double> axes)
    : Ellipsoid(axes, [&] {
        require_positive_finite(axes, "axis");
        return reciprocals(axes, "axis");
      }()) {}

Ellipsoid::Ellipsoid(std::vector<double> axes, std::vector<double> inverse)
    : axes_(std::move(axes)), inverse_(std::move(inverse)) {
  detail::CompensatedSum s;
  for (double a : axes_) s.add(std::log(a));
  log_axes_product_ = s.value();
}

Ellipsoid Ellipsoid::from_inverse_axes(std::span<const double> q) {
  require_positive_finite(q, "inverse axis");
  std::vector<double> inv(q.begin(), q.end());
  std::vector<double> axes = reciprocals(q, "inverse axis");
  return Ellipsoid(std::move(axes), std::move(inv));
}

Ellipsoid Ellipsoid::ball(std::size_t n, double radius) {
  return Ellipsoid(std::vector<double>(n, radius));
}

namespace {
constexpr std::array<std::pair<Method, std::string_view>, 6> kMethodNames{{
    {Method::mc, "mc"},
    {Method::gauss, "gauss"},
    {Method::laplace, "laplace"},
    {Method::lauricella, "lauricella"},
    {Method::asymptotic, "asymptotic"},
    {Method::closed_form, "closed_form"},
}};
}  // namespace

std::string_view to_string(Method m) noexcept {
  for (const auto& [method, name] : kMethodNames) {
    if (method == m) return name;
  }
  return "unknown";
}

std::optional<Method> method_from_string(std::string_view s) noexcept {
  for (const auto& [method, name] : kMethodNames) {
    if (name == s) return method;
  }
  return std::nullopt;
}

}  // namespace ellipsurf
