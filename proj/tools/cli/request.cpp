#include "cli/request.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "ellipsurf/errors.hpp"
#include "ellipsurf/rng.hpp"

namespace ellipsurf::cli {

namespace {

constexpr std::array<std::pair<RequestMethod, std::string_view>, 7> kMethodNames{{
    {RequestMethod::auto_select, "auto"},
    {RequestMethod::mc, "mc"},
    {RequestMethod::gauss, "gauss"},
    {RequestMethod::laplace, "laplace"},
    {RequestMethod::lauricella, "lauricella"},
    {RequestMethod::asymptotic, "asymptotic"},
    {RequestMethod::bounds, "bounds"},
}};

constexpr std::array<std::pair<Format, std::string_view>, 3> kFormatNames{{
    {Format::json, "json"},
    {Format::csv, "csv"},
    {Format::text, "text"},
}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view token, const std::string& what) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
    throw InputError(what + " (\"" + std::string(token) + "\") is not a decimal number");
  }
  return v;
}

void check_axis(double v, std::size_t index) {
  if (!(std::isfinite(v) && v > 0.0)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    throw InputError("axis " + std::to_string(index) + " (value " + buf +
                     ") must be positive and finite");
  }
}

}  // namespace

std::string_view to_string(RequestMethod m) noexcept {
  for (const auto& [k, name] : kMethodNames) {
    if (k == m) return name;
  }
  return "auto";
}

std::optional<RequestMethod> request_method_from_string(std::string_view s) noexcept {
  for (const auto& [k, name] : kMethodNames) {
    if (name == s) return k;
  }
  return std::nullopt;
}

std::string_view to_string(Format f) noexcept {
  for (const auto& [k, name] : kFormatNames) {
    if (k == f) return name;
  }
  return "json";
}

std::optional<Format> format_from_string(std::string_view s) noexcept {
  for (const auto& [k, name] : kFormatNames) {
    if (name == s) return k;
  }
  return std::nullopt;
}

nlohmann::ordered_json to_json(const RunRequest& r) {
  nlohmann::ordered_json j;
  j["axes"] = r.axes;
  j["inverse"] = r.inverse;
  j["method"] = std::string(to_string(r.method));
  j["tol"] = r.tol;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["alpha"] = r.alpha ? nlohmann::ordered_json(*r.alpha) : nlohmann::ordered_json(nullptr);
  j["format"] = std::string(to_string(r.format));
  return j;
}

RunRequest request_from_json(const nlohmann::ordered_json& j) {
  RunRequest r;
  try {
    r.axes = j.at("axes").get<std::vector<double>>();
    r.inverse = j.at("inverse").get<bool>();
    const auto method = request_method_from_string(j.at("method").get<std::string>());
    if (!method) throw InputError("unknown method " + j.at("method").dump());
    r.method = *method;
    r.tol = j.at("tol").get<double>();
    r.samples = j.at("samples").get<std::int64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("alpha").is_null()) r.alpha = j.at("alpha").get<double>();
    const auto format = format_from_string(j.at("format").get<std::string>());
    if (!format) throw InputError("unknown format " + j.at("format").dump());
    r.format = *format;
  } catch (const nlohmann::ordered_json::exception& e) {
    throw InputError(std::string("malformed request: ") + e.what());
  }
  return r;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  while (true) {
    const auto comma = s.find(',');
    const auto token = trim(s.substr(0, comma));
    if (token.empty()) throw InputError("empty entry in list \"" + std::string(s) + "\"");
    out.emplace_back(token);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<double> parse_axes(std::string_view spec) {
  std::vector<double> axes;
  if (!spec.empty() && spec.front() == '@') {
    const std::string path(spec.substr(1));
    std::ifstream in(path);
    if (!in) throw InputError("cannot open axes file " + path);
    std::string line;
    while (std::getline(in, line)) {
      const auto t = trim(line);
      if (t.empty() || t.front() == '#') continue;
      const std::size_t index = axes.size() + 1;
      axes.push_back(parse_number(t, "axis " + std::to_string(index)));
      check_axis(axes.back(), index);
    }
  } else {
    if (trim(spec).empty()) throw InputError("no axes given");
    for (const auto& token : split_list(spec)) {
      const std::size_t index = axes.size() + 1;
      axes.push_back(parse_number(token, "axis " + std::to_string(index)));
      check_axis(axes.back(), index);
    }
  }
  if (axes.empty()) throw InputError("no axes given");
  return axes;
}

std::string axes_sha256(std::span<const double> axes) {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("SHA-256 unavailable");
  }
  char buf[40];
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const int len = std::snprintf(buf, sizeof buf, i == 0 ? "%.17g" : ",%.17g", axes[i]);
    EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(len));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int digest_len = 0;
  EVP_DigestFinal_ex(ctx, digest, &digest_len);
  EVP_MD_CTX_free(ctx);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * digest_len);
  for (unsigned int i = 0; i < digest_len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

AxisLaw parse_axis_law(std::string_view s) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) {
    throw InputError("axis law \"" + std::string(s) + "\" must look like kind:params");
  }
  const auto kind = s.substr(0, colon);
  const auto params = split_list(s.substr(colon + 1));
  AxisLaw law;
  const auto want = [&](std::size_t count) {
    if (params.size() != count) {
      throw InputError("axis law \"" + std::string(s) + "\" takes " + std::to_string(count) +
                       " parameter(s)");
    }
  };
  if (kind == "uniform" || kind == "loguniform") {
    want(2);
    law.kind = kind == "uniform" ? AxisLaw::Kind::uniform : AxisLaw::Kind::loguniform;
    law.p1 = parse_number(params[0], "axis law lower bound");
    law.p2 = parse_number(params[1], "axis law upper bound");
    if (!(std::isfinite(law.p1) && std::isfinite(law.p2) && law.p1 > 0.0 && law.p1 <= law.p2)) {
      throw InputError("axis law \"" + std::string(s) + "\" needs 0 < lo <= hi");
    }
  } else if (kind == "equal") {
    want(1);
    law.kind = AxisLaw::Kind::equal;
    law.p1 = parse_number(params[0], "axis law value");
    if (!(std::isfinite(law.p1) && law.p1 > 0.0)) {
      throw InputError("axis law \"" + std::string(s) + "\" needs a positive value");
    }
  } else if (kind == "zipf-like") {
    want(1);
    law.kind = AxisLaw::Kind::zipf_like;
    law.p1 = parse_number(params[0], "axis law exponent");
    if (!std::isfinite(law.p1)) {
      throw InputError("axis law \"" + std::string(s) + "\" needs a finite exponent");
    }
  } else {
    throw InputError("unknown axis law \"" + std::string(kind) +
                     "\" (expected uniform, loguniform, equal or zipf-like)");
  }
  return law;
}

std::string to_string(const AxisLaw& law) {
  char buf[96];
  switch (law.kind) {
    case AxisLaw::Kind::uniform:
      std::snprintf(buf, sizeof buf, "uniform:%.17g,%.17g", law.p1, law.p2);
      break;
    case AxisLaw::Kind::loguniform:
      std::snprintf(buf, sizeof buf, "loguniform:%.17g,%.17g", law.p1, law.p2);
      break;
    case AxisLaw::Kind::equal:
      std::snprintf(buf, sizeof buf, "equal:%.17g", law.p1);
      break;
    case AxisLaw::Kind::zipf_like:
      std::snprintf(buf, sizeof buf, "zipf-like:%.17g", law.p1);
      break;
  }
  return buf;
}

std::vector<double> draw_axes(const AxisLaw& law, std::size_t n, std::uint64_t seed) {
  std::vector<double> axes(n);
  RngStream rng(seed, n);
  const double log_lo = std::log(law.p1);
  const double log_hi = std::log(law.p2);
  for (std::size_t i = 0; i < n; ++i) {
    switch (law.kind) {
      case AxisLaw::Kind::uniform:
        axes[i] = law.p1 + (law.p2 - law.p1) * rng.next_uniform();
        break;
      case AxisLaw::Kind::loguniform:
        axes[i] = std::exp(log_lo + (log_hi - log_lo) * rng.next_uniform());
        break;
      case AxisLaw::Kind::equal:
        axes[i] = law.p1;
        break;
      case AxisLaw::Kind::zipf_like:
        axes[i] = std::pow(static_cast<double>(i + 1), law.p1);
        break;
    }
  }
  return axes;
}

}  // namespace ellipsurf::cli
