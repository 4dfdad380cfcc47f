#include "cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "cli/discrepancy.hpp"
#include "ellipsurf/errors.hpp"
#include "ellipsurf/geometry.hpp"
#include "ellipsurf/laplace_quad.hpp"
#include "ellipsurf/lauricella.hpp"
#include "ellipsurf/sphere_mc.hpp"

namespace ellipsurf::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kAutoLaplaceMaxDim = 100'000;
constexpr double kContainmentSlack = 1e-12;
constexpr double kNearBoundary = 0.999;

Json number_or_null(std::optional<double> v) {
  if (v && std::isfinite(*v)) return *v;
  return nullptr;
}

std::optional<double> linear_volume(const Ellipsoid& e) {
  try {
    return ellipsoid_volume(e);
  } catch (const RangeError&) {
    return std::nullopt;
  }
}

std::string format_number(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  return v.dump();
}

std::string render_record(const Json& record, Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::json:
      os << record.dump(2) << '\n';
      break;
    case Format::csv: {
      bool first = true;
      for (const auto& item : record.items()) {
        os << (first ? "" : ",") << item.key();
        first = false;
      }
      os << '\n';
      first = true;
      for (const auto& item : record.items()) {
        os << (first ? "" : ",") << format_number(item.value());
        first = false;
      }
      os << '\n';
      break;
    }
    case Format::text:
      for (const auto& item : record.items()) {
        os << item.key() << ": "
           << (item.value().is_structured() ? item.value().dump() : format_number(item.value()))
           << '\n';
      }
      break;
  }
  return os.str();
}

Ellipsoid make_ellipsoid(const std::vector<double>& values, bool inverse) {
  return inverse ? Ellipsoid::from_inverse_axes(values) : Ellipsoid(values);
}

bool run_converged(const MethodRun& r) { return r.iso.converged && std::isfinite(r.iso.value); }

std::vector<std::size_t> parse_dims(std::string_view s) {
  std::vector<std::size_t> dims;
  for (const auto& token : split_list(s)) {
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::logic_error&) {
      throw InputError("dimension \"" + token + "\" is not a number");
    }
    if (!(v >= 1.0 && v <= 1e9 && v == std::floor(v))) {
      throw InputError("dimension \"" + token + "\" must be a positive integer");
    }
    dims.push_back(static_cast<std::size_t>(v));
  }
  return dims;
}

}  // namespace

Method auto_method(std::size_t n) noexcept {
  return n <= kAutoLaplaceMaxDim ? Method::laplace : Method::asymptotic;
}

MethodRun run_method(const Ellipsoid& e, Method m, const RunRequest& req) {
  MethodRun run;
  const auto start = std::chrono::steady_clock::now();
  switch (m) {
    case Method::laplace: {
      QuadConfig cfg;
      cfg.rel_tol = req.tol;
      run.iso = iso_ratio_quad(e, cfg);
      break;
    }
    case Method::lauricella: {
      LauricellaConfig cfg;
      cfg.quad.rel_tol = req.tol;
      const double alpha = req.alpha.value_or(default_alpha(e.inverse_axes()));
      run.alpha = alpha;
      run.iso = iso_ratio_lauricella(e, alpha, FdRoute::integral, cfg);
      break;
    }
    case Method::mc:
    case Method::gauss: {
      McConfig cfg;
      cfg.samples = req.samples;
      cfg.seed = req.seed;
      run.iso = iso_ratio_mc(e, cfg,
                             m == Method::mc ? McRoute::direct_sphere : McRoute::gaussian_transform);
      break;
    }
    case Method::asymptotic:
      run.iso = iso_ratio_asymptotic(e);
      break;
    case Method::closed_form:
      throw InputError("closed_form is not a selectable method");
  }
  run.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return run;
}

Json area_record(const Ellipsoid& e, const MethodRun& run) {
  const double log_v = log_ellipsoid_volume(e);
  const auto volume = linear_volume(e);
  const double log_s = std::log(run.iso.value) + log_v;
  std::optional<double> surface;
  std::optional<double> abs_error;
  if (volume) {
    surface = run.iso.value * *volume;
    abs_error = run.iso.abs_error * *volume;
    if (!(std::isfinite(*surface) && *surface > 0.0)) surface.reset();
  }
  Json j;
  j["dimension"] = e.dimension();
  j["axes_sha256"] = axes_sha256(e.axes());
  j["method"] = std::string(to_string(run.iso.method));
  j["volume"] = number_or_null(volume);
  j["iso_ratio"] = number_or_null(run.iso.value);
  j["surface_area"] = number_or_null(surface);
  j["abs_error"] = number_or_null(abs_error);
  j["evals"] = run.iso.evals;
  j["seed"] = run.iso.seed ? Json(*run.iso.seed) : Json(nullptr);
  j["alpha"] = number_or_null(run.alpha);
  j["converged"] = run.iso.converged;
  j["wall_time_ms"] = run.wall_ms;
  j["log_volume"] = number_or_null(log_v);
  j["log_surface_area"] = number_or_null(log_s);
  j["iso_ratio_abs_error"] = number_or_null(run.iso.abs_error);
  return j;
}

ComparisonReport compare_methods(const Ellipsoid& e, std::span<const Method> methods,
                                 const RunRequest& req) {
  if (methods.size() < 2) throw InputError("compare needs at least two methods");
  for (std::size_t i = 0; i < methods.size(); ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      if (methods[i] == methods[k]) {
        throw InputError("method " + std::string(to_string(methods[i])) + " listed twice");
      }
    }
  }
  ComparisonReport report;
  for (Method m : methods) report.runs.push_back(run_method(e, m, req));
  report.bounds = bounds_l2(e);
  report.lovar = lovar_diagnostic(e.inverse_axes());

  for (const auto& run : report.runs) {
    if (!run_converged(run)) {
      report.notes.push_back(std::string(to_string(run.iso.method)) + ": did not converge");
    }
    if (run.iso.method == Method::lauricella && run.alpha) {
      double max_abs_x = 0.0;
      for (double q : e.inverse_axes()) {
        max_abs_x = std::max(max_abs_x, std::abs(1.0 - *run.alpha * q * q));
      }
      if (max_abs_x > kNearBoundary) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "lauricella: max |1 - alpha q_j^2| = %.9g is near the boundary 1 (alpha = %.17g)",
                      max_abs_x, *run.alpha);
        report.notes.emplace_back(buf);
      }
    }
  }

  bool any_fail = false;
  for (std::size_t i = 0; i < report.runs.size(); ++i) {
    for (std::size_t k = i + 1; k < report.runs.size(); ++k) {
      const Estimate& a = report.runs[i].iso;
      const Estimate& b = report.runs[k].iso;
      PairDeviation d;
      d.a = a.method;
      d.b = b.method;
      d.abs_deviation = std::abs(a.value - b.value);
      d.rel_deviation = d.abs_deviation / std::abs(b.value);
      bool pass = false;
      if (a.method == Method::asymptotic || b.method == Method::asymptotic) {
        d.tolerance_kind = "none";
        d.verdict = "INFO";
        pass = true;
      } else if (is_stochastic(a.method) || is_stochastic(b.method)) {
        d.tolerance = kStochasticPairSigmas * std::hypot(a.abs_error, b.abs_error);
        d.tolerance_kind = "abs_4sigma";
        pass = d.abs_deviation <= d.tolerance;
        d.verdict = pass ? "PASS" : "FAIL";
      } else {
        d.tolerance = kDeterministicPairTolerance;
        d.tolerance_kind = "rel";
        pass = d.rel_deviation <= d.tolerance;
        d.verdict = pass ? "PASS" : "FAIL";
      }
      any_fail = any_fail || !pass;
      report.deviations.push_back(d);
    }
  }
  report.verdict = any_fail ? "FAIL" : "PASS";
  return report;
}

Json to_json(const Ellipsoid& e, const ComparisonReport& report) {
  Json j;
  j["dimension"] = e.dimension();
  j["axes_sha256"] = axes_sha256(e.axes());
  Json estimates = Json::array();
  Json timing = Json::object();
  for (const auto& run : report.runs) {
    Json rec = area_record(e, run);
    rec.erase("wall_time_ms");
    estimates.push_back(std::move(rec));
    timing[std::string(to_string(run.iso.method))] = run.wall_ms;
  }
  j["estimates"] = std::move(estimates);
  Json deviations = Json::array();
  for (const auto& d : report.deviations) {
    Json entry;
    entry["a"] = std::string(to_string(d.a));
    entry["b"] = std::string(to_string(d.b));
    entry["abs_deviation"] = d.abs_deviation;
    entry["rel_deviation"] = number_or_null(d.rel_deviation);
    entry["tolerance"] = d.tolerance;
    entry["tolerance_kind"] = d.tolerance_kind;
    entry["verdict"] = d.verdict;
    deviations.push_back(std::move(entry));
  }
  j["deviations"] = std::move(deviations);
  j["bounds"] = {{"iso_ratio_lower", report.bounds.ratio_lower * static_cast<double>(report.bounds.n)},
                 {"iso_ratio_upper", report.bounds.ratio_upper * static_cast<double>(report.bounds.n)},
                 {"lower_const", report.bounds.lower_const},
                 {"upper_const", report.bounds.upper_const}};
  j["lovar"] = {{"sum_q2", report.lovar.sum_q2},
                {"sum_q4", report.lovar.sum_q4},
                {"ratio", report.lovar.ratio}};
  j["notes"] = report.notes;
  j["verdict"] = report.verdict;
  j["wall_time_ms"] = std::move(timing);
  return j;
}

std::vector<ConvergeRow> converge_study(std::span<const std::size_t> dims, const AxisLaw& law,
                                        std::uint64_t seed, double tol) {
  if (dims.empty()) throw InputError("no dimensions given");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] == 0) throw InputError("dimensions must be positive");
    if (i > 0 && dims[i] <= dims[i - 1]) {
      throw InputError("dimensions must be strictly ascending (" + std::to_string(dims[i - 1]) +
                       " then " + std::to_string(dims[i]) + ")");
    }
  }
  QuadConfig cfg;
  cfg.rel_tol = tol;
  std::vector<ConvergeRow> rows;
  for (std::size_t n : dims) {
    const Ellipsoid e(draw_axes(law, n, seed));
    const Estimate quad = iso_ratio_quad(e, cfg);
    const Estimate asym = iso_ratio_asymptotic(e);
    ConvergeRow row;
    row.n = n;
    row.lovar_ratio = lovar_diagnostic(e.inverse_axes()).ratio;
    row.laplace = quad.value;
    row.asymptotic = asym.value;
    row.deviation = std::abs(quad.value / asym.value - 1.0);
    row.converged = quad.converged;
    rows.push_back(row);
  }
  return rows;
}

std::string converge_csv(std::span<const ConvergeRow> rows) {
  std::ostringstream os;
  os << "n,lovar_ratio,laplace,asymptotic,deviation,converged\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%s\n", r.n, r.lovar_ratio,
                  r.laplace, r.asymptotic, r.deviation, r.converged ? "true" : "false");
    os << buf;
  }
  return os.str();
}

BoundsCheck bounds_check(const Ellipsoid& e, bool check, const RunRequest& req) {
  BoundsCheck out;
  out.report = bounds_l2(e);
  if (check) {
    out.laplace = run_method(e, Method::laplace, req);
    const double norm_r = out.laplace->iso.value / static_cast<double>(e.dimension());
    out.contained = norm_r >= out.report.ratio_lower * (1.0 - kContainmentSlack) &&
                    norm_r <= out.report.ratio_upper * (1.0 + kContainmentSlack);
  }
  return out;
}

Json to_json(const Ellipsoid& e, const BoundsCheck& b) {
  const BoundsReport& r = b.report;
  Json j;
  j["dimension"] = e.dimension();
  j["axes_sha256"] = axes_sha256(e.axes());
  j["lower_const"] = r.lower_const;
  j["upper_const"] = r.upper_const;
  j["constant_ratio"] = r.upper_const / r.lower_const;
  j["l2_norm"] = r.l2_norm;
  j["ratio_lower"] = r.ratio_lower;
  j["ratio_upper"] = r.ratio_upper;
  j["area_lower"] = r.area_lower;
  j["area_upper"] = r.area_upper;
  j["log_area_lower"] = r.log_area_lower;
  j["log_area_upper"] = r.log_area_upper;
  if (b.laplace) {
    j["iso_ratio"] = b.laplace->iso.value;
    j["norm_r"] = b.laplace->iso.value / static_cast<double>(e.dimension());
    j["converged"] = b.laplace->iso.converged;
    j["contained"] = *b.contained;
    j["wall_time_ms"] = b.laplace->wall_ms;
  }
  return j;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const SelftestHooks& hooks) {
  CLI::App app{"Surface area and isoperimetric ratio of n-dimensional ellipsoids", "ellipsurf"};
  app.require_subcommand(1);

  std::string axes_spec;
  std::string method_name = "auto";
  std::string methods_list;
  std::string format_name;
  std::string dims_spec;
  std::string law_spec;
  std::string out_path;
  double tol = 1e-12;
  double alpha = 0.0;
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 0x5EEDull;
  bool inverse = false;
  bool check = false;

  const auto add_axes = [&](CLI::App* s) {
    return s->add_option("--axes", axes_spec, "Semi-axes a_1,...,a_n or @file (one per line)");
  };
  const auto add_numeric = [&](CLI::App* s) {
    s->add_flag("--inverse", inverse, "Values given to --axes are inverse semi-axes q_i = 1/a_i");
    s->add_option("--tol", tol, "Relative tolerance of the deterministic methods");
    s->add_option("--samples", samples, "Monte Carlo sample count");
    s->add_option("--seed", seed, "Monte Carlo seed");
    s->add_option("--alpha", alpha, "Free parameter of the lauricella representation");
  };
  const auto add_output = [&](CLI::App* s, const char* formats) {
    s->add_option("--format", format_name, std::string("Output format: ") + formats);
    s->add_option("--out", out_path, "Write the report to FILE instead of stdout");
  };

  auto* area = app.add_subcommand("area", "Surface area, volume and isoperimetric ratio");
  add_axes(area)->required();
  area->add_option("--method", method_name,
                   "auto, mc, gauss, laplace, lauricella, asymptotic or bounds");
  add_numeric(area);
  add_output(area, "json, csv or text");

  auto* compare = app.add_subcommand("compare", "Run several methods and compare them");
  add_axes(compare)->required();
  compare->add_option("--methods", methods_list, "Comma-separated methods (at least two)")
      ->required();
  add_numeric(compare);
  add_output(compare, "json or text");

  auto* converge = app.add_subcommand("converge", "Large-n convergence table (CSV)");
  converge->add_option("--dims", dims_spec, "Strictly ascending dimensions")->required();
  converge->add_option("--axis-law", law_spec,
                       "uniform:lo,hi | loguniform:lo,hi | equal:v | zipf-like:s")
      ->required();
  converge->add_option("--seed", seed, "Seed of the random axis laws");
  converge->add_option("--tol", tol, "Relative tolerance of the laplace route");
  add_output(converge, "csv or json");

  auto* bounds = app.add_subcommand("bounds", "Two-sided L2 bounds on the isoperimetric ratio");
  add_axes(bounds);
  bounds->add_flag("--inverse", inverse, "Values given to --axes are inverse semi-axes");
  bounds->add_flag("--check", check, "Also compute the laplace ratio and report containment");
  bounds->add_option("--dims", dims_spec, "Dimension of a random ellipsoid (instead of --axes)");
  bounds->add_option("--axis-law", law_spec, "Law of the random axes (default loguniform:0.1,10)");
  bounds->add_option("--seed", seed, "Seed of the random axes");
  bounds->add_option("--tol", tol, "Relative tolerance of the laplace route");
  add_output(bounds, "json, csv or text");

  auto* selftest = app.add_subcommand("selftest", "Run the embedded invariant suite");

  auto* discrepancy =
      app.add_subcommand("discrepancy", "Markdown report on the alpha representations");
  discrepancy->add_option("--out", out_path, "Write the report to FILE instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  const auto emit = [&](const std::string& text) {
    if (out_path.empty()) {
      out << text;
      return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw InputError("cannot write " + out_path);
    f << text;
  };
  const auto pick_format = [&](Format fallback, std::initializer_list<Format> allowed) {
    if (format_name.empty()) return fallback;
    const auto f = format_from_string(format_name);
    if (!f || std::find(allowed.begin(), allowed.end(), *f) == allowed.end()) {
      throw InputError("format \"" + format_name + "\" is not supported here");
    }
    return *f;
  };
  const auto make_request = [&](CLI::App* s) {
    RunRequest req;
    req.axes = parse_axes(axes_spec);
    req.inverse = inverse;
    req.tol = tol;
    req.samples = samples;
    req.seed = seed;
    if (s->count("--alpha") > 0) req.alpha = alpha;
    return req;
  };

  try {
    if (*area) {
      RunRequest req = make_request(area);
      req.format = pick_format(Format::json, {Format::json, Format::csv, Format::text});
      const auto m = request_method_from_string(method_name);
      if (!m) throw InputError("unknown method \"" + method_name + "\"");
      req.method = *m;
      const Ellipsoid e = make_ellipsoid(req.axes, req.inverse);
      if (req.method == RequestMethod::bounds) {
        emit(render_record(to_json(e, bounds_check(e, false, req)), req.format));
        return kExitOk;
      }
      const Method chosen = req.method == RequestMethod::auto_select
                                ? auto_method(e.dimension())
                                : *method_from_string(to_string(req.method));
      const MethodRun result = run_method(e, chosen, req);
      emit(render_record(area_record(e, result), req.format));
      if (!run_converged(result)) {
        err << "ellipsurf: " << to_string(chosen) << " did not converge\n";
        return kExitNonConvergence;
      }
      return kExitOk;
    }

    if (*compare) {
      RunRequest req = make_request(compare);
      req.format = pick_format(Format::json, {Format::json, Format::text});
      std::vector<Method> methods;
      for (const auto& name : split_list(methods_list)) {
        const auto m = method_from_string(name);
        if (!m || *m == Method::closed_form) throw InputError("unknown method \"" + name + "\"");
        methods.push_back(*m);
      }
      const Ellipsoid e = make_ellipsoid(req.axes, req.inverse);
      const ComparisonReport report = compare_methods(e, methods, req);
      if (req.format == Format::json) {
        emit(to_json(e, report).dump(2) + "\n");
      } else {
        std::ostringstream os;
        char buf[200];
        for (const auto& run : report.runs) {
          std::snprintf(buf, sizeof buf, "%-11s R = %.15g +- %.3g%s\n",
                        std::string(to_string(run.iso.method)).c_str(), run.iso.value,
                        run.iso.abs_error, run.iso.converged ? "" : " (not converged)");
          os << buf;
        }
        for (const auto& d : report.deviations) {
          std::snprintf(buf, sizeof buf, "%s vs %s: rel %.3g, %s\n",
                        std::string(to_string(d.a)).c_str(), std::string(to_string(d.b)).c_str(),
                        d.rel_deviation, d.verdict.c_str());
          os << buf;
        }
        for (const auto& note : report.notes) os << "note: " << note << '\n';
        os << "verdict: " << report.verdict << '\n';
        emit(os.str());
      }
      const bool all_converged = std::all_of(report.runs.begin(), report.runs.end(), run_converged);
      return all_converged ? kExitOk : kExitNonConvergence;
    }

    if (*converge) {
      const Format format = pick_format(Format::csv, {Format::csv, Format::json});
      const auto dims = parse_dims(dims_spec);
      const AxisLaw law = parse_axis_law(law_spec);
      const auto rows = converge_study(dims, law, seed, tol);
      if (format == Format::csv) {
        emit(converge_csv(rows));
      } else {
        Json j = Json::array();
        for (const auto& r : rows) {
          j.push_back({{"n", r.n},
                       {"lovar_ratio", r.lovar_ratio},
                       {"laplace", r.laplace},
                       {"asymptotic", r.asymptotic},
                       {"deviation", r.deviation},
                       {"converged", r.converged}});
        }
        emit(j.dump(2) + "\n");
      }
      const bool ok = std::all_of(rows.begin(), rows.end(),
                                  [](const ConvergeRow& r) { return r.converged; });
      return ok ? kExitOk : kExitNonConvergence;
    }

    if (*bounds) {
      const Format format = pick_format(Format::json, {Format::json, Format::csv, Format::text});
      RunRequest req;
      req.tol = tol;
      std::vector<double> values;
      if (!axes_spec.empty()) {
        if (!dims_spec.empty()) throw InputError("give either --axes or --dims, not both");
        values = parse_axes(axes_spec);
      } else {
        if (dims_spec.empty()) throw InputError("bounds needs --axes or --dims");
        const auto dims = parse_dims(dims_spec);
        if (dims.size() != 1) throw InputError("bounds takes a single dimension");
        const AxisLaw law = parse_axis_law(law_spec.empty() ? "loguniform:0.1,10" : law_spec);
        values = draw_axes(law, dims.front(), seed);
      }
      const Ellipsoid e = make_ellipsoid(values, inverse);
      const BoundsCheck b = bounds_check(e, check, req);
      emit(render_record(to_json(e, b), format));
      if (b.laplace && !run_converged(*b.laplace)) return kExitNonConvergence;
      return kExitOk;
    }

    if (*selftest) {
      const SelftestResult result = run_selftest(hooks);
      std::ostringstream os;
      for (const auto& line : result.lines) os << line << '\n';
      os << "selftest: " << (result.passed ? "PASS" : "FAIL") << '\n';
      out << os.str();
      if (!result.passed) {
        err << "ellipsurf: selftest failed: " << result.first_failure << '\n';
        return kExitSelftestFailure;
      }
      return kExitOk;
    }

    if (*discrepancy) {
      emit(discrepancy_report());
      return kExitOk;
    }
  } catch (const InputError& e) {
    err << "ellipsurf: " << e.what() << '\n';
    return kExitInputError;
  } catch (const DomainError& e) {
    err << "ellipsurf: " << e.what() << '\n';
    return kExitInputError;
  } catch (const RangeError& e) {
    err << "ellipsurf: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "ellipsurf: " << e.what() << '\n';
    return kExitNonConvergence;
  }
  return kExitInputError;
}

}  // namespace ellipsurf::cli
