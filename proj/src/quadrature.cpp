#include "ellipsurf/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "ellipsurf/detail/summation.hpp"
#include "ellipsurf/errors.hpp"

namespace ellipsurf {
namespace {

// QUADPACK qk21 abscissae (descending, last is the centre) and weights.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980222460, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
};
// 10-point Gauss weights for kXgk[1], kXgk[3], ..., kXgk[9].
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
};

struct Segment {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  std::size_t panel = 0;
  std::uint64_t id = 0;
};

Segment apply_rule(const std::function<double(double)>& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = kWgk[10] * fc;
  double gauss = 0.0;
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(centre - dx) + f(centre + dx);
    kronrod += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
  }
  Segment s;
  s.a = a;
  s.b = b;
  s.value = kronrod * half;
  s.error = std::fabs((kronrod - gauss) * half);
  return s;
}

// Max-heap on error; ties resolved by creation order so refinement is reproducible.
bool heap_less(const Segment& x, const Segment& y) {
  if (x.error != y.error) return x.error < y.error;
  return x.id > y.id;
}

}  // namespace

void QuadConfig::validate() const {
  if (!(rel_tol >= 1e-15)) {
    throw InputError("QuadConfig: rel_tol must be >= 1e-15, got " + std::to_string(rel_tol));
  }
  if (!(abs_tol >= 0.0)) throw InputError("QuadConfig: abs_tol must be >= 0");
  if (max_subdivisions < 10) {
    throw InputError("QuadConfig: max_subdivisions must be >= 10, got " +
                     std::to_string(max_subdivisions));
  }
  if (alpha && !(*alpha > 0.0 && std::isfinite(*alpha))) {
    throw InputError("QuadConfig: alpha must be positive and finite");
  }
}

QuadResult integrate(std::span<const QuadPanel> panels, const QuadConfig& cfg) {
  cfg.validate();
  std::vector<Segment> heap;
  heap.reserve(panels.size() + 2 * static_cast<std::size_t>(cfg.max_subdivisions));
  std::uint64_t next_id = 0;
  QuadResult out;
  for (std::size_t p = 0; p < panels.size(); ++p) {
    if (!(panels[p].b > panels[p].a)) continue;
    Segment s = apply_rule(panels[p].f, panels[p].a, panels[p].b);
    s.panel = p;
    s.id = next_id++;
    heap.push_back(s);
    out.evals += 21;
  }
  std::make_heap(heap.begin(), heap.end(), heap_less);

  auto totals = [&heap]() {
    // Sum in a fixed order independent of heap layout.
    std::vector<const Segment*> order;
    order.reserve(heap.size());
    for (const auto& s : heap) order.push_back(&s);
    std::sort(order.begin(), order.end(), [](const Segment* x, const Segment* y) {
      return x->panel != y->panel ? x->panel < y->panel : x->a < y->a;
    });
    detail::CompensatedSum value;
    detail::CompensatedSum error;
    for (const Segment* s : order) {
      value.add(s->value);
      error.add(s->error);
    }
    return std::pair{value.value(), error.value()};
  };

  if (heap.empty()) {
    out.converged = true;
    return out;
  }

  auto [value, error] = totals();
  int subdivisions = 0;
  while (!heap.empty()) {
    if (!std::isfinite(value) || !std::isfinite(error)) break;
    if (error <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(value))) {
      out.converged = true;
      break;
    }
    if (subdivisions >= cfg.max_subdivisions) break;

    std::pop_heap(heap.begin(), heap.end(), heap_less);
    const Segment worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Interval no longer splittable in double precision.
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), heap_less);
      break;
    }
    const auto& f = panels[worst.panel].f;
    for (auto [lo, hi] : {std::pair{worst.a, mid}, std::pair{mid, worst.b}}) {
      Segment s = apply_rule(f, lo, hi);
      s.panel = worst.panel;
      s.id = next_id++;
      heap.push_back(s);
      std::push_heap(heap.begin(), heap.end(), heap_less);
    }
    out.evals += 42;
    ++subdivisions;
    std::tie(value, error) = totals();
  }
  out.value = value;
  out.est_error = error;
  return out;
}

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadConfig& cfg) {
  const QuadPanel panel{f, a, b};
  return integrate(std::span<const QuadPanel>(&panel, 1), cfg);
}

}  // namespace ellipsurf
