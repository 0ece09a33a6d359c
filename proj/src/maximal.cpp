#include "cpl/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>

#include "cpl/errors.hpp"
#include "cpl/parallel.hpp"

namespace cpl {

void GridSpec::validate() const {
  if (!(t_hi > t_lo) || !std::isfinite(t_lo) || !std::isfinite(t_hi)) {
    throw DomainError("t-window must satisfy t_lo < t_hi");
  }
  if (t_samples != 0 && t_samples < 2) throw DomainError("t_samples must be 0 (auto) or >= 2");
  if (theta_samples < 0) throw DomainError("theta_samples must be >= 0");
  if (refine_depth < 2) throw DomainError("refinement depth must be >= 2");
  quad.validate();
}

namespace {

constexpr int kStencilHalf = 8;
constexpr double kRefineFactor = 8.0;
constexpr int kRefineTop = 3;
constexpr double kMaxSkippedFraction = 0.01;
constexpr double kMaxAutoSamples = 5e6;

double support_diameter(const FourierDatum& datum) { return datum.support().length(); }

double fractional_diameter(const FourierDatum& datum, double m) {
  const Interval s = datum.support();
  return std::abs(std::pow(std::abs(s.hi), m) - std::pow(std::abs(s.lo), m));
}

double samples_for(double bandwidth, double length) {
  return std::ceil(4.0 * bandwidth * length / std::numbers::pi) + 1.0;
}

int to_count(double n, const char* what) {
  if (n > kMaxAutoSamples) {
    throw SamplingError(std::string("sampling invariant needs more ") + what +
                        " samples than the supported maximum");
  }
  return std::max(2, static_cast<int>(n));
}

struct Point {
  double t = 0.0;
  double theta = 0.0;
  double value = 0.0;
};

// Evaluates candidate (t, theta) points in order of decreasing modulus bound,
// skipping those whose bound cannot beat the running maximum.
class Search {
 public:
  using Gamma = std::function<double(double, double)>;

  Search(const FourierDatum& datum, double m, Gamma gamma, const QuadratureSpec& quad)
      : datum_(datum), m_(m), gamma_(std::move(gamma)), quad_(quad) {}

  void run(const std::vector<std::pair<double, double>>& candidates) {
    struct Ranked {
      double t, theta, bound;
      std::size_t order;
    };
    std::vector<Ranked> ranked;
    ranked.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const auto& c = candidates[i];
      if (!seen_.insert(c).second) continue;
      const double y = gamma_(c.first, c.second);
      ranked.push_back({c.first, c.second, propagate_modulus_bound(datum_, m_, y, c.first), i});
    }
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
      if (a.bound != b.bound) return a.bound > b.bound;
      return a.order < b.order;
    });
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      if (ranked[i].bound <= result.value && result.evaluated + result.skipped > 0) {
        result.pruned += static_cast<int>(ranked.size() - i);
        return;
      }
      const double y = gamma_(ranked[i].t, ranked[i].theta);
      try {
        const double v = std::abs(propagate(datum_, m_, y, ranked[i].t, quad_));
        ++result.evaluated;
        points_.push_back({ranked[i].t, ranked[i].theta, v});
        if (v > result.value) {
          result.value = v;
          result.arg_t = ranked[i].t;
          result.arg_theta = ranked[i].theta;
        }
      } catch (const ToleranceNotMet&) {
        ++result.skipped;
      }
    }
  }

  // The kRefineTop largest evaluated points (ties broken by evaluation order).
  [[nodiscard]] std::vector<Point> top() const {
    std::vector<Point> sorted = points_;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Point& a, const Point& b) { return a.value > b.value; });
    if (sorted.size() > kRefineTop) sorted.resize(kRefineTop);
    return sorted;
  }

  void check_failures() const {
    const int attempts = result.evaluated + result.skipped;
    if (attempts > 0 && result.skipped > kMaxSkippedFraction * attempts) {
      throw SamplingError("more than 1% of quadratures failed (" + std::to_string(result.skipped) +
                          " of " + std::to_string(attempts) + ")");
    }
  }

  MaximalResult result;

 private:
  const FourierDatum& datum_;
  double m_;
  Gamma gamma_;
  const QuadratureSpec& quad_;
  std::set<std::pair<double, double>> seen_;
  std::vector<Point> points_;
};

std::vector<double> uniform_nodes(double lo, double hi, int n) {
  std::vector<double> nodes;
  if (n <= 1 || hi == lo) {
    nodes.push_back(lo);
    return nodes;
  }
  nodes.reserve(n);
  for (int i = 0; i < n; ++i) nodes.push_back(i + 1 == n ? hi : lo + (hi - lo) * i / (n - 1));
  return nodes;
}

// Local refinement around the running top points; theta_lo == theta_hi
// collapses the stencil to one dimension.
void refine(Search& search, const GridSpec& grid, double ht, double theta_lo, double theta_hi,
            double htheta) {
  for (int level = 1; level <= grid.refine_depth; ++level) {
    const double dt = ht / std::pow(kRefineFactor, level);
    const double dth = htheta / std::pow(kRefineFactor, level);
    std::vector<std::pair<double, double>> cands;
    for (const Point& p : search.top()) {
      for (int i = -kStencilHalf; i <= kStencilHalf; ++i) {
        const double t = std::clamp(p.t + i * dt, grid.t_lo, grid.t_hi);
        if (theta_hi > theta_lo) {
          for (int j = -kStencilHalf; j <= kStencilHalf; ++j) {
            cands.emplace_back(t, std::clamp(p.theta + j * dth, theta_lo, theta_hi));
          }
        } else {
          cands.emplace_back(t, theta_lo);
        }
      }
    }
    search.run(cands);
  }
}

}  // namespace

int required_t_samples(const FourierDatum& datum, double m, const Curve& curve,
                       const GridSpec& grid) {
  grid.validate();
  const double speed = curve.time_speed_bound(grid.t_lo, grid.t_hi);
  const double bandwidth = speed * support_diameter(datum) + fractional_diameter(datum, m);
  return to_count(samples_for(bandwidth, grid.t_hi - grid.t_lo), "t");
}

int required_theta_samples(const FourierDatum& datum, const GridSpec& grid, double length) {
  const double tmax = std::max(std::abs(grid.t_lo), std::abs(grid.t_hi));
  return to_count(samples_for(tmax * support_diameter(datum), length), "theta");
}

MaximalResult maximal_in_time(const FourierDatum& datum, double m, const Curve& curve, double x,
                              const GridSpec& grid, const std::vector<double>& injected_t) {
  grid.validate();
  const double L = grid.t_hi - grid.t_lo;
  const double speed = curve.time_speed_bound(grid.t_lo, grid.t_hi);
  const double bandwidth = speed * support_diameter(datum) + fractional_diameter(datum, m);
  const double needed = samples_for(bandwidth, L);
  const bool full = grid.mode == MaximalMode::Full;
  int n = 0;
  if (full) {
    if (grid.t_samples == 0) {
      n = to_count(needed, "t");
    } else {
      if (grid.t_samples < needed) {
        throw SamplingError("t-grid violates the sampling invariant: " +
                            std::to_string(grid.t_samples) + " < " +
                            std::to_string(static_cast<long long>(needed)));
      }
      n = grid.t_samples;
    }
  } else if (injected_t.empty()) {
    throw DomainError("injected-only mode needs injected points");
  }
  const double ht = full ? L / (n - 1) : L / std::max(1.0, needed - 1.0);

  Search search(datum, m, [&curve, x](double t, double) { return curve(x, t); }, grid.quad);
  std::vector<std::pair<double, double>> inj;
  for (double t : injected_t) {
    if (t < grid.t_lo || t > grid.t_hi) throw DomainError("injected time outside the t-window");
    inj.emplace_back(t, 0.0);
  }
  search.run(inj);
  if (full) {
    std::vector<std::pair<double, double>> cands;
    for (double t : uniform_nodes(grid.t_lo, grid.t_hi, n)) cands.emplace_back(t, 0.0);
    search.run(cands);
  }
  refine(search, grid, ht, 0.0, 0.0, 0.0);
  search.check_failures();
  search.result.lower_bound = !full;
  return search.result;
}

MaximalResult maximal_over_lines(const FourierDatum& datum, double m,
                                 const std::vector<Interval>& theta_set, double x,
                                 const GridSpec& grid,
                                 const std::vector<std::pair<double, double>>& injected) {
  grid.validate();
  if (theta_set.empty()) throw DomainError("Theta must contain at least one interval");
  double theta_max = 0.0;
  for (const Interval& c : theta_set) {
    if (!(c.hi >= c.lo)) throw DomainError("Theta component with hi < lo");
    theta_max = std::max({theta_max, std::abs(c.lo), std::abs(c.hi)});
  }
  for (const auto& p : injected) {
    const bool inside = std::any_of(theta_set.begin(), theta_set.end(),
                                    [&](const Interval& c) { return c.contains(p.second); });
    if (!inside) throw DomainError("injected theta outside Theta");
    if (p.first < grid.t_lo || p.first > grid.t_hi) throw DomainError("injected time outside the t-window");
  }
  const bool full = grid.mode == MaximalMode::Full;
  if (!full && injected.empty()) throw DomainError("injected-only mode needs injected points");

  const double L = grid.t_hi - grid.t_lo;
  const double bandwidth = theta_max * support_diameter(datum) + fractional_diameter(datum, m);
  const double needed = samples_for(bandwidth, L);
  int n = 0;
  if (full) {
    if (grid.t_samples == 0) {
      n = to_count(needed, "t");
    } else {
      if (grid.t_samples < needed) throw SamplingError("t-grid violates the sampling invariant");
      n = grid.t_samples;
    }
  }
  const double ht = full ? L / (n - 1) : L / std::max(1.0, needed - 1.0);
  const std::vector<double> tnodes = full ? uniform_nodes(grid.t_lo, grid.t_hi, n) : std::vector<double>{};

  MaximalResult total;
  total.lower_bound = !full;
  bool first = true;
  for (const Interval& comp : theta_set) {
    std::vector<std::pair<double, double>> inj;
    for (const auto& p : injected) {
      if (comp.contains(p.second)) inj.push_back(p);
    }
    if (!full && inj.empty()) continue;
    const double len = comp.length();
    const double tmax = std::max(std::abs(grid.t_lo), std::abs(grid.t_hi));
    const double theta_needed = samples_for(tmax * support_diameter(datum), len);
    int ntheta = 1;
    if (len > 0.0) {
      if (full) {
        if (grid.theta_samples == 0) {
          ntheta = to_count(theta_needed, "theta");
        } else {
          if (grid.theta_samples < theta_needed) {
            throw SamplingError("theta-grid violates the sampling invariant");
          }
          ntheta = grid.theta_samples;
        }
      }
    }
    const double htheta =
        len > 0.0 ? (full ? len / (ntheta - 1) : len / std::max(1.0, theta_needed - 1.0)) : 0.0;

    Search search(datum, m, [x](double t, double theta) { return x - theta * t; }, grid.quad);
    search.run(inj);
    if (full) {
      std::vector<std::pair<double, double>> cands;
      cands.reserve(tnodes.size() * static_cast<std::size_t>(ntheta));
      const std::vector<double> thetas = uniform_nodes(comp.lo, comp.hi, ntheta);
      for (double t : tnodes) {
        for (double th : thetas) cands.emplace_back(t, th);
      }
      search.run(cands);
    }
    refine(search, grid, ht, comp.lo, comp.hi, htheta);
    search.check_failures();
    const MaximalResult& r = search.result;
    total.evaluated += r.evaluated;
    total.pruned += r.pruned;
    total.skipped += r.skipped;
    if (first || r.value > total.value) {
      total.value = r.value;
      total.arg_t = r.arg_t;
      total.arg_theta = r.arg_theta;
      first = false;
    }
  }
  return total;
}

double mixed_norm(const std::vector<double>& values, const std::vector<XCell>& cells, double q) {
  if (!(q >= 2.0 && q <= 64.0)) throw DomainError("mixed norm supports q in [2, 64]");
  return lq_mu_norm(values, cells, q);
}

double ratio_quotient(double mixed, const FourierDatum& datum, double s, const QuadratureSpec& spec) {
  const double hs = sobolev_norm(datum, s, spec);
  if (!(hs > 0.0)) throw DomainError("datum has zero Sobolev norm");
  return mixed / hs;
}

double ratio_quotient(const FourierDatum& datum, double s, double m, const Curve& curve,
                      const std::vector<XCell>& cells, double q, const GridSpec& grid) {
  std::vector<double> values(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    values[i] = maximal_in_time(datum, m, curve, cells[i].point, grid).value;
  });
  return ratio_quotient(mixed_norm(values, cells, q), datum, s, grid.quad);
}

}  // namespace cpl
