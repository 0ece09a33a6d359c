#include "cpl/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>
#include <utility>
#include <vector>

#include "cpl/errors.hpp"

namespace cpl {
namespace {

// Kronrod 15-point abscissae on [-1, 1]; odd indices are the Gauss 7 nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kCoarsePhaseSamples = 64;

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kRoundoffFactor = 50.0;

struct Cell {
  double a = 0.0;
  double b = 0.0;
  Complex value;
  double error = 0.0;
  double magnitude = 0.0;  // Kronrod estimate of int |f| over the cell
  double phase_span = 0.0;

  [[nodiscard]] bool over_wound() const { return phase_span > kTwoPi; }
};

// Larger priority is split first: over-wound cells, then largest error.
struct CellOrder {
  const std::vector<Cell>* cells;
  bool operator()(int lhs, int rhs) const {
    const Cell& l = (*cells)[lhs];
    const Cell& r = (*cells)[rhs];
    if (l.over_wound() != r.over_wound()) return r.over_wound();
    if (l.error != r.error) return l.error < r.error;
    return lhs > rhs;
  }
};

class Integrand {
 public:
  Integrand(const SmoothFunction1D& amplitude, const RealFn& phase)
      : amplitude_(amplitude), phase_(phase) {}

  // Returns the integrand value and writes the phase sample.
  Complex operator()(double x, double& phase_out) {
    ++evaluations;
    const Complex amp = amplitude_(x);
    const double ph = phase_(x);
    if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag()) || !std::isfinite(ph)) {
      throw InvalidIntegrand("non-finite integrand sample at x = " + std::to_string(x));
    }
    phase_out = ph;
    return amp * Complex(std::cos(ph), std::sin(ph));
  }

  double phase(double x) {
    const double ph = phase_(x);
    if (!std::isfinite(ph)) {
      throw InvalidIntegrand("non-finite phase sample at x = " + std::to_string(x));
    }
    return ph;
  }

  std::int64_t evaluations = 0;

 private:
  const SmoothFunction1D& amplitude_;
  const RealFn& phase_;
};

Cell kronrod15(Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::abs(half);

  double phase_min = 0.0;
  double phase_max = 0.0;
  double ph = 0.0;
  const Complex fc = f(center, ph);
  phase_min = phase_max = ph;

  std::array<Complex, 7> f1{};
  std::array<Complex, 7> f2{};
  Complex resg = fc * kWg[3];
  Complex resk = fc * kWgk[7];
  double resabs = std::abs(fc) * kWgk[7];

  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    double p1 = 0.0;
    double p2 = 0.0;
    f1[j] = f(center - dx, p1);
    f2[j] = f(center + dx, p2);
    phase_min = std::min({phase_min, p1, p2});
    phase_max = std::max({phase_max, p1, p2});
    const Complex sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }

  const Complex reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));
  }

  Cell cell;
  cell.a = a;
  cell.b = b;
  cell.value = resk * half;
  resabs *= abs_half;
  resasc *= abs_half;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > std::numeric_limits<double>::min() / (kRoundoffFactor * kEps)) {
    err = std::max(kRoundoffFactor * kEps * resabs, err);
  }
  cell.error = err;
  cell.magnitude = resabs;
  cell.phase_span = phase_max - phase_min;
  return cell;
}

// Cut [lo, hi] so that each piece carries at most pi of (monotone-sampled)
// phase variation. Returns an empty vector when more than `budget` pieces
// would be needed.
std::vector<double> phase_partition(Integrand& f, double lo, double hi, int budget,
                                    std::int64_t& pieces_needed) {
  std::array<double, kCoarsePhaseSamples + 1> samples{};
  std::array<std::int64_t, kCoarsePhaseSamples> pieces{};
  const double h = (hi - lo) / kCoarsePhaseSamples;
  for (int i = 0; i <= kCoarsePhaseSamples; ++i) {
    const double x = (i == kCoarsePhaseSamples) ? hi : lo + i * h;
    samples[i] = f.phase(x);
  }
  pieces_needed = 0;
  for (int i = 0; i < kCoarsePhaseSamples; ++i) {
    const double variation = std::abs(samples[i + 1] - samples[i]);
    pieces[i] = static_cast<std::int64_t>(std::max(1.0, std::ceil(variation / std::numbers::pi)));
    pieces_needed += pieces[i];
  }
  std::vector<double> edges;
  if (pieces_needed > budget) return edges;
  edges.reserve(static_cast<std::size_t>(pieces_needed) + 1);
  edges.push_back(lo);
  for (int i = 0; i < kCoarsePhaseSamples; ++i) {
    const double a = lo + i * h;
    const double b = (i + 1 == kCoarsePhaseSamples) ? hi : lo + (i + 1) * h;
    for (std::int64_t p = 1; p < pieces[i]; ++p) {
      edges.push_back(a + (b - a) * static_cast<double>(p) / static_cast<double>(pieces[i]));
    }
    edges.push_back(b);
  }
  return edges;
}

Complex ordered_sum(std::vector<Cell>& cells) {
  std::sort(cells.begin(), cells.end(), [](const Cell& l, const Cell& r) { return l.a < r.a; });
  Complex total{0.0, 0.0};
  for (const Cell& c : cells) total += c.value;
  return total;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw DomainError("quadrature tolerances must be strictly positive");
  }
  if (max_subdivisions < 1) throw DomainError("max_subdivisions must be >= 1");
  if (oracle_nodes < 100'000) throw DomainError("oracle node count must be >= 1e5");
}

SmoothFunction1D::SmoothFunction1D(ComplexFn rule, Interval support)
    : rule_(std::move(rule)), support_(support) {
  if (!(support.lo <= support.hi) || !std::isfinite(support.lo) || !std::isfinite(support.hi)) {
    throw DomainError("support must be a closed bounded interval");
  }
}

QuadratureResult integrate_detailed(const SmoothFunction1D& amplitude, const RealFn& phase,
                                    Interval interval, const QuadratureSpec& spec) {
  spec.validate();
  if (!std::isfinite(interval.lo) || !std::isfinite(interval.hi)) {
    throw DomainError("integration interval must be bounded");
  }
  QuadratureResult result;
  if (interval.lo == interval.hi) return result;
  double sign = 1.0;
  if (interval.lo > interval.hi) {
    std::swap(interval.lo, interval.hi);
    sign = -1.0;
  }

  Integrand f(amplitude, phase);
  std::int64_t pieces_needed = 0;
  const std::vector<double> edges =
      phase_partition(f, interval.lo, interval.hi, spec.max_subdivisions, pieces_needed);

  std::vector<Cell> cells;
  if (edges.empty()) {
    // Cannot resolve the phase; report a uniform best effort.
    const int n = spec.max_subdivisions;
    const double h = interval.length() / n;
    Complex value{0.0, 0.0};
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      const Cell c = kronrod15(f, interval.lo + i * h, interval.lo + (i + 1) * h);
      value += c.value;
      err += c.error;
    }
    throw ToleranceNotMet("tolerance not met: phase variation needs " +
                              std::to_string(pieces_needed) + " cells, budget is " +
                              std::to_string(spec.max_subdivisions),
                          sign * value.real(), sign * value.imag(), err);
  }
  const int initial_cells = static_cast<int>(edges.size()) - 1;

  cells.reserve(static_cast<std::size_t>(initial_cells) * 2);
  Complex total{0.0, 0.0};
  double total_error = 0.0;
  double total_magnitude = 0.0;
  for (int i = 0; i < initial_cells; ++i) {
    cells.push_back(kronrod15(f, edges[i], edges[i + 1]));
    total += cells.back().value;
    total_error += cells.back().error;
    total_magnitude += cells.back().magnitude;
  }

  std::priority_queue<int, std::vector<int>, CellOrder> heap(CellOrder{&cells});
  int over_wound = 0;
  for (int i = 0; i < initial_cells; ++i) {
    heap.push(i);
    if (cells[i].over_wound()) ++over_wound;
  }

  int subdivisions = initial_cells;
  // Every cell error is floored at 50 eps int_cell |f| (rounding in the
  // Kronrod sum), so no subdivision can push the total below
  // 50 eps int |f|. Accept twice that floor when it exceeds the requested
  // tolerance; the result is then flagged as roundoff limited.
  auto requested = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
  auto roundoff_floor = [&] { return 2.0 * kRoundoffFactor * kEps * total_magnitude; };
  auto target = [&] { return std::max(requested(), roundoff_floor()); };
  while (over_wound > 0 || total_error > target()) {
    if (subdivisions >= spec.max_subdivisions) {
      const Complex value = ordered_sum(cells) * sign;
      throw ToleranceNotMet("tolerance not met after " + std::to_string(subdivisions) +
                                " subdivisions",
                            value.real(), value.imag(), total_error);
    }
    const int worst = heap.top();
    heap.pop();
    const Cell parent = cells[worst];
    if (parent.over_wound()) --over_wound;
    const double mid = 0.5 * (parent.a + parent.b);
    if (!(mid > parent.a && mid < parent.b)) {
      // Cell at floating resolution; cannot split further.
      const Complex value = ordered_sum(cells) * sign;
      throw ToleranceNotMet("tolerance not met: cell width at floating-point resolution",
                            value.real(), value.imag(), total_error);
    }
    Cell left = kronrod15(f, parent.a, mid);
    Cell right = kronrod15(f, mid, parent.b);
    total += left.value + right.value - parent.value;
    total_error += left.error + right.error - parent.error;
    total_magnitude += left.magnitude + right.magnitude - parent.magnitude;
    if (left.over_wound()) ++over_wound;
    if (right.over_wound()) ++over_wound;
    cells[worst] = left;
    cells.push_back(right);
    heap.push(worst);
    heap.push(static_cast<int>(cells.size()) - 1);
    ++subdivisions;

    // Periodic resummation keeps the running error free of cancellation drift.
    if (subdivisions % 1024 == 0) {
      total_error = 0.0;
      total_magnitude = 0.0;
      total = {0.0, 0.0};
      for (const Cell& c : cells) {
        total_error += c.error;
        total_magnitude += c.magnitude;
        total += c.value;
      }
    }
  }

  result.error = 0.0;
  for (const Cell& c : cells) result.error += c.error;
  result.cells = static_cast<int>(cells.size());
  result.value = ordered_sum(cells) * sign;
  result.roundoff_limited = result.error > requested();
  result.evaluations = f.evaluations;
  return result;
}

Complex integrate(const SmoothFunction1D& amplitude, const RealFn& phase, Interval interval,
                  const QuadratureSpec& spec) {
  return integrate_detailed(amplitude, phase, interval, spec).value;
}

Complex oracle_integrate(const SmoothFunction1D& amplitude, const RealFn& phase,
                         Interval interval, std::int64_t node_count) {
  if (node_count < 3 || node_count % 2 == 0) {
    throw DomainError("oracle node count must be odd and >= 3");
  }
  if (!std::isfinite(interval.lo) || !std::isfinite(interval.hi)) {
    throw DomainError("integration interval must be bounded");
  }
  const double h = (interval.hi - interval.lo) / static_cast<double>(node_count - 1);
  // Neumaier-compensated accumulation of the Simpson sum.
  Complex sum{0.0, 0.0};
  Complex comp{0.0, 0.0};
  auto add = [&](Complex v) {
    const double sr = sum.real() + v.real();
    const double si = sum.imag() + v.imag();
    double cr = comp.real();
    double ci = comp.imag();
    cr += (std::abs(sum.real()) >= std::abs(v.real())) ? (sum.real() - sr) + v.real()
                                                        : (v.real() - sr) + sum.real();
    ci += (std::abs(sum.imag()) >= std::abs(v.imag())) ? (sum.imag() - si) + v.imag()
                                                        : (v.imag() - si) + sum.imag();
    sum = {sr, si};
    comp = {cr, ci};
  };
  for (std::int64_t i = 0; i < node_count; ++i) {
    const double x =
        (i == node_count - 1) ? interval.hi : interval.lo + static_cast<double>(i) * h;
    const Complex amp = amplitude(x);
    const double ph = phase(x);
    if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag()) || !std::isfinite(ph)) {
      throw InvalidIntegrand("non-finite integrand sample at x = " + std::to_string(x));
    }
    const double w = (i == 0 || i == node_count - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    add(w * amp * Complex(std::cos(ph), std::sin(ph)));
  }
  return (sum + comp) * (h / 3.0);
}

const GaussLegendre& gauss_legendre(int n) {
  if (n < 1 || n > 512) throw DomainError("Gauss-Legendre order must lie in [1, 512]");
  static std::mutex mutex;
  static std::map<int, GaussLegendre> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return cache.emplace(n, std::move(rule)).first->second;
}

double gauss_legendre_integrate(const RealFn& f, double a, double b, int n, int panels) {
  if (panels < 1) throw DomainError("panel count must be >= 1");
  const GaussLegendre& rule = gauss_legendre(n);
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double half = 0.5 * h;
    const double mid = lo + half;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    total += sum * half;
  }
  return total;
}

}  // namespace cpl
