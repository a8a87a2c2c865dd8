#include "ribbonband/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ribbonband/errors.hpp"
#include "ribbonband/jacobi.hpp"

namespace ribbonband {

double weak_field_F(double a, const RibbonParams& params) {
  const double z = a * a;
  double num = 0.0;
  double den = 0.0;
  for (int k = params.N(); k >= 0; --k) {
    num = num * z + params.row(2 * k + 1);
    den = den * z + 1.0;
  }
  return num / den;
}

double F_telescoped(double a, const RibbonParams& params) {
  const int N = params.N();
  const double z = a * a;
  // partial[k] = 1 + z + ... + z^{k-1}
  std::vector<double> partial(static_cast<std::size_t>(N) + 2, 0.0);
  double power = 1.0;
  for (int k = 1; k <= N + 1; ++k) {
    partial[static_cast<std::size_t>(k)] = partial[static_cast<std::size_t>(k) - 1] + power;
    power *= z;
  }
  const double full = partial[static_cast<std::size_t>(N) + 1];
  double value = params.row(params.p());
  for (int k = 1; k <= N; ++k) {
    value -= (params.row(2 * k + 1) - params.row(2 * k - 1)) * partial[static_cast<std::size_t>(k)] / full;
  }
  return value;
}

namespace {

bool odd_entries_monotone(const RibbonParams& params) {
  for (int k = 3; k <= params.p(); k += 2) {
    if (params.row(k) < params.row(k - 2)) return false;
  }
  return true;
}

}  // namespace

WeakFieldPrediction weak_field_edges(const RibbonParams& params, std::span<const double> grid) {
  WeakFieldPrediction out{};
  out.grid = grid.empty() ? uniform_grid() : std::vector<double>(grid.begin(), grid.end());
  out.F_samples.reserve(out.grid.size());
  for (double a : out.grid) out.F_samples.push_back(weak_field_F(a, params));

  if (odd_entries_monotone(params)) {
    out.a_lo = 0.0;
    out.lo = weak_field_F(0.0, params);
    out.a_hi = 2.0;
    out.hi = weak_field_F(2.0, params);
  } else {
    const auto e = refine_extrema([&params](double a) { return weak_field_F(std::clamp(a, 0.0, 2.0), params); },
                                  out.grid, out.F_samples);
    out.a_lo = e.a_min;
    out.lo = e.lo;
    out.a_hi = e.a_max;
    out.hi = e.hi;
  }
  out.band0_width_firstorder = out.hi - out.lo;
  return out;
}

double weak_field_upper_at_two(const RibbonParams& params) {
  double sum = 0.0;
  double four_k = 1.0;
  for (int k = 0; k <= params.N(); ++k) {
    sum += four_k * params.row(2 * k + 1);
    four_k *= 4.0;
  }
  return 3.0 * sum / (four_k - 1.0);
}

namespace {

int sign_of(int k) { return k > 0 ? 1 : -1; }

}  // namespace

double thm3_lower_edge(int label, const RibbonParams& params) {
  const int N = params.N();
  const int k = std::abs(label);
  if (k == 0 || 2 * k >= N + 1) {
    throw DomainError("first-order lower edge needs 0 < |k| < (N+1)/2, got k = " + std::to_string(label));
  }
  double sum = 0.0;
  for (int n = 1; n <= N + 1; ++n) {
    const double c = c_k(n * k, N);
    sum += c * c * params.row(2 * n - 1);
    if (2 * n <= params.p()) {
      const double s = s_k(n * k, N);
      sum += s * s * params.row(2 * n);
    }
  }
  return s_k(k, N) * sign_of(label) + sum / (N + 1);
}

std::vector<double> thm3_upper_weights(int label, int N) {
  if (label == 0) throw DomainError("upper-edge formula is defined for k != 0");
  const int k = std::abs(label);
  const int p = 2 * N + 1;
  const double denom = 5.0 - 4.0 * c_k(k, N);
  std::vector<double> chi(static_cast<std::size_t>(p));
  for (int n = 1; n <= N; ++n) {
    const double s = s_k(k * n, N);
    chi[static_cast<std::size_t>(2 * n - 1)] = s * s;
  }
  for (int n = 0; n <= N; ++n) {
    const double d = s_k(n * k, N) - 2.0 * s_k((n + 1) * k, N);
    chi[static_cast<std::size_t>(2 * n)] = d * d / denom;
  }
  return chi;
}

double thm3_upper_edge(int label, const RibbonParams& params) {
  const int N = params.N();
  const auto chi = thm3_upper_weights(label, N);
  double sum = 0.0;
  for (int n = 1; n <= params.p(); ++n) sum += chi[static_cast<std::size_t>(n - 1)] * params.row(n);
  return std::sqrt(5.0 - 4.0 * c_k(std::abs(label), N)) * sign_of(label) + sum / (N + 1);
}

RibbonParams constant_field_potential(int N, double eps) {
  std::vector<double> v(static_cast<std::size_t>(2 * N + 1), 0.0);
  for (int k = 0; k <= N; ++k) v[static_cast<std::size_t>(2 * k)] = eps * k;
  return {N, std::move(v)};
}

ConstantFieldPrediction constant_field(int N, double eps) {
  if (N < 1) throw DomainError("ribbon width N must be >= 1");
  if (eps < 0.0) throw DomainError("field strength must be nonnegative");
  const double four_n = std::pow(4.0, N);
  const double C_p = ((3.0 * N - 1.0) * four_n + 1.0) / (3.0 * (4.0 * four_n - 1.0));
  return {0.0, 4.0 * eps * C_p, C_p};
}

double literal_constant_field_coefficient(int N) {
  const int p = 2 * N + 1;
  return (4.0 * N * (std::pow(4.0, N) - 1.0) - 3.0) / (3.0 * (std::pow(2.0, p + 1) - 1.0));
}

StrongFieldEstimate strong_field(const RibbonParams& params, double t) {
  const int p = params.p();
  const int N = params.N();
  double spacing = std::numeric_limits<double>::infinity();
  for (int k = 2; k <= p; ++k) {
    const double d = params.row(k) - params.row(k - 1);
    if (!(d > 0.0)) {
      throw DomainError("strong-field asymptotics need strictly increasing v (v" + std::to_string(k - 1) +
                        " >= v" + std::to_string(k) + ")");
    }
    spacing = std::min(spacing, d);
  }
  if (!(t >= 10.0 / spacing)) {
    throw DomainError("coupling t = " + std::to_string(t) + " below the threshold 10/min spacing = " +
                      std::to_string(10.0 / spacing));
  }

  // r_n is the squared coupling between rows n-1 and n: 0 off the ends,
  // 1 for odd n, a^2 in {0, 4} for even n. Terms with r = 0 are absent.
  const auto r = [p](int n, bool plus) -> double {
    if (n == 1 || n == p + 1) return 0.0;
    if (n % 2 == 1) return 1.0;
    return plus ? 4.0 : 0.0;
  };
  const auto v = [&params, p](int n) { return (n == 0 || n == p + 1) ? 0.0 : params.row(n); };
  const auto xi = [&](int k, bool plus) {
    double x = 0.0;
    if (const double rk = r(k, plus); rk != 0.0) x += rk / (v(k - 1) - v(k));
    if (const double rk1 = r(k + 1, plus); rk1 != 0.0) x += rk1 / (v(k + 1) - v(k));
    return x;
  };

  StrongFieldEstimate out{t, {}, spacing, 0.0, true};
  double xi_max = 0.0;
  for (int k = 1; k <= p; ++k) {
    StrongFieldBand b{};
    b.site = k;
    b.label = k - N - 1;
    b.center = t * params.row(k);
    b.xi_minus = xi(k, false);
    b.xi_plus = xi(k, true);
    b.lo = b.center - std::max(b.xi_minus, b.xi_plus) / t;
    b.hi = b.center - std::min(b.xi_minus, b.xi_plus) / t;
    b.width = std::abs(b.xi_plus - b.xi_minus) / t;
    b.higher_order = (k == p);
    if (k != p) {
      const int partner = (k % 2 == 1) ? k + 1 : k - 1;
      b.width_formula = 4.0 / (t * std::abs(params.row(partner) - params.row(k)));
    }
    xi_max = std::max({xi_max, std::abs(b.xi_minus), std::abs(b.xi_plus)});
    out.bands.push_back(b);
  }
  out.disjoint_threshold = std::sqrt(2.0 * xi_max / spacing);
  for (std::size_t i = 1; i < out.bands.size(); ++i) {
    if (!(out.bands[i].lo > out.bands[i - 1].hi)) out.disjoint = false;
  }
  return out;
}

OrderEstimate fit_loglog(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("order fit needs >= 2 matching samples");
  bool exact = true;
  for (double e : y) exact = exact && e == 0.0;
  if (exact) return {0.0, 0.0, true};
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !std::isfinite(y[i])) throw DomainError("order fit needs positive scales and finite errors");
    if (y[i] == 0.0) continue;
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(std::abs(y[i])));
  }
  if (lx.size() < 2) throw DomainError("order fit: fewer than two nonzero errors");
  const auto n = static_cast<double>(lx.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  const double slope = sxy / sxx;
  double ss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double d = ly[i] - (my + slope * (lx[i] - mx));
    ss += d * d;
  }
  return {slope, std::sqrt(ss / n), false};
}

OrderEstimate order_check(const std::function<double(double)>& observable, double x0, int halvings) {
  if (halvings < 3) throw DomainError("order check needs at least 3 halvings");
  std::vector<double> x;
  std::vector<double> y;
  double scale = x0;
  for (int i = 0; i <= halvings; ++i) {
    x.push_back(scale);
    y.push_back(observable(scale));
    scale *= 0.5;
  }
  return fit_loglog(x, y);
}

}  // namespace ribbonband
