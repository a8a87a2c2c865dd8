// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance [--only K]

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../support/oracles.hpp"
#include "ribbonband/asymptotics.hpp"
#include "ribbonband/bands.hpp"
#include "ribbonband/cli/commands.hpp"
#include "ribbonband/jacobi.hpp"
#include "ribbonband/lattice.hpp"
#include "ribbonband/oracle.hpp"

using namespace ribbonband;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTightTol = 1e-15;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double F_direct(double a, std::span<const double> v) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; 2 * k < v.size(); ++k) {
    const double w = std::pow(a, 2.0 * static_cast<double>(k));
    num += v[2 * k] * w;
    den += w;
  }
  return num / den;
}

std::vector<double> unit_ball_sample(std::mt19937_64& rng, int N) {
  auto v = oracle::random_vector(rng, 2 * N + 1, -1, 1);
  const double radius = oracle::random_vector(rng, 1, 0, 1)[0];
  const double norm = oracle::euclid(v);
  for (auto& x : v) x *= radius / norm;
  return v;
}

// ---------------------------------------------------------------------------

Outcome closed_form_bands() {
  const auto start = std::chrono::steady_clock::now();
  const auto grid = uniform_grid(401);
  double worst = 0.0;
  for (int N = 1; N <= 8; ++N) {
    const auto params = RibbonParams::zero(N);
    for (double a : grid) {
      const auto ev = eigenvalues(jacobi_matrix(params, a));
      for (int k = -N; k <= N; ++k) worst = std::max(worst, std::abs(ev[k] - oracle::unperturbed(k, a, N)));
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= 1e-10 && seconds < 1.0, "max deviation " + num(worst) + ", runtime " + num(seconds) + " s"};
}

Outcome spectrum_shape() {
  const auto report = spectrum_report(RibbonParams::zero(3), uniform_grid(401));
  const double s1 = std::sin(kPi / 4);
  const double hull = std::sqrt(5 + 4 * std::cos(kPi / 4));
  bool pass = report.gaps.size() == 1;
  double gap_err = 1.0;
  if (pass) gap_err = std::max(std::abs(report.gaps[0].lo + s1), std::abs(report.gaps[0].hi - s1));
  double lo = 0.0;
  double hi = 0.0;
  for (const auto& b : report.bands) {
    lo = std::min(lo, b.lo);
    hi = std::max(hi, b.hi);
  }
  const double hull_err = std::max(std::abs(hi - hull), std::abs(lo + hull));
  const auto& b0 = report.bands[3];
  const bool flat0 = b0.label == 0 && b0.is_flat && std::abs(b0.lo) <= 1e-10 && std::abs(b0.hi) <= 1e-10;
  pass = pass && gap_err <= 1e-9 && hull_err <= 1e-9 && std::abs(hi - 2.7979) <= 5e-5 && flat0;
  return {pass, "gaps " + std::to_string(report.gaps.size()) + ", gap edge error " + num(gap_err) +
                    ", hull edge " + num(hi) + " (error " + num(hull_err) + "), flat band at 0: " +
                    (flat0 ? "yes" : "no")};
}

Outcome direct_integral_oracle() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> pick_n(1, 3);
  std::uniform_int_distribution<int> pick_l(3, 10);
  int bad = 0;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int N = pick_n(rng);
    const int L = pick_l(rng);
    const RibbonParams params(N, unit_ball_sample(rng, N));
    const auto r = compare_multisets(periodic_ribbon_spectrum(params, L), bloch_union_spectrum(params, L), 1e-8);
    bad += r.unmatched_count == 0 ? 0 : 1;
    worst = std::max(worst, r.max_pairwise_deviation);
  }
  return {bad == 0, "instances with unmatched values: " + std::to_string(bad) + "/20, max deviation " + num(worst)};
}

Outcome flat_band_exactness() {
  std::mt19937_64 rng(1002);
  std::uniform_int_distribution<int> pick_n(1, 4);
  const auto grid = uniform_grid(401);
  int exact_failures = 0;
  int width_failures = 0;
  int violated_failures = 0;
  double widest_flat = 0.0;
  double narrowest_broken = 1e300;
  for (int i = 0; i < 50; ++i) {
    const int N = pick_n(rng);
    auto v = oracle::random_vector(rng, 2 * N + 1, -1, 1);
    for (int k = 1; k <= N; ++k) v[2 * k] = v[0];
    const RibbonParams params(N, v);
    if (verify_flat_eigen_exact(params, flat_band_vector(N, N), 2 * N + 2) != 0.0) ++exact_failures;
    const auto s0 = band_interval(0, params, grid);
    widest_flat = std::max(widest_flat, s0.hi - s0.lo);
    if (s0.hi - s0.lo > 1e-10) ++width_failures;
  }
  for (int i = 0; i < 50; ++i) {
    const int N = pick_n(rng);
    auto v = oracle::random_vector(rng, 2 * N + 1, -1, 1);
    for (int k = 1; k <= N; ++k) v[2 * k] = v[0];
    const int site = 2 * std::uniform_int_distribution<int>(0, N)(rng);
    const double kick = oracle::random_vector(rng, 1, 1e-3, 0.1)[0];
    v[site] += (i % 2 == 0) ? kick : -kick;
    const auto s0 = band_interval(0, RibbonParams(N, v), grid);
    narrowest_broken = std::min(narrowest_broken, s0.hi - s0.lo);
    if (!(s0.hi - s0.lo > 1e-5)) ++violated_failures;
  }
  return {exact_failures + width_failures + violated_failures == 0,
          "nonzero exact residuals " + std::to_string(exact_failures) + "/50, widest flat band " + num(widest_flat) +
              ", narrowest violated band " + num(narrowest_broken)};
}

Outcome weak_field_order() {
  // Fixed w chosen so that F has an interior maximum and its minimum at a = 2.
  const std::vector<double> w{0.3, -0.7, 1.0, 0.4, -0.8};
  const RibbonParams base(2, w);
  const auto grid = uniform_grid(401);
  std::vector<double> eps{1e-2, 5e-3, 2.5e-3, 1.25e-3};
  std::vector<double> err_f, err_lo, err_hi;
  for (double e : eps) {
    const auto params = base.scaled(e);
    const auto lambda0 = band_function(0, params, grid, kTightTol);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      worst = std::max(worst, std::abs(lambda0[i] - F_direct(grid[i], params.v())));
    }
    err_f.push_back(worst);
    double fmin = 1e300;
    double fmax = -1e300;
    for (int i = 0; i <= 20000; ++i) {
      const double F = F_direct(i * 1e-4, params.v());
      fmin = std::min(fmin, F);
      fmax = std::max(fmax, F);
    }
    const auto s0 = band_interval(0, params, grid, kTightTol);
    err_lo.push_back(std::abs(s0.lo - fmin));
    err_hi.push_back(std::abs(s0.hi - fmax));
  }
  const double slope_f = loglog_slope(eps, err_f);
  const double slope_lo = loglog_slope(eps, err_lo);
  const double slope_hi = loglog_slope(eps, err_hi);
  return {slope_f >= 1.9 && slope_lo >= 1.9 && slope_hi >= 1.9,
          "slopes: max_a|lambda0-F| " + num(slope_f) + ", lower edge " + num(slope_lo) + ", upper edge " +
              num(slope_hi)};
}

double lower_edge_formula(int k, const std::vector<double>& v, int N) {
  const double q = kPi * k / (N + 1);
  double sum = 0.0;
  for (int n = 1; n <= N + 1; ++n) {
    sum += std::pow(std::cos(n * q), 2) * v[2 * n - 2];
    if (2 * n <= 2 * N + 1) sum += std::pow(std::sin(n * q), 2) * v[2 * n - 1];
  }
  return std::sin(q) + sum / (N + 1);
}

double upper_edge_formula(int k, const std::vector<double>& v, int N) {
  const double q = kPi * k / (N + 1);
  const double d = 5 - 4 * std::cos(q);
  double sum = 0.0;
  for (int n = 1; n <= N; ++n) sum += std::pow(std::sin(n * q), 2) * v[2 * n - 1];
  for (int n = 0; n <= N; ++n) sum += std::pow(std::sin(n * q) - 2 * std::sin((n + 1) * q), 2) / d * v[2 * n];
  return std::sqrt(d) + sum / (N + 1);
}

Outcome first_order_edges() {
  std::mt19937_64 rng(1006);
  const double eps = 1e-4;
  const auto grid = uniform_grid(401);
  double worst_lo = 0.0;
  double worst_hi = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    auto v = oracle::random_vector(rng, 5, -1, 1);
    for (auto& x : v) x *= eps;
    const auto band = band_interval(1, RibbonParams(2, v), grid, kTightTol);
    worst_lo = std::max(worst_lo, std::abs(band.lo - lower_edge_formula(1, v, 2)));
    worst_hi = std::max(worst_hi, std::abs(band.hi - upper_edge_formula(1, v, 2)));
  }
  double shift_err = 0.0;
  for (double c : {0.25, -0.6, 1.5}) {
    const std::vector<double> v(5, c);
    const auto band = band_interval(1, RibbonParams(2, v), grid, kTightTol);
    shift_err = std::max({shift_err, std::abs(band.lo - lower_edge_formula(1, v, 2)),
                          std::abs(band.hi - upper_edge_formula(1, v, 2)),
                          std::abs(thm3_lower_edge(1, RibbonParams(2, v)) - band.lo),
                          std::abs(thm3_upper_edge(1, RibbonParams(2, v)) - band.hi)});
  }
  const double bound = 10 * eps * eps;
  return {worst_lo <= bound && worst_hi <= bound && shift_err <= 1e-12,
          "lower edge error " + num(worst_lo) + ", upper edge error " + num(worst_hi) + " (bound " + num(bound) +
              "), uniform-shift error " + num(shift_err)};
}

Outcome constant_field_example() {
  const double eps = 1e-3;
  const auto grid = uniform_grid(401);
  bool measured_ok = true;
  bool formulas_agree = true;
  std::string detail;
  for (int N : {1, 2}) {
    const int p = 2 * N + 1;
    std::vector<double> v(static_cast<std::size_t>(p), 0.0);
    for (int k = 0; k <= N; ++k) v[2 * k] = eps * k;
    double weighted = 0.0;
    for (int k = 1; k <= N; ++k) weighted += std::pow(4.0, k) * v[2 * k];
    const double from_weak = 3.0 / (std::pow(4.0, N + 1) - 1.0) * weighted;
    const double literal_cp = (4.0 * N * (std::pow(4.0, N) - 1.0) - 3.0) / (3.0 * (std::pow(2.0, p + 1) - 1.0));
    const double from_literal = 4 * eps * literal_cp;
    const double measured = band_interval(0, RibbonParams(N, v), grid, kTightTol).hi;
    const double cp = constant_field(N, eps).C_p;
    const double rel = std::abs(measured / (4 * eps * cp) - 1.0);
    measured_ok = measured_ok && rel <= 0.05 && std::abs(from_weak - 4 * eps * cp) <= 1e-15;
    const bool agree = std::abs(from_literal - from_weak) <= 1e-15;
    formulas_agree = formulas_agree && agree;
    detail += "N=" + std::to_string(N) + ": measured " + num(measured) + " vs 4*eps*C_p " + num(4 * eps * cp) +
              " (rel " + num(rel) + "); closed-form C_p gives " + num(from_literal) + ", weighted sum gives " +
              num(from_weak) + (agree ? " (agree)" : " (DISAGREE)") + "; ";
  }
  const bool n1_ok = std::abs(constant_field(1, eps).hi - 4 * eps / 5) <= 1e-15;
  detail += "N=1 value 4eps/5: " + std::string(n1_ok ? "ok" : "mismatch");
  return {measured_ok && formulas_agree && n1_ok, detail};
}

// v_n with v_0 = v_{p+1} = 0.
double val_or_zero(const std::vector<double>& v, int n) {
  return (n < 1 || n > static_cast<int>(v.size())) ? 0.0 : v[n - 1];
}

struct StrongEdge {
  double lo;
  double hi;
};

// Predicted edges t*v_k - xi_k^{+-}/t with v_0 = v_{p+1} = 0 and vanishing r-terms dropped.
std::vector<StrongEdge> strong_prediction(const std::vector<double>& v, double t) {
  const int p = static_cast<int>(v.size());
  const auto val = [&](int n) { return (n == 0 || n == p + 1) ? 0.0 : v[n - 1]; };
  const auto r = [&](int n, bool plus) { return (n == 1 || n == p + 1) ? 0.0 : (n % 2 ? 1.0 : (plus ? 4.0 : 0.0)); };
  std::vector<StrongEdge> out;
  for (int k = 1; k <= p; ++k) {
    double xi[2] = {0.0, 0.0};
    for (int s = 0; s < 2; ++s) {
      if (r(k, s) != 0.0) xi[s] += r(k, s) / (val(k - 1) - val(k));
      if (r(k + 1, s) != 0.0) xi[s] += r(k + 1, s) / (val(k + 1) - val(k));
    }
    const double a = t * val(k) - xi[0] / t;
    const double b = t * val(k) - xi[1] / t;
    out.push_back({std::min(a, b), std::max(a, b)});
  }
  return out;
}

Outcome strong_field_limit() {
  const auto grid = uniform_grid(401);
  const std::vector<double> ts{50, 100, 200, 400};
  bool pass = true;
  std::string detail;
  for (int N = 1; N <= 3; ++N) {
    const int p = 2 * N + 1;
    std::vector<double> v(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) v[k] = k + 1;
    const RibbonParams params(N, v);
    std::vector<double> residual, top_width;
    double width_dev = 0.0;
    bool disjoint = true;
    for (double t : ts) {
      const auto predicted = strong_prediction(v, t);
      const auto scaled = params.scaled(t);
      double worst = 0.0;
      std::vector<Interval> measured;
      for (int k = 1; k <= p; ++k) {
        const auto band = band_interval(k - N - 1, scaled, grid, kTightTol);
        measured.push_back(band);
        worst = std::max({worst, std::abs(band.lo - predicted[k - 1].lo), std::abs(band.hi - predicted[k - 1].hi)});
        if (t == 400.0 && k != p) {
          const int partner = k % 2 == 0 ? k + 1 : k - 1;  // k - (-1)^k
          const double formula = 4.0 / (t * std::abs(val_or_zero(v, partner) - v[k - 1]));
          width_dev = std::max(width_dev, std::abs((band.hi - band.lo) / formula - 1.0));
        }
      }
      for (int k = 1; k < p; ++k) disjoint = disjoint && measured[k - 1].hi < measured[k].lo;
      residual.push_back(worst);
      top_width.push_back(measured.back().hi - measured.back().lo);
    }
    const double slope_edges = loglog_slope(ts, residual);
    const double slope_top = loglog_slope(ts, top_width);
    const bool ok = slope_edges <= -1.9 && slope_top <= -1.9 && width_dev <= 0.05 && disjoint;
    pass = pass && ok;
    detail += "N=" + std::to_string(N) + ": edge slope " + num(slope_edges) + ", top width slope " + num(slope_top) +
              ", width deviation " + num(width_dev) + (disjoint ? ", disjoint" : ", OVERLAP") + (N < 3 ? "; " : "");
  }
  return {pass, detail};
}

Outcome gap_asymptote() {
  const int N = 50;
  const auto report = spectrum_report(RibbonParams::zero(N), uniform_grid(401));
  if (report.gaps.size() != 1) return {false, "expected one gap, found " + std::to_string(report.gaps.size())};
  const double gap = report.gaps[0].hi - report.gaps[0].lo;
  const double ratio = gap / (2 * kPi / N);
  const double closed = 2 * std::sin(kPi / (N + 1));
  return {std::abs(ratio - 1.0) <= 0.05 && std::abs(gap - closed) <= 1e-9,
          "gap " + num(gap) + " (closed form " + num(closed) + "), ratio to 2pi/N " + num(ratio)};
}

Outcome determinism() {
  const auto run = [] {
    std::vector<std::string> args{"ribbonband", "bands", "--N", "3", "--potential", "0.12,-0.3,0.05,0.2,-0.07,0.4,0.01"};
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return std::pair{code, out.str() + "\n--\n" + err.str()};
  };
  const auto [c1, first] = run();
  const auto [c2, second] = run();
  return {c1 == 0 && c2 == 0 && first == second && !first.empty(),
          std::to_string(first.size()) + " bytes per run, identical: " + (first == second ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"closed-form bands, N=1..8", closed_form_bands},
      {"spectrum shape at N=3", spectrum_shape},
      {"periodic vs Bloch spectra", direct_integral_oracle},
      {"flat-band exactness", flat_band_exactness},
      {"weak-field order", weak_field_order},
      {"first-order band edges", first_order_edges},
      {"constant-field example", constant_field_example},
      {"strong-field limit", strong_field_limit},
      {"gap asymptote at N=50", gap_asymptote},
      {"bands output determinism", determinism},
  };
  int only = 0;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--only") only = std::atoi(argv[i + 1]);
  }
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (only != 0 && id != only) continue;
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << criteria[i].first << "): " << o.detail
              << "\n";
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
