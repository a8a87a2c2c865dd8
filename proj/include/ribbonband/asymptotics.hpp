#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ribbonband/bands.hpp"
#include "ribbonband/params.hpp"

namespace ribbonband {

// ---------------------------------------------------------------------------
// Weak field: the middle band lambda_0(a, v) to first order in v.

/// F(a, v) = sum_k v_{2k+1} a^{2k} / sum_k a^{2k}, k = 0..N (Horner in a^2).
double weak_field_F(double a, const RibbonParams& params);

/// The same function written as v_p - sum_{k=1}^N (v_{2k+1} - v_{2k-1}) g_k(a)
/// with g_k = (a^{2k} - 1) / (a^{2(N+1)} - 1). The ratio is evaluated as a
/// quotient of geometric sums, so a = 1 (g_k = k/(N+1)) needs no special case.
double F_telescoped(double a, const RibbonParams& params);

struct WeakFieldPrediction {
  std::vector<double> grid;
  std::vector<double> F_samples;
  double a_lo;
  double lo;
  double a_hi;
  double hi;
  double band0_width_firstorder;
};

/// min/max of F over [0, 2]. Nondecreasing odd entries make F nondecreasing,
/// so the edges are read at a = 0 and a = 2; otherwise grid + golden refinement.
WeakFieldPrediction weak_field_edges(const RibbonParams& params, std::span<const double> grid = {});

/// 3/(4^{N+1}-1) sum_{k=0}^N 4^k v_{2k+1}, i.e. F(2, v).
double weak_field_upper_at_two(const RibbonParams& params);

// ---------------------------------------------------------------------------
// First-order band edges for k != 0.

/// lambda_k^-(v): s_k sign(k) + sum_n (c_{nk}^2 v_{2n-1} + s_{nk}^2 v_{2n}) / (N+1).
/// Defined for 0 < |k| < (N+1)/2; the v_{2N+2} term has weight sin^2(k pi) = 0
/// and is dropped. For k < 0 this is the band edge nearest zero.
double thm3_lower_edge(int label, const RibbonParams& params);

/// Weights chi_1..chi_p of the upper-edge formula; they sum to N+1.
std::vector<double> thm3_upper_weights(int label, int N);

/// lambda_k^+(v): sqrt(5 - 4c_k) sign(k) + sum_n chi_n v_n / (N+1).
double thm3_upper_edge(int label, const RibbonParams& params);

// ---------------------------------------------------------------------------
// Constant field v_{2k+1} = eps k, even rows 0.

struct ConstantFieldPrediction {
  double lo;
  double hi;
  double C_p;
};

RibbonParams constant_field_potential(int N, double eps);

/// hi = 4 eps C_p with C_p = ((3N-1) 4^N + 1) / (3 (4^{N+1} - 1)), the closed
/// form of weak_field_upper_at_two on this potential; lo = 0.
ConstantFieldPrediction constant_field(int N, double eps);

/// Alternative closed form (4N(4^N-1) - 3) / (3 (2^{p+1} - 1)) for C_p.
/// Agrees with constant_field(N, eps).C_p only for N = 1.
double literal_constant_field_coefficient(int N);

// ---------------------------------------------------------------------------
// Strong field H(t) = Laplacian + t V with v_1 < ... < v_p.

struct StrongFieldBand {
  int site;   // 1-based lattice row k
  int label;  // band label k - N - 1
  double center;
  double xi_minus;  // a = 0 correction
  double xi_plus;   // a = 2 correction
  double lo;
  double hi;
  double width;
  double width_formula;  // 4 / (t |v_{k-(-1)^k} - v_k|); 0 for k = p
  bool higher_order;     // width is O(t^-2) at this order (k = p)
};

struct StrongFieldEstimate {
  double t;
  std::vector<StrongFieldBand> bands;
  double min_spacing;
  double disjoint_threshold;  // t above which the predicted bands cannot overlap
  bool disjoint;
};

/// Throws DomainError unless v is strictly increasing and t >= 10 / min spacing.
StrongFieldEstimate strong_field(const RibbonParams& params, double t);

// ---------------------------------------------------------------------------
// Order-of-convergence estimation.

struct OrderEstimate {
  double slope;
  double residual;  // rms deviation of log|err| from the fitted line
  bool exact;       // every sampled error was zero
};

/// Least-squares slope of log|y| against log x.
OrderEstimate fit_loglog(std::span<const double> x, std::span<const double> y);

/// Samples observable at x0, x0/2, ..., x0/2^halvings and fits the slope.
OrderEstimate order_check(const std::function<double(double)>& observable, double x0, int halvings);

}  // namespace ribbonband
