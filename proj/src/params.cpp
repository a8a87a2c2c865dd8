#include "ribbonband/params.hpp"

#include <cmath>
#include <string>

#include "ribbonband/errors.hpp"

namespace ribbonband {

RibbonParams::RibbonParams(int N, std::vector<double> v) : N_(N), v_(std::move(v)) {
  if (N < 1) throw DomainError("ribbon width N must be >= 1, got " + std::to_string(N));
  if (v_.size() != static_cast<std::size_t>(2 * N + 1)) {
    throw DomainError("potential must have p = 2N+1 = " + std::to_string(2 * N + 1) +
                      " entries, got " + std::to_string(v_.size()));
  }
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (!std::isfinite(v_[i])) throw DomainError("potential entry v" + std::to_string(i + 1) + " is not finite");
  }
}

RibbonParams RibbonParams::zero(int N) {
  return RibbonParams(N, std::vector<double>(static_cast<std::size_t>(2 * std::max(N, 0) + 1), 0.0));
}

RibbonParams RibbonParams::scaled(double t) const {
  std::vector<double> w(v_);
  for (auto& x : w) x *= t;
  return {N_, std::move(w)};
}

RibbonParams RibbonParams::shifted(double c) const {
  std::vector<double> w(v_);
  for (auto& x : w) x += c;
  return {N_, std::move(w)};
}

double RibbonParams::norm() const {
  double s = 0.0;
  for (double x : v_) s += x * x;
  return std::sqrt(s);
}

}  // namespace ribbonband
