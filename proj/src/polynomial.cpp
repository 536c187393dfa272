#include "fcagg/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace fcagg {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(double c) { return Polynomial(std::vector<double>{c}); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator()(double x) const {
  double y = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) y = y * x + *it;
  return y;
}

double Polynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<std::size_t>(k)];
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial{};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  if (coeffs_.empty()) return Polynomial{};
  std::vector<double> a(coeffs_.size() + 1, 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) a[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
  return Polynomial(std::move(a));
}

double Polynomial::integral(double a, double b) const {
  const Polynomial F = antiderivative();
  return F(b) - F(a);
}

Polynomial Polynomial::shifted(double s) const {
  // Horner in (x + s): res <- res * (x + s) + a_k
  std::vector<double> res;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    std::vector<double> next(res.size() + 1, 0.0);
    for (std::size_t k = 0; k < res.size(); ++k) {
      next[k + 1] += res[k];
      next[k] += s * res[k];
    }
    if (next.empty()) next.push_back(0.0);
    next[0] += *it;
    res = std::move(next);
  }
  return Polynomial(std::move(res));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    double v = 0.0;
    if (k < a.coeffs_.size()) v += a.coeffs_[k];
    if (k < b.coeffs_.size()) v += b.coeffs_[k];
    c[k] = v;
  }
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0 * b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return Polynomial{};
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(double s, const Polynomial& p) {
  std::vector<double> c(p.coeffs_);
  for (double& v : c) v *= s;
  return Polynomial(std::move(c));
}

std::vector<double> quadratic_roots(double c0, double c1, double c2) {
  std::vector<double> roots;
  if (c2 == 0.0) {
    if (c1 != 0.0) roots.push_back(-c0 / c1);
    return roots;
  }
  const double disc = c1 * c1 - 4.0 * c2 * c0;
  if (disc < 0.0) return roots;
  if (disc == 0.0) {
    roots.push_back(-c1 / (2.0 * c2));
    return roots;
  }
  // citardauq-stabilized pair
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (c1 + (c1 >= 0.0 ? sq : -sq));
  double r1 = q / c2;
  double r2 = (q != 0.0) ? c0 / q : -c1 / c2 - r1;
  if (r1 > r2) std::swap(r1, r2);
  roots.push_back(r1);
  roots.push_back(r2);
  return roots;
}

Extrema extrema_on(const Polynomial& p, double a, double b) {
  if (a > b) throw std::invalid_argument("extrema_on: empty interval");
  double lo = p(a), hi = p(a);
  auto take = [&](double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  take(p(b));
  if (p.degree() <= 3) {
    const Polynomial d = p.derivative();
    for (double r : quadratic_roots(d.coeff(0), d.coeff(1), d.coeff(2)))
      if (r > a && r < b) take(p(r));
  } else {
    constexpr int kSamples = 4096;
    for (int k = 1; k < kSamples; ++k) take(p(a + (b - a) * k / kSamples));
  }
  return {lo, hi};
}

}  // namespace fcagg
