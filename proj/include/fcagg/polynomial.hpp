#pragma once

#include <vector>

namespace fcagg {

// Dense real polynomial, coefficients in ascending degree.
// An empty coefficient vector is the zero polynomial.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial constant(double c);

  double operator()(double x) const;

  // -1 for the zero polynomial
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  const std::vector<double>& coeffs() const { return coeffs_; }
  double coeff(int k) const;

  Polynomial derivative() const;
  Polynomial antiderivative() const;  // constant term 0
  double integral(double a, double b) const;

  // p(x + s), expanded
  Polynomial shifted(double s) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& p);

 private:
  void trim();
  std::vector<double> coeffs_;
};

// Real roots of c0 + c1 x + c2 x^2, ascending. Degenerate leading
// coefficients fall back to the lower-degree case.
std::vector<double> quadratic_roots(double c0, double c1, double c2);

struct Extrema {
  double min;
  double max;
};

// Range of p over [a, b]. Exact (endpoints + derivative roots) for
// degree <= 3; dense sampling at 4096 points per interval otherwise.
Extrema extrema_on(const Polynomial& p, double a, double b);

}  // namespace fcagg
