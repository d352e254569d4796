#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <cstddef>
#include <string>
#include <vector>

#include "subdyn/substitution.hpp"

namespace subdyn {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense univariate polynomial, coefficients in ascending degree order, trailing zeros trimmed.
template <typename Scalar>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> coefficients) : c_(std::move(coefficients)) { trim(); }

  /// Degree; the zero polynomial has degree -1.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<Scalar>& coefficients() const noexcept { return c_; }
  Scalar coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Scalar(0); }
  Scalar leading() const { return c_.empty() ? Scalar(0) : c_.back(); }

  template <typename T>
  T operator()(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + T(*it);
    return acc;
  }

  Polynomial derivative() const {
    std::vector<Scalar> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Scalar(static_cast<long long>(i)));
    return Polynomial(std::move(d));
  }

  /// x^deg p(1/x) for the stated nominal degree.
  Polynomial reversed(std::size_t nominal_degree) const {
    std::vector<Scalar> r(nominal_degree + 1, Scalar(0));
    for (std::size_t i = 0; i < c_.size() && i <= nominal_degree; ++i) r[nominal_degree - i] = c_[i];
    return Polynomial(std::move(r));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == Scalar(0)) c_.pop_back();
  }
  std::vector<Scalar> c_;
};

using IntegerPolynomial = Polynomial<BigInt>;
using RationalPolynomial = Polynomial<Rational>;

RationalPolynomial to_rational(const IntegerPolynomial& p);
RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b);
/// Euclidean division; returns {quotient, remainder}.
std::pair<RationalPolynomial, RationalPolynomial> divide(const RationalPolynomial& a, const RationalPolynomial& b);
/// Monic gcd (zero if both are zero).
RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b);
RationalPolynomial squarefree_part(const RationalPolynomial& p);

/// det(xI - M), by Faddeev–LeVerrier over big integers.
IntegerPolynomial char_poly(const CountMatrix& m);

/// Distinct real roots of p in the half-open interval (lo, hi], by a Sturm sequence.
std::size_t count_real_roots(const RationalPolynomial& p, const Rational& lo, const Rational& hi);
/// Distinct real roots of p greater than lo.
std::size_t count_real_roots_above(const RationalPolynomial& p, const Rational& lo);

/// Roots of p inside the open unit disk, via the Schur–Cohn recursion. Requires
/// gcd(p, p*) = 1 (no roots on the circle, no pairs symmetric about it); throws undecided otherwise.
std::size_t schur_cohn_inside(const RationalPolynomial& p);

/// Rational bracket around the Perron root: lower ≤ λ ≤ upper and char_poly changes sign on it
/// (or lower = upper = λ exactly).
struct EigenvalueEstimate {
  Rational lower;
  Rational upper;

  Rational width() const { return upper - lower; }
  bool exact() const { return lower == upper; }
  double midpoint() const;
  bool contains(double x) const;
};

/// Bisection with Sturm counting on [min row sum, max row sum]; stops at width ≤ tol.
/// Non-primitive matrices are unsupported (their dominant root may be ambiguous).
EigenvalueEstimate dominant_eigenvalue(const CountMatrix& m, const Rational& tol = Rational(1, 1000000000));

/// Literal mode: dominant root > 1 in modulus, every other root < 1. Strict mode also
/// requires the dominant root to be irrational, which rules out uniform substitutions.
bool is_pisot(const CountMatrix& m, bool strict = false);

struct EigenvalueMatch {
  bool equal = false;
  bool certified = false;  // decided by an exact common-root check rather than overlapping brackets
};

/// Whether two primitive matrices share their Perron root.
EigenvalueMatch same_dominant_eigenvalue(const CountMatrix& a, const CountMatrix& b,
                                         const Rational& tol = Rational(1, 1000000000));

std::string format_polynomial(const IntegerPolynomial& p);
std::string format_estimate(const EigenvalueEstimate& e);

}  // namespace subdyn
