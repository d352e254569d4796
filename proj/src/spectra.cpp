#include "subdyn/spectra.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <optional>
#include <sstream>

#include "subdyn/error.hpp"

namespace subdyn {

namespace {

using BigMatrix = Eigen::Matrix<BigInt, Eigen::Dynamic, Eigen::Dynamic>;

// Boost 1.74's expression-template traits break Eigen's scalar promotion under C++20,
// so big-integer products are spelled out.
BigMatrix multiply(const BigMatrix& a, const BigMatrix& b) {
  BigMatrix out(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      BigInt acc = 0;
      for (Eigen::Index k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      out(i, j) = std::move(acc);
    }
  }
  return out;
}

int sign(const Rational& r) { return r.sign(); }

RationalPolynomial monomial_shift_down(const RationalPolynomial& p) {
  std::vector<Rational> c(p.coefficients().begin() + 1, p.coefficients().end());
  return RationalPolynomial(std::move(c));
}

std::vector<RationalPolynomial> sturm_sequence(const RationalPolynomial& p) {
  std::vector<RationalPolynomial> seq;
  RationalPolynomial a = squarefree_part(p);
  if (a.degree() <= 0) return {a};
  RationalPolynomial b = a.derivative();
  seq.push_back(a);
  while (!b.is_zero()) {
    seq.push_back(b);
    auto [q, r] = divide(a, b);
    a = b;
    b = RationalPolynomial() - r;
  }
  return seq;
}

std::size_t sign_changes(const std::vector<RationalPolynomial>& seq, const Rational& x) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& p : seq) {
    const int s = sign(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::size_t sign_changes_at_infinity(const std::vector<RationalPolynomial>& seq) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& p : seq) {
    const int s = sign(p.leading());
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

struct RowSums {
  std::int64_t min = 0;
  std::int64_t max = 0;
};

RowSums row_sums(const CountMatrix& m) {
  const Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> sums = m.rowwise().sum();
  return {sums.minCoeff(), sums.maxCoeff()};
}

/// Bisection keeping the largest real root of the squarefree polynomial q in (lo, hi].
EigenvalueEstimate bisect_largest_root(const RationalPolynomial& q, Rational lo, Rational hi, const Rational& tol) {
  const auto seq = sturm_sequence(q);
  auto count = [&](const Rational& a, const Rational& b) {
    return static_cast<long>(sign_changes(seq, a)) - static_cast<long>(sign_changes(seq, b));
  };
  if (q(hi) == 0) return {hi, hi};
  while (hi - lo > tol) {
    const Rational mid = (lo + hi) / 2;
    if (count(mid, hi) >= 1) {
      lo = mid;
    } else {
      hi = mid;
      if (q(hi) == 0) return {hi, hi};
    }
  }
  return {lo, hi};
}

std::string to_decimal(const Rational& r, int digits) {
  using Dec = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<50>>;
  Dec num(boost::multiprecision::numerator(r).str());
  Dec den(boost::multiprecision::denominator(r).str());
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << Dec(num / den);
  return out.str();
}

}  // namespace

RationalPolynomial to_rational(const IntegerPolynomial& p) {
  std::vector<Rational> c;
  for (const BigInt& v : p.coefficients()) c.emplace_back(v);
  return RationalPolynomial(std::move(c));
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coefficients().size() + b.coefficients().size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coefficients().size(); ++i) {
    for (std::size_t j = 0; j < b.coefficients().size(); ++j) c[i + j] += a.coefficients()[i] * b.coefficients()[j];
  }
  return RationalPolynomial(std::move(c));
}

RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) {
  const std::size_t n = std::max(a.coefficients().size(), b.coefficients().size());
  std::vector<Rational> c(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) c[i] = a.coeff(i) - b.coeff(i);
  return RationalPolynomial(std::move(c));
}

std::pair<RationalPolynomial, RationalPolynomial> divide(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (b.is_zero()) fail(ErrorKind::argument, "polynomial division by zero");
  std::vector<Rational> rem = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {RationalPolynomial(), a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  for (int k = a.degree() - db; k >= 0; --k) {
    const Rational factor = rem[static_cast<std::size_t>(k + db)] / b.leading();
    quot[static_cast<std::size_t>(k)] = factor;
    if (factor == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= factor * b.coeff(static_cast<std::size_t>(j));
  }
  rem.resize(static_cast<std::size_t>(db));
  return {RationalPolynomial(std::move(quot)), RationalPolynomial(std::move(rem))};
}

RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b) {
  while (!b.is_zero()) {
    auto r = divide(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  std::vector<Rational> c = a.coefficients();
  const Rational lead = c.back();
  for (auto& v : c) v /= lead;
  return RationalPolynomial(std::move(c));
}

RationalPolynomial squarefree_part(const RationalPolynomial& p) {
  if (p.degree() <= 0) return p;
  const RationalPolynomial g = gcd(p, p.derivative());
  return divide(p, g).first;
}

IntegerPolynomial char_poly(const CountMatrix& m) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) fail(ErrorKind::argument, "char_poly: matrix must be square");
  BigMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = m(i, j);
  }
  // c[n] = 1; M_k = A M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A M_k) / k.
  std::vector<BigInt> c(static_cast<std::size_t>(n + 1), BigInt(0));
  c[static_cast<std::size_t>(n)] = 1;
  BigMatrix mk(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) mk(i, j) = 0;
  }
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = multiply(a, mk);
    for (Eigen::Index i = 0; i < n; ++i) mk(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    const BigMatrix am = multiply(a, mk);
    BigInt trace = 0;
    for (Eigen::Index i = 0; i < n; ++i) trace += am(i, i);
    c[static_cast<std::size_t>(n - k)] = -trace / BigInt(k);
  }
  return IntegerPolynomial(std::move(c));
}

std::size_t count_real_roots(const RationalPolynomial& p, const Rational& lo, const Rational& hi) {
  if (hi <= lo) return 0;
  const auto seq = sturm_sequence(p);
  if (seq.front().degree() <= 0) return 0;
  return sign_changes(seq, lo) - sign_changes(seq, hi);
}

std::size_t count_real_roots_above(const RationalPolynomial& p, const Rational& lo) {
  const auto seq = sturm_sequence(p);
  if (seq.front().degree() <= 0) return 0;
  return sign_changes(seq, lo) - sign_changes_at_infinity(seq);
}

std::size_t schur_cohn_inside(const RationalPolynomial& p) {
  if (p.degree() < 0) fail(ErrorKind::argument, "schur_cohn_inside: zero polynomial");
  std::vector<Rational> f = p.coefficients();
  std::size_t inside = 0;
  int product_sign = 1;
  for (std::size_t d = f.size() - 1; d >= 1; --d) {
    // T f = f(0) f - lead f*, with f* the reversal at nominal degree d; drops to degree d - 1.
    const Rational a0 = f[0];
    const Rational ad = f[d];
    std::vector<Rational> g(d);
    for (std::size_t k = 0; k < d; ++k) g[k] = a0 * f[k] - ad * f[d - k];
    const Rational delta = g[0];
    if (delta == 0) {
      fail(ErrorKind::undecided,
           "Schur–Cohn recursion is singular (root on or symmetric about the unit circle); "
           "remove gcd(p, p*) first");
    }
    product_sign *= delta.sign();
    if (product_sign < 0) ++inside;
    const Rational scale = abs(delta);
    for (auto& v : g) v /= scale;
    f = std::move(g);
  }
  return inside;
}

double EigenvalueEstimate::midpoint() const {
  return static_cast<double>((lower + upper) / 2);
}

bool EigenvalueEstimate::contains(double x) const {
  return static_cast<double>(lower) <= x && x <= static_cast<double>(upper);
}

EigenvalueEstimate dominant_eigenvalue(const CountMatrix& m, const Rational& tol) {
  if (!is_primitive(m)) fail(ErrorKind::unsupported, "dominant eigenvalue requested for a non-primitive matrix");
  if (tol < 0) fail(ErrorKind::argument, "tolerance must be non-negative");
  const RationalPolynomial q = squarefree_part(to_rational(char_poly(m)));
  const RowSums sums = row_sums(m);
  return bisect_largest_root(q, Rational(sums.min - 1), Rational(sums.max), tol);
}

namespace {

RationalPolynomial scaled(const RationalPolynomial& p, const Rational& r) {
  std::vector<Rational> c = p.coefficients();
  Rational power(1);
  for (auto& v : c) {
    v *= power;
    power *= r;
  }
  return RationalPolynomial(std::move(c));
}

std::optional<std::size_t> try_inside(const RationalPolynomial& p) {
  try {
    return schur_cohn_inside(p);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::undecided) throw;
    return std::nullopt;
  }
}

// Roots strictly inside |z| = 1 for p without roots on the circle. Units such as
// x^2 - x - 1 make the plain recursion singular, so count inside radii 1 ± ε and
// shrink ε until both counts exist and agree (the annulus is then root-free).
std::size_t inside_unit_circle(const RationalPolynomial& p) {
  if (auto direct = try_inside(p)) return *direct;
  for (int k = 2; k < 200; ++k) {
    const Rational eps(1, (BigInt(1) << k) + 1);
    const auto below = try_inside(scaled(p, 1 - eps));
    const auto above = try_inside(scaled(p, 1 + eps));
    if (below && above && *below == *above) return *below;
  }
  fail(ErrorKind::undecided, "could not separate roots from the unit circle");
}

}  // namespace

bool is_pisot(const CountMatrix& m, bool strict) {
  RationalPolynomial p = to_rational(char_poly(m));
  while (p.degree() > 0 && p.coeff(0) == 0) p = monomial_shift_down(p);  // zero roots are inside
  if (p.degree() <= 0) return false;                                      // every eigenvalue is 0
  if (p(Rational(1)) == 0 || p(Rational(-1)) == 0) return false;          // root on the circle

  // Split off the part sharing roots with its reversal: roots on the circle or in
  // pairs {z, 1/z̄}. What remains is regular for Schur–Cohn.
  RationalPolynomial regular = p;
  RationalPolynomial symmetric(std::vector<Rational>{Rational(1)});
  for (;;) {
    const RationalPolynomial g = gcd(regular, regular.reversed(static_cast<std::size_t>(regular.degree())));
    if (g.degree() <= 0) break;
    regular = divide(regular, g).first;
    symmetric = symmetric * g;
  }
  const std::size_t outside_regular = static_cast<std::size_t>(regular.degree()) - inside_unit_circle(regular);

  bool literal = false;
  if (symmetric.degree() == 0) {
    literal = outside_regular == 1;
  } else if (symmetric.degree() == 2) {
    // Palindromic quadratic: a real pair {z, 1/z} (one root outside) iff the discriminant is positive;
    // otherwise a conjugate pair on the circle.
    const Rational disc = symmetric.coeff(1) * symmetric.coeff(1) - 4 * symmetric.coeff(0) * symmetric.coeff(2);
    literal = disc > 0 && outside_regular == 0;
  }
  if (!literal || !strict) return literal;

  const EigenvalueEstimate e = dominant_eigenvalue(m, Rational(1, 1000));
  const BigInt candidate = boost::multiprecision::numerator(e.upper + Rational(1, 2)) /
                           boost::multiprecision::denominator(e.upper + Rational(1, 2));
  const Rational c(candidate);
  const bool integral = p(c) == 0 && count_real_roots_above(p, c) == 0;
  return !integral;
}

EigenvalueMatch same_dominant_eigenvalue(const CountMatrix& a, const CountMatrix& b, const Rational& tol) {
  const RationalPolynomial pa = squarefree_part(to_rational(char_poly(a)));
  const RationalPolynomial pb = squarefree_part(to_rational(char_poly(b)));
  EigenvalueEstimate ea = dominant_eigenvalue(a, tol);
  const EigenvalueEstimate eb = dominant_eigenvalue(b, tol);

  EigenvalueMatch result;
  result.equal = !(ea.upper < eb.lower || eb.upper < ea.lower);
  if (!result.equal) {
    result.certified = true;
    return result;
  }
  // Exact check: λ_a is a root of p_b and p_b has nothing above it.
  if (ea.exact()) {
    result.equal = pb(ea.upper) == 0 && count_real_roots_above(pb, ea.upper) == 0;
    result.certified = true;
    return result;
  }
  Rational width = tol;
  for (int round = 0; round < 64; ++round) {
    if (count_real_roots(pa, ea.lower, ea.upper) == 1 && count_real_roots(pb, ea.lower, ea.upper) <= 1) {
      const RationalPolynomial common = gcd(pa, pb);
      const bool shared = count_real_roots(common, ea.lower, ea.upper) == 1;
      result.equal = shared && count_real_roots_above(pb, ea.upper) == 0;
      result.certified = true;
      return result;
    }
    width /= 1024;
    ea = bisect_largest_root(pa, ea.lower, ea.upper, width);
    if (ea.exact()) return same_dominant_eigenvalue(a, b, width);
  }
  return result;  // brackets overlap but could not be separated further
}

std::string format_polynomial(const IntegerPolynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    BigInt c = p.coeff(static_cast<std::size_t>(i));
    if (c == 0) continue;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    if (c != 1 || i == 0) out << c;
    if (i >= 1) out << "x";
    if (i >= 2) out << "^" << i;
    first = false;
  }
  return out.str();
}

std::string format_estimate(const EigenvalueEstimate& e) {
  if (e.exact()) {
    const Rational v = e.upper;
    if (boost::multiprecision::denominator(v) == 1) return boost::multiprecision::numerator(v).str();
    return to_decimal(v, 12);
  }
  std::ostringstream out;
  out << to_decimal((e.lower + e.upper) / 2, 12) << " ± " << std::setprecision(2) << std::scientific
      << static_cast<double>(e.width() / 2);
  return out.str();
}

}  // namespace subdyn
