#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <complex>
#include <random>

#include "subdyn/error.hpp"
#include "subdyn/spectra.hpp"
#include "support.hpp"

using namespace subdyn;
using namespace subdyn::testing;

namespace {

Eigen::VectorXcd numeric_eigenvalues(const CountMatrix& m) {
  return Eigen::EigenSolver<Eigen::MatrixXd>(m.cast<double>()).eigenvalues();
}

CountMatrix random_matrix(std::mt19937& rng, int k) {
  std::uniform_int_distribution<int> entry(0, 3);
  CountMatrix m(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) m(i, j) = entry(rng);
  }
  return m;
}

}  // namespace

TEST(Spectra, CharPolyVanishesAtNumericEigenvalues) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const CountMatrix m = random_matrix(rng, 2 + trial % 3);
    const IntegerPolynomial p = char_poly(m);
    ASSERT_EQ(p.degree(), m.rows());
    for (const auto& z : numeric_eigenvalues(m)) {
      std::complex<double> value = 0;
      for (int k = p.degree(); k >= 0; --k) value = value * z + static_cast<double>(p.coeff(static_cast<std::size_t>(k)));
      EXPECT_LT(std::abs(value), 1e-6 * (1 + std::pow(std::abs(z), p.degree())));
    }
  }
}

TEST(Spectra, DominantEigenvalueBracketsNumericRoot) {
  std::mt19937 rng(11);
  int checked = 0;
  while (checked < 30) {
    const CountMatrix m = random_matrix(rng, 2 + checked % 3);
    if (!is_primitive(m)) continue;
    ++checked;
    double numeric = 0;
    for (const auto& z : numeric_eigenvalues(m)) numeric = std::max(numeric, std::abs(z));
    const EigenvalueEstimate e = dominant_eigenvalue(m, Rational(1, 1000000));
    EXPECT_LE(static_cast<double>(e.lower), numeric + 1e-9);
    EXPECT_GE(static_cast<double>(e.upper), numeric - 1e-9);
    EXPECT_LE(static_cast<double>(e.upper - e.lower), 1e-6);
  }
}

TEST(Spectra, IntegerEigenvalueIsExact) {
  const EigenvalueEstimate e = dominant_eigenvalue(associated_matrix(thue_morse()->substitution()));
  EXPECT_TRUE(e.exact());
  EXPECT_EQ(e.lower, Rational(2));
}

TEST(Spectra, SturmCountsMatchNumericRoots) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coeff(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> c(5);
    for (auto& v : c) v = coeff(rng);
    c.back() = 1;
    const RationalPolynomial p(c);
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(4, 4);
    for (int i = 1; i < 4; ++i) companion(i, i - 1) = 1;
    for (int i = 0; i < 4; ++i) companion(i, 3) = -static_cast<double>(c[static_cast<std::size_t>(i)]);
    std::size_t expected = 0;
    bool near_edge = false;
    const Eigen::VectorXcd roots = Eigen::EigenSolver<Eigen::MatrixXd>(companion).eigenvalues();
    for (const auto& z : roots) {
      if (std::abs(z.imag()) > 1e-7) continue;
      if (std::abs(z.real() + 1) < 1e-6 || std::abs(z.real() - 2) < 1e-6) near_edge = true;
      if (z.real() > -1 && z.real() <= 2) ++expected;
    }
    if (near_edge) continue;
    const RationalPolynomial q = squarefree_part(p);
    // The numeric roots carry multiplicity; compare distinct counts only when squarefree.
    if (q.degree() != p.degree()) continue;
    EXPECT_EQ(count_real_roots(q, Rational(-1), Rational(2)), expected) << trial;
  }
}

TEST(Spectra, PisotAgainstNumericModuli) {
  std::mt19937 rng(5);
  int checked = 0;
  while (checked < 40) {
    const CountMatrix m = random_matrix(rng, 2 + checked % 3);
    if (!is_primitive(m)) continue;
    ++checked;
    auto ev = numeric_eigenvalues(m);
    std::vector<double> moduli;
    for (const auto& z : ev) moduli.push_back(std::abs(z));
    std::sort(moduli.rbegin(), moduli.rend());
    bool ambiguous = false;
    for (std::size_t i = 1; i < moduli.size(); ++i) ambiguous = ambiguous || std::abs(moduli[i] - 1) < 1e-6;
    if (ambiguous) continue;
    const bool expected = moduli[0] > 1 && std::all_of(moduli.begin() + 1, moduli.end(), [](double x) { return x < 1; });
    EXPECT_EQ(is_pisot(m), expected) << m;
  }
}

TEST(Spectra, PisotExamples) {
  EXPECT_TRUE(is_pisot(associated_matrix(fibonacci()->substitution())));
  EXPECT_TRUE(is_pisot(associated_matrix(tribonacci()->substitution())));
  EXPECT_TRUE(is_pisot(associated_matrix(thue_morse()->substitution())));
  EXPECT_FALSE(is_pisot(associated_matrix(thue_morse()->substitution()), true));
  EXPECT_FALSE(is_pisot(associated_matrix(unbalanced()->substitution())));
}

TEST(Spectra, SameDominantEigenvalue) {
  const CountMatrix fib = associated_matrix(fibonacci()->substitution());
  const CountMatrix fib2 = associated_matrix(subst("a -> ba\nb -> a\n"));
  const CountMatrix tm = associated_matrix(thue_morse()->substitution());
  EXPECT_TRUE(same_dominant_eigenvalue(fib, fib2).equal);
  EXPECT_FALSE(same_dominant_eigenvalue(fib, tm).equal);
}

TEST(Spectra, FormatPolynomial) {
  EXPECT_EQ(format_polynomial(char_poly(associated_matrix(fibonacci()->substitution()))), "x^2 - x - 1");
}
