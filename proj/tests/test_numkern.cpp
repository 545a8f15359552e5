#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "copcone/error.hpp"
#include "copcone/linalg.hpp"
#include "copcone/lp.hpp"
#include "copcone/matrix.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace copcone;
using testsupport::dense;
using testsupport::sym;

TEST_CASE("tolerance threshold scales with the input") {
  Tolerance t;
  CHECK(t.threshold(0.0) == doctest::Approx(1e-9));
  CHECK(t.threshold(1000.0) == doctest::Approx(1e-9 + 1e-6));
}

TEST_CASE("SymMat stores one triangle") {
  SymMat a(3);
  a.set(0, 2, 5.0);
  CHECK(a(2, 0) == 5.0);
  CHECK(a.order() == 3);
  CHECK_THROWS_AS(SymMat(0), Error);
  CHECK_THROWS_AS(a.set(1, 1, std::nan("")), Error);
}

TEST_CASE("from_dense rejects asymmetric input") {
  const std::vector<double> bad{1, 2, 2.1, 1};
  try {
    SymMat::from_dense(2, bad);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSymmetric);
  }
  const std::vector<double> near{1, 2, 2 + 1e-13, 1};
  CHECK(SymMat::from_dense(2, near)(0, 1) == doctest::Approx(2.0));
}

TEST_CASE("eig_sym small examples") {
  const auto id = eig_sym(SymMat::identity(3));
  for (double v : id.values) CHECK(v == doctest::Approx(1.0));

  const auto j2 = eig_sym(SymMat::ones(2));
  CHECK(j2.values[0] == doctest::Approx(2.0));
  CHECK(std::abs(j2.values[1]) < 1e-14);

  // Circulant with first row (1,-1,1,1,-1): lambda_j = 1 - 2cos(2 pi j/5) + 2cos(4 pi j/5).
  std::vector<double> expected;
  for (int j = 0; j < 5; ++j) {
    const double t = 2.0 * std::numbers::pi * j / 5.0;
    expected.push_back(1.0 - 2.0 * std::cos(t) + 2.0 * std::cos(2.0 * t));
  }
  std::sort(expected.begin(), expected.end(), std::greater<>());
  const auto h = eig_sym(horn());
  for (int j = 0; j < 5; ++j) CHECK(h.values[j] == doctest::Approx(expected[j]).epsilon(1e-12));
  CHECK(h.values[0] == doctest::Approx(3.236).epsilon(1e-3));
  CHECK(h.values[4] == doctest::Approx(-1.236).epsilon(1e-3));
}

TEST_CASE("eig_sym reconstruction and orthogonality on random matrices") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng() % 8;
    const auto a = oracle::random_symmetric(rng, n, -3.0, 3.0);
    const auto e = eig_sym(sym(a));
    oracle::Dense rec = oracle::zeros(n, n), qtq = oracle::zeros(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          rec[i][j] += e.vectors(i, k) * e.values[k] * e.vectors(j, k);
          qtq[i][j] += e.vectors(k, i) * e.vectors(k, j);
        }
    REQUIRE(oracle::max_abs_diff(rec, a) <= 1e-10 * oracle::max_abs(a));
    for (std::size_t i = 0; i < n; ++i) qtq[i][i] -= 1.0;
    REQUIRE(oracle::max_abs(qtq) <= 1e-10);
    for (std::size_t k = 1; k < n; ++k) REQUIRE(e.values[k - 1] >= e.values[k]);
  }
}

TEST_CASE("num_rank examples") {
  CHECK(num_rank(horn()) == 5);
  CHECK(num_rank(SymMat::ones(5)) == 1);
  CHECK(num_rank(pad_zero(SymMat::from_dense(2, std::vector<double>{0, 1, 1, 0}), 3)) == 2);
  CHECK(num_rank(e_pair(3, 0, 1)) == 2);
}

TEST_CASE("num_rank matches elimination rank of the factor") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng() % 8, r = 1 + rng() % n, p = r + rng() % 3;
    // V = B C with B n x r and C r x p, so rank V <= r.
    Matrix b(n, r), c(r, p);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < r; ++j) b(i, j) = u(rng);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < p; ++j) c(i, j) = u(rng);
    const Matrix v = b * c;
    REQUIRE(num_rank(SymMat::gram(v)) == oracle::rank(dense(v)));
  }
}

TEST_CASE("psd_check examples") {
  const auto h = psd_check(horn());
  CHECK_FALSE(h.psd);
  CHECK(h.min_eigenvalue == doctest::Approx(-1.2360679775));
  CHECK(horn().quadratic(h.witness) < 0.0);
  CHECK(max_abs(h.witness) == doctest::Approx(1.0));

  CHECK(psd_check(SymMat::identity(4)).psd);

  const auto m = psd_check(sym(2, {0, -1, -1, 0}));
  CHECK_FALSE(m.psd);
  CHECK(m.witness[0] == doctest::Approx(1.0));
  CHECK(m.witness[1] == doctest::Approx(1.0));
}

TEST_CASE("psd_check agrees with pivoted elimination") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g;
  int compared = 0;
  while (compared < 500) {
    const std::size_t n = 1 + rng() % 6;
    oracle::Dense a = oracle::random_symmetric(rng, n);
    // Shift toward a mix of definite and indefinite cases.
    const double s = g(rng);
    for (std::size_t i = 0; i < n; ++i) a[i][i] += s * 1.5;
    const SymMat m = sym(a);
    const auto e = eig_sym(m);
    double gap = 1e300;
    for (double v : e.values) gap = std::min(gap, std::abs(v));
    if (gap <= 1e-4) continue;
    ++compared;
    REQUIRE(psd_check(m).psd == oracle::psd(a));
  }
}

TEST_CASE("svd reconstructs and orders singular values") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 6, m = n + rng() % 3;
    Matrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = u(rng);
    if (t % 5 == 0 && n > 1) a.set_column(n - 1, a.column(0));
    const Svd s = svd(a);
    Matrix sig(n, n);
    for (std::size_t i = 0; i < n; ++i) sig(i, i) = s.s[i];
    REQUIRE(oracle::max_abs_diff(dense(s.u * sig * s.w.transpose()), dense(a)) <= 1e-12);
    const Matrix utu = s.u.transpose() * s.u;
    REQUIRE(oracle::max_abs_diff(dense(utu), dense(Matrix::identity(n))) <= 1e-12);
    for (std::size_t k = 1; k < n; ++k) REQUIRE(s.s[k - 1] >= s.s[k]);
  }
}

TEST_CASE("pivoted Cholesky of a PSD matrix") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 7, r = 1 + rng() % n;
    Matrix v(n, r);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < r; ++j) v(i, j) = u(rng);
    const SymMat a = SymMat::gram(v);
    const auto c = pivoted_cholesky(a);
    REQUIRE(c.l.cols() == oracle::rank(dense(v)));
    REQUIRE(oracle::max_abs_diff(oracle::gram(dense(c.l)), dense(a)) <= 1e-9 * (1 + a.max_abs()));
  }
  // Indefinite input: the stopped factorization cannot reproduce it.
  const auto h = pivoted_cholesky(horn());
  CHECK(oracle::max_abs_diff(oracle::gram(dense(h.l)), dense(horn())) > 0.5);
}

TEST_CASE("orthonormal complement spans the rest") {
  Matrix q(3, 1);
  q(0, 0) = q(1, 0) = 1.0 / std::sqrt(2.0);
  const Matrix c = orthonormal_complement(q);
  REQUIRE(c.cols() == 2);
  const Matrix all = Matrix::from_columns(3, {q.column(0), c.column(0), c.column(1)});
  CHECK(oracle::max_abs_diff(dense(all.transpose() * all), dense(Matrix::identity(3))) < 1e-12);
}

TEST_CASE("lp_feasible examples") {
  LpProblem p;
  p.a = Matrix(1, 2, 1.0);
  p.sense = {Sense::Equal};
  p.b = {1.0};
  const auto r = lp_feasible(p);
  REQUIRE(r.feasible());
  CHECK(r.x[0] + r.x[1] == doctest::Approx(1.0));
  CHECK(r.x[0] >= 0.0);
  CHECK(r.x[1] >= 0.0);

  LpProblem q;
  q.a = Matrix(1, 1, 1.0);
  q.sense = {Sense::Equal};
  q.b = {-1.0};
  CHECK_FALSE(lp_feasible(q).feasible());

  // (1,1,0,0,0,0) in cone{e1+e2, e2+e3, e6}.
  Vec g1(6, 0.0), g2(6, 0.0), e6(6, 0.0), y(6, 0.0);
  g1[0] = g1[1] = 1.0;
  g2[1] = g2[2] = 1.0;
  e6[5] = 1.0;
  y[0] = y[1] = 1.0;
  const auto c = conic_combination({g1, g2, e6}, y);
  REQUIRE(c.has_value());
  CHECK((*c)[0] == doctest::Approx(1.0));
  CHECK((*c)[1] == doctest::Approx(0.0));
  CHECK((*c)[2] == doctest::Approx(0.0));
  y[3] = 1.0;
  CHECK_FALSE(conic_combination({g1, g2, e6}, y).has_value());
}

TEST_CASE("lp_feasible with inequalities and objective") {
  // min x1 + 2 x2 s.t. x1 + x2 >= 2, x1 <= 1.5
  LpProblem p;
  p.a = Matrix(2, 2);
  p.a(0, 0) = p.a(0, 1) = 1.0;
  p.a(1, 0) = 1.0;
  p.sense = {Sense::GreaterEqual, Sense::LessEqual};
  p.b = {2.0, 1.5};
  p.minimize = Vec{1.0, 2.0};
  const auto r = lp_feasible(p);
  REQUIRE(r.feasible());
  CHECK(r.objective == doctest::Approx(2.5));
  CHECK(r.x[0] == doctest::Approx(1.5));

  LpProblem big;
  big.a = Matrix(1, kLpMaxVariables + 1, 1.0);
  big.sense = {Sense::Equal};
  big.b = {1.0};
  CHECK_THROWS_AS(lp_feasible(big), Error);
}

TEST_CASE("lp_feasible random feasibility agrees with a planted point") {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    const std::size_t m = 1 + rng() % 5, n = 1 + rng() % 8;
    LpProblem p;
    p.a = Matrix(m, n);
    Vec x0(n);
    for (double& v : x0) v = pos(rng);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) p.a(i, j) = u(rng);
    p.b = p.a * x0;
    p.sense.assign(m, Sense::Equal);
    const auto r = lp_feasible(p);
    REQUIRE(r.feasible());
    const Vec ax = p.a * r.x;
    for (std::size_t i = 0; i < m; ++i) REQUIRE(ax[i] == doctest::Approx(p.b[i]).epsilon(1e-8));
    for (double v : r.x) REQUIRE(v >= -1e-12);
  }
}

TEST_CASE("svd of a rank-deficient square matrix converges") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  Matrix x(15, 6), y(15, 6);
  for (std::size_t i = 0; i < 15; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      x(i, j) = g(rng);
      y(i, j) = g(rng);
    }
  Matrix a(15, 15);
  for (std::size_t i = 0; i < 15; ++i)
    for (std::size_t j = 0; j < 15; ++j)
      for (std::size_t k = 0; k < 6; ++k) a(i, j) += x(i, k) * y(j, k);
  const Svd s = svd(a);
  std::size_t big = 0;
  for (double v : s.s) big += v > 1e-10 * s.s[0];
  CHECK(big == 6);
  double err = 0.0;
  for (std::size_t i = 0; i < 15; ++i)
    for (std::size_t j = 0; j < 15; ++j) {
      double r = 0.0;
      for (std::size_t k = 0; k < 15; ++k) r += s.u(i, k) * s.s[k] * s.w(j, k);
      err = std::max(err, std::abs(r - a(i, j)));
    }
  CHECK(err <= 1e-12 * s.s[0]);
}
