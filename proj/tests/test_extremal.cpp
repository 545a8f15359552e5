#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "copcone/cones.hpp"
#include "copcone/error.hpp"
#include "copcone/extremal.hpp"
#include "copcone/factor.hpp"
#include "copcone/linalg.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace copcone;
using testsupport::dense;
using testsupport::sym;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

Vec random_positive(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.2, 3.0);
  Vec d(n);
  for (double& x : d) x = u(rng);
  return d;
}

SymMat cycle_sum() {
  Matrix g(5, 5);
  for (std::size_t i = 0; i < 5; ++i) {
    g(i, i) = 1.0;
    g((i + 1) % 5, i) = 1.0;
  }
  return SymMat::gram(g);
}

double min_eig(const SymMat& a) {
  const auto e = eig_sym(a);
  return *std::min_element(e.values.begin(), e.values.end());
}

// M = sum w_k z_k z_k^T over the boundary zeros of A.
SymMat from_zeros(std::mt19937_64& rng, const SymMat& a) {
  std::uniform_real_distribution<double> u(0.5, 2.0);
  SymMat m(a.order());
  for (const auto& z : copositive_boundary_zeros(a)) m += u(rng) * outer(z);
  return m;
}

}  // namespace

TEST_CASE("apply_orbit matches the plain formula") {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 20; ++t) {
    const OrbitWitness w{random_positive(rng, 5), testsupport::random_perm(rng, 5)};
    const auto ref = oracle::orbit(oracle::horn(), w.d, w.perm);
    CHECK(oracle::max_abs_diff(dense(apply_orbit(horn(), w)), ref) <= 1e-15);
  }
}

TEST_CASE("orth_column_check") {
  const auto r = orth_column_check(cycle_sum(), horn());
  CHECK(r.guard_ok);
  CHECK(r.status == CheckStatus::Pass);
  CHECK(r.defect <= 1e-14);
  // Plain multiplication: (MA)_ii.
  const auto m = dense(cycle_sum()), a = oracle::horn();
  for (std::size_t i = 0; i < 5; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < 5; ++k) s += m[i][k] * a[k][i];
    CHECK(s == 0.0);
  }

  const auto z = orth_column_check(SymMat::identity(4), SymMat(4));
  CHECK(z.status == CheckStatus::Pass);
  CHECK(z.defect == 0.0);

  const auto g = orth_column_check(SymMat::ones(2), SymMat::identity(2));
  CHECK_FALSE(g.guard_ok);
  CHECK(g.status == CheckStatus::GuardFailed);
  CHECK(g.inner == 2.0);
}

TEST_CASE("orth_nullspace_check") {
  const SymMat m = outer(Vec{1, 1, 1});
  const SymMat a = outer(Vec{1, -1, 0});
  const NonnegFactor x(Matrix(3, 1, 1.0));
  const auto r = orth_nullspace_check(m, a, x, 0);
  CHECK(r.status == CheckStatus::Pass);
  CHECK(r.value == 0.0);

  const NonnegFactor id(Matrix::identity(3));
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(orth_nullspace_check(SymMat::identity(3), SymMat(3), id, i).status == CheckStatus::Skip);

  const Vec y{1, 2, 1, 0, 0};
  const NonnegFactor yf = NonnegFactor::from_columns(5, {y});
  CHECK(orth_nullspace_check(outer(y), horn(), yf, 1).status == CheckStatus::Pass);
  CHECK(orth_nullspace_check(outer(y), horn(), yf, 3).status == CheckStatus::Skip);
  // H y vanishes on the support of y.
  const Vec hy = horn().apply(y);
  CHECK(hy[0] == 0.0);
  CHECK(hy[1] == 0.0);
  CHECK(hy[2] == 0.0);

  CHECK(orth_nullspace_check(SymMat::ones(2), SymMat::identity(2), NonnegFactor(Matrix(2, 1, 1.0)), 0).status ==
        CheckStatus::GuardFailed);
}

TEST_CASE("anti_dd_check") {
  const auto r = anti_dd_check(cycle_sum(), horn());
  CHECK(r.guard_ok);
  CHECK(r.all_pass);
  CHECK(max_abs_diff(r.scaled, 2.0 * horn()) <= 1e-14);
  CHECK(r.rows == std::vector<bool>(5, true));

  CHECK(anti_dd_check(SymMat::identity(3), SymMat(3)).all_pass);

  const SymMat ij = SymMat::identity(3) + SymMat::ones(3);
  CHECK_FALSE(anti_dd_check(ij, horn().principal(std::vector<std::size_t>{0, 1, 2})).guard_ok);

  CHECK(code_of([] { anti_dd_check(pad_zero(SymMat::identity(2), 3), SymMat(3)); }) == ErrorCode::ZeroRow);
}

TEST_CASE("zero_diag_reduce examples") {
  const auto h = zero_diag_reduce(pad_zero(horn(), 6));
  CHECK(h.zero == std::vector<std::size_t>{5});
  CHECK(h.structure_ok);
  REQUIRE(h.s.has_value());
  CHECK(*h.s == horn());

  const auto id = zero_diag_reduce(SymMat::identity(3));
  CHECK(id.zero.empty());
  CHECK(*id.s == SymMat::identity(3));

  const SymMat bad = sym(2, {0, 1, 1, 1});
  const auto b = zero_diag_reduce(bad, {}, true);
  CHECK_FALSE(b.structure_ok);
  CHECK(b.violates_zeroext);
  CHECK_FALSE(zero_diag_reduce(bad).violates_zeroext);
}

TEST_CASE("zero_diag_reduce recovers S from S padded with zeros") {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 100; ++t) {
    const std::size_t k = 1 + rng() % 6, n = k + 1 + rng() % 4;
    oracle::Dense d = oracle::random_symmetric(rng, k);
    for (std::size_t i = 0; i < k; ++i) d[i][i] = 0.1 + std::abs(d[i][i]);
    const SymMat s = sym(d);
    const auto r = zero_diag_reduce(pad_zero(s, n));
    REQUIRE(r.structure_ok);
    REQUIRE(r.s.has_value());
    REQUIRE(*r.s == s);
    REQUIRE(r.zero.size() == n - k);
  }
}

TEST_CASE("horn_orbit_recognize examples") {
  const auto w = horn_orbit_recognize(horn());
  REQUIRE(w.has_value());
  CHECK(w->d == Vec(5, 1.0));
  CHECK(w->perm == std::vector<std::size_t>{0, 1, 2, 3, 4});

  CHECK_FALSE(horn_orbit_recognize(SymMat::ones(5)).has_value());
  CHECK_FALSE(horn_orbit_recognize(SymMat::identity(4)).has_value());
  SymMat flipped = horn();
  flipped.set(0, 2, -1.0);
  CHECK_FALSE(horn_orbit_recognize(flipped).has_value());
  SymMat zd = horn();
  zd.set(2, 2, 0.0);
  CHECK_FALSE(horn_orbit_recognize(zd).has_value());
}

TEST_CASE("Horn orbit round trip") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 100; ++t) {
    const auto d = random_positive(rng, 5);
    const auto p = testsupport::random_perm(rng, 5);
    const SymMat a = sym(oracle::orbit(oracle::horn(), d, p));
    const auto w = horn_orbit_recognize(a);
    REQUIRE(w.has_value());
    REQUIRE(std::all_of(w->d.begin(), w->d.end(), [](double x) { return x > 0.0; }));
    const auto back = oracle::orbit(oracle::horn(), w->d, w->perm);
    REQUIRE(oracle::max_abs_diff(back, dense(a)) <= 1e-9);
  }
}

TEST_CASE("random non-orbit matrices are rejected") {
  std::mt19937_64 rng(54);
  for (int t = 0; t < 100; ++t) {
    oracle::Dense d = oracle::random_symmetric(rng, 5);
    for (std::size_t i = 0; i < 5; ++i) d[i][i] = 0.1 + std::abs(d[i][i]);
    REQUIRE_FALSE(horn_orbit_recognize(sym(d)).has_value());
  }
}

TEST_CASE("nonneg_extreme_check") {
  CHECK(nonneg_extreme_check(pad_zero(e_pair(2, 0, 1), 4)));
  CHECK_FALSE(nonneg_extreme_check(SymMat::ones(2)));
  SymMat e3(4);
  e3.set(2, 2, 5.0);
  CHECK(nonneg_extreme_check(e3));
  CHECK_FALSE(nonneg_extreme_check(SymMat(3)));
  CHECK(code_of([] { nonneg_extreme_check(horn()); }) == ErrorCode::NotNonneg);
}

TEST_CASE("classify_rank12 examples") {
  SymMat e1(3);
  e1.set(0, 0, 1.0);
  const auto a = classify_rank12(e1);
  CHECK(a.tag == ExtremeTag::PsdRank1);
  CHECK(a.rank == 1);
  REQUIRE(a.root.has_value());
  CHECK(max_abs_diff(outer(*a.root), e1) <= 1e-14);

  const SymMat e24 = 3.0 * e_pair(5, 1, 3);
  const auto b = classify_rank12(e24);
  CHECK(b.tag == ExtremeTag::E12Orbit);
  CHECK(b.rank == 2);
  REQUIRE(b.witness.has_value());
  REQUIRE(b.reference.has_value());
  CHECK(max_abs_diff(apply_orbit(*b.reference, *b.witness), e24) <= 1e-12);

  const auto h = classify_rank12(horn());
  CHECK(h.tag == ExtremeTag::HornOrbit);
  CHECK(h.rank == 5);
  REQUIRE(h.witness.has_value());
  CHECK(h.witness->perm == std::vector<std::size_t>{0, 1, 2, 3, 4});

  const auto h6 = classify_rank12(pad_zero(horn(), 6));
  CHECK(h6.tag == ExtremeTag::HornOrbit);
  REQUIRE(h6.reference.has_value());
  CHECK(max_abs_diff(apply_orbit(*h6.reference, *h6.witness), pad_zero(horn(), 6)) <= 1e-12);

  CHECK(to_string(ExtremeTag::Unknown) == "UNKNOWN_EXTREME_CLASS");
  CHECK(classify_rank12(SymMat::identity(3)).tag == ExtremeTag::Unknown);
  CHECK(code_of([] { classify_rank12(-1.0 * SymMat::identity(2)); }) == ErrorCode::NotCopositive);
}

TEST_CASE("classify_rank12 agrees with the spectrum") {
  std::mt19937_64 rng(55);
  std::normal_distribution<double> g;
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 2 + rng() % 5;
    SymMat a(n);
    switch (t % 3) {
      case 0: {
        Vec x(n);
        for (double& v : x) v = g(rng);
        a = outer(x);
        break;
      }
      case 1: {
        const auto p = testsupport::random_perm(rng, n);
        a = (0.5 + std::abs(g(rng))) * e_pair(n, p[0], p[1]);
        break;
      }
      default:
        if (n < 5) continue;
        a = pad_zero(sym(oracle::orbit(oracle::horn(), random_positive(rng, 5), testsupport::random_perm(rng, 5))),
                     n);
    }
    const auto c = classify_rank12(a);
    const double lo = min_eig(a);
    if (c.tag == ExtremeTag::PsdRank1) REQUIRE(lo >= -1e-12 * a.max_abs());
    if (c.tag == ExtremeTag::E12Orbit || c.tag == ExtremeTag::HornOrbit) REQUIRE(lo < 0.0);
    REQUIRE(c.rank == oracle::rank(dense(a)));
    REQUIRE(c.tag == (t % 3 == 0 ? ExtremeTag::PsdRank1 : t % 3 == 1 ? ExtremeTag::E12Orbit : ExtremeTag::HornOrbit));
  }
}

TEST_CASE("rank3_witness_check") {
  const SymMat m = NonnegFactor(horn_generators()).product();
  // The padded Horn matrix has rank 5 and no zero-diagonal pair.
  const auto r = rank3_witness_check(m + SymMat::ones(6), pad_zero(horn(), 6));
  CHECK(r.rank_a == 5);
  CHECK_FALSE(r.e12_block);
  CHECK(r.pass);

  const auto e = rank3_witness_check(m, pad_zero(e_pair(2, 0, 1), 6));
  CHECK(e.rank_a == 2);
  CHECK(e.e12_block);
  CHECK_FALSE(e.pass);
  SymMat e1(6);
  e1.set(0, 0, 1.0);
  CHECK_FALSE(rank3_witness_check(m, e1).pass);
}

TEST_CASE("checks hold on pairs built from boundary zeros") {
  std::mt19937_64 rng(56);
  std::normal_distribution<double> g;
  int checked = 0;
  for (int t = 0; t < 80; ++t) {
    SymMat a(1);
    if (t % 2 == 0) {
      a = sym(oracle::orbit(oracle::horn(), random_positive(rng, 5), testsupport::random_perm(rng, 5)));
    } else {
      Vec x(2 + rng() % 4);
      for (double& v : x) v = g(rng);
      if (*std::min_element(x.begin(), x.end()) >= 0.0 || *std::max_element(x.begin(), x.end()) <= 0.0) continue;
      a = outer(x);
    }
    const SymMat m = from_zeros(rng, a);
    const auto diag = m.diagonal();
    if (*std::min_element(diag.begin(), diag.end()) <= 0.0) continue;
    ++checked;
    const auto oc = orth_column_check(m, a);
    REQUIRE(oc.guard_ok);
    REQUIRE(oc.defect <= 1e-10);
    const auto ad = anti_dd_check(m, a);
    REQUIRE(ad.guard_ok);
    REQUIRE(ad.all_pass);
  }
  CHECK(checked >= 60);
}
