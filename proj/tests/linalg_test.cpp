#include "eigengame/linalg.hpp"

#include <cmath>

#include <doctest.h>

#include "eigengame/errors.hpp"
#include "eigengame/rng.hpp"
#include "test_util.hpp"

using namespace eigengame;
using eigengame::test::random_unit;

namespace {

Mat from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  Mat m(rows.size(), rows.begin()->size());
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (double x : row) m(r, c++) = x;
    ++r;
  }
  return m;
}

}  // namespace

TEST_CASE("jacobi_eigh identity") {
  const SymEig eig = jacobi_eigh(Mat::identity(3));
  for (double l : eig.eigenvalues) CHECK(l == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("jacobi_eigh diagonal") {
  Mat s(2, 2);
  s(0, 0) = 5.0;
  s(1, 1) = 2.0;
  const SymEig eig = jacobi_eigh(s);
  CHECK(eig.eigenvalues[0] == doctest::Approx(5.0));
  CHECK(eig.eigenvalues[1] == doctest::Approx(2.0));
  CHECK(eig.eigenvectors(0, 0) == doctest::Approx(1.0));
  CHECK(eig.eigenvectors(1, 1) == doctest::Approx(1.0));
  CHECK(std::abs(eig.eigenvectors(1, 0)) < 1e-14);
}

TEST_CASE("jacobi_eigh 2x2 hand solution") {
  const SymEig eig = jacobi_eigh(from_rows({{2, 1}, {1, 1}}));
  CHECK(std::abs(eig.eigenvalues[0] - 2.618033988749895) < 1e-12);
  CHECK(std::abs(eig.eigenvalues[1] - 0.3819660112501051) < 1e-12);
}

TEST_CASE("jacobi_eigh input validation") {
  CHECK_THROWS_AS(jacobi_eigh(Mat(2, 3)), ShapeError);
  Mat asym(2, 2);
  asym(0, 1) = 1.0;
  asym(1, 0) = 0.5;
  CHECK_THROWS_AS(jacobi_eigh(asym), ShapeError);
}

TEST_CASE("jacobi_eigh recovers a planted spectrum") {
  Philox rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + rng.next_index(9);
    Vec lambda(d);
    for (std::size_t i = 0; i < d; ++i)
      lambda[i] = 2.0 - static_cast<double>(i) * (1.5 / static_cast<double>(d));
    const Mat q = random_orthogonal(d, rng.next_u64());
    Mat ql(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) ql(r, c) = q(r, c) * lambda[c];
    const Mat s = matmul(ql, q.transposed());

    const SymEig eig = jacobi_eigh(s);
    for (std::size_t i = 0; i < d; ++i) {
      CHECK(std::abs(eig.eigenvalues[i] - lambda[i]) < 1e-8);
      // columns match +-q columns (distinct eigenvalues)
      const double cosang =
          std::abs(dot(eig.eigenvectors.col(i), q.col(i)));
      CHECK(std::acos(std::min(1.0, cosang)) < 1e-6);
    }
    // decomposition invariants
    for (std::size_t i = 0; i + 1 < d; ++i)
      CHECK(eig.eigenvalues[i] >= eig.eigenvalues[i + 1]);
    for (std::size_t i = 0; i < d; ++i) {
      CHECK(std::abs(norm2(eig.eigenvectors.col(i)) - 1.0) < 1e-12);
      for (std::size_t j = i + 1; j < d; ++j)
        CHECK(std::abs(dot(eig.eigenvectors.col(i), eig.eigenvectors.col(j))) <
              1e-10);
    }
    // reconstruction
    Mat recon(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        double acc = 0.0;
        for (std::size_t m = 0; m < d; ++m)
          acc += eig.eigenvectors(r, m) * eig.eigenvalues[m] *
                 eig.eigenvectors(c, m);
        recon(r, c) = acc;
      }
    CHECK(max_abs_diff(recon, s) <= 1e-8 * frob_norm(s));
  }
}

TEST_CASE("jacobi_eigh is deterministic") {
  Philox rng(3);
  const Mat s = eigengame::test::random_psd(6, rng);
  const SymEig a = jacobi_eigh(s);
  const SymEig b = jacobi_eigh(s);
  CHECK(a.eigenvectors == b.eigenvectors);
  CHECK(a.eigenvalues == b.eigenvalues);
}

TEST_CASE("tangent_project examples") {
  CHECK(tangent_project({1, 0}, {1, 1}) == Vec{0, 1});
  CHECK(tangent_project({0, 1}, {0, 3}) == Vec{0, 0});
  const Vec r = tangent_project({1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}, {1, 0});
  CHECK(r[0] == doctest::Approx(0.5));
  CHECK(r[1] == doctest::Approx(-0.5));
  CHECK_THROWS_AS(tangent_project({1, 1}, {1, 0}), DomainError);
}

TEST_CASE("tangent_project output is orthogonal and idempotent") {
  Philox rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 2 + rng.next_index(7);
    const Vec v = random_unit(d, rng);
    Vec y(d);
    for (double& x : y) x = 3.0 * rng.next_normal();
    const Vec p = tangent_project(v, y);
    CHECK(std::abs(dot(p, v)) <= 1e-10 * std::max(1.0, norm2(y)));
    const Vec pp = tangent_project(v, p);
    CHECK(eigengame::test::max_abs_diff_vec(p, pp) < 1e-12);
  }
}

TEST_CASE("retract examples") {
  CHECK(retract({1, 0}, {0, 0}) == Vec{1, 0});
  CHECK(retract({0, 1}, {0, 1}) == Vec{0, 1});
  const Vec r = retract({1, 0}, {0, 1});
  CHECK(r[0] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(r[1] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK_THROWS_AS(retract({1, 0}, {-1, 0}), DegenerateStepError);
  CHECK_THROWS_AS(retract({2, 0}, {0, 1}), DomainError);
}

TEST_CASE("retract after tangent_project keeps unit norm") {
  Philox rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 2 + rng.next_index(7);
    const Vec v = random_unit(d, rng);
    Vec y(d);
    for (double& x : y) x = 2.0 * rng.next_normal();
    const Vec out = retract(v, tangent_project(v, y));
    CHECK(std::abs(norm2(out) - 1.0) < 1e-12);
  }
}

TEST_CASE("orthonormalize examples") {
  CHECK(orthonormalize(Mat::identity(3)) == Mat::identity(3));

  Mat single(2, 1);
  single(0, 0) = 3.0;
  single(1, 0) = 4.0;
  const Mat q1 = orthonormalize(single);
  CHECK(q1(0, 0) == doctest::Approx(0.6));
  CHECK(q1(1, 0) == doctest::Approx(0.8));

  const Mat q2 = orthonormalize(from_rows({{1, 1}, {0, 1}}));
  CHECK(q2(0, 0) == doctest::Approx(1.0));
  CHECK(q2(1, 0) == doctest::Approx(0.0));
  CHECK(std::abs(q2(0, 1)) < 1e-12);
  CHECK(q2(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("orthonormalize reports the numerical rank") {
  Mat dep(3, 2);
  dep(0, 0) = 1.0;
  dep(1, 0) = 2.0;
  dep(0, 1) = 2.0;
  dep(1, 1) = 4.0;  // second column is 2x the first
  try {
    orthonormalize(dep);
    FAIL("expected RankError");
  } catch (const RankError& e) {
    CHECK(e.numerical_rank == 1);
  }
}

TEST_CASE("random_orthogonal") {
  const Mat q1 = random_orthogonal(1, 42);
  CHECK(std::abs(std::abs(q1(0, 0)) - 1.0) < 1e-15);

  CHECK(random_orthogonal(5, 9) == random_orthogonal(5, 9));
  CHECK(random_orthogonal(5, 9) != random_orthogonal(5, 10));

  const Mat q = random_orthogonal(8, 123);
  const Mat gram = matmul_tn(q, q);
  CHECK(max_abs_diff(gram, Mat::identity(8)) < 1e-10);
}
