#include "eigengame/updates.hpp"

#include <cmath>

#include <doctest.h>

#include "eigengame/errors.hpp"
#include "eigengame/linalg.hpp"
#include "eigengame/rng.hpp"
#include "eigengame/solver.hpp"
#include "test_util.hpp"

using namespace eigengame;
using namespace eigengame::test;

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

EigenState state_from_cols(std::initializer_list<Vec> cols,
                           Constraint constraint = Constraint::unit_sphere) {
  EigenState s;
  s.constraint = constraint;
  s.vectors = Mat(cols.begin()->size(), cols.size());
  std::size_t c = 0;
  for (const Vec& col : cols) s.vectors.set_col(c++, col);
  return s;
}

const Mat kSigma21 = from_rows({{2, 1}, {1, 1}});

}  // namespace

TEST_CASE("mu_update examples") {
  Mat diag31(2, 2);
  diag31(0, 0) = 3.0;
  diag31(1, 1) = 1.0;
  const EigenState basis = state_from_cols({{1, 0}, {0, 1}});

  CHECK(mu_update(CovView::from_sigma(diag31), basis, 1) == Vec{3, 0});
  CHECK(mu_update(CovView::from_sigma(diag31), basis, 2) == Vec{0, 1});
  CHECK(mu_update(CovView::from_sigma(kSigma21), basis, 2) == Vec{0, 1});
}

TEST_CASE("alpha_update examples") {
  Mat diag31(2, 2);
  diag31(0, 0) = 3.0;
  diag31(1, 1) = 1.0;
  const EigenState basis = state_from_cols({{1, 0}, {0, 1}});

  CHECK(alpha_update(CovView::from_sigma(diag31), basis, 2) == Vec{0, 1});
  const Vec a = alpha_update(CovView::from_sigma(kSigma21), basis, 2);
  CHECK(a[0] == doctest::Approx(0.0));
  CHECK(a[1] == doctest::Approx(0.5));

  Philox rng(2);
  const Mat sigma = random_psd(5, rng);
  const EigenState st = state_from_cols({random_unit(5, rng)});
  CHECK(alpha_update(CovView::from_sigma(sigma), st, 1) ==
        matvec(sigma, st.vectors.col(0)));
}

TEST_CASE("gha_update examples") {
  Mat diag31(2, 2);
  diag31(0, 0) = 3.0;
  diag31(1, 1) = 1.0;
  const EigenState basis = state_from_cols({{1, 0}, {0, 1}});

  CHECK(gha_update(CovView::from_sigma(diag31), basis, 1) == Vec{0, 0});
  const Vec g = gha_update(CovView::from_sigma(kSigma21), basis, 2);
  CHECK(std::abs(g[0]) < 1e-15);
  CHECK(std::abs(g[1]) < 1e-15);
}

TEST_CASE("gha equals mu minus the self penalty") {
  Philox rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + rng.next_index(7);
    const Mat sigma = random_psd(d, rng);
    const EigenState st =
        state_from_cols({random_unit(d, rng), random_unit(d, rng)});
    const CovView cov = CovView::from_sigma(sigma);
    for (int i = 1; i <= 2; ++i) {
      const Vec vi = st.vectors.col(i - 1);
      Vec expect = mu_update(cov, st, i);
      axpy(-dot(vi, matvec(sigma, vi)), vi, expect);
      CHECK(rel_err(gha_update(cov, st, i), expect) < 1e-12);
    }
  }
}

TEST_CASE("mu_grad_update examples") {
  const EigenState basis = state_from_cols({{1, 0}, {0, 1}});
  const Vec g = mu_grad_update(CovView::from_sigma(kSigma21), basis, 2);
  CHECK(g[0] == doctest::Approx(0.5));
  CHECK(g[1] == doctest::Approx(1.0));
  CHECK(mu_grad_update(CovView::from_sigma(kSigma21), basis, 1) ==
        matvec(kSigma21, basis.vectors.col(0)));
}

TEST_CASE("utility examples") {
  Mat diag31(2, 2);
  diag31(0, 0) = 3.0;
  diag31(1, 1) = 1.0;
  const EigenState basis = state_from_cols({{1, 0}, {0, 1}});

  CHECK(alpha_utility(CovView::from_sigma(diag31), basis, 1) == doctest::Approx(3.0));
  CHECK(alpha_utility(CovView::from_sigma(kSigma21), basis, 2) == doctest::Approx(0.5));
  CHECK(mu_utility(CovView::from_sigma(diag31), basis, 2) == doctest::Approx(1.0));
  CHECK(mu_utility(CovView::from_sigma(kSigma21), basis, 2) == doctest::Approx(1.0));
  CHECK(mu_utility(CovView::from_sigma(kSigma21), basis, 1) ==
        alpha_utility(CovView::from_sigma(kSigma21), basis, 1));
}

TEST_CASE("utilities equal the eigenvalues at the full eigenbasis") {
  Philox rng(6);
  const Mat sigma = random_psd(6, rng);
  const SymEig eig = jacobi_eigh(sigma);
  EigenState st;
  st.vectors = eig.eigenvectors;
  const CovView cov = CovView::from_sigma(sigma);
  for (int i = 1; i <= 6; ++i) {
    CHECK(alpha_utility(cov, st, i) == doctest::Approx(eig.eigenvalues[i - 1]));
    CHECK(mu_utility(cov, st, i) == doctest::Approx(eig.eigenvalues[i - 1]));
  }
}

TEST_CASE("batch views agree with the dense covariance they induce") {
  Philox rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 16, d = 5;
    const Mat x = random_gaussian(n, d, rng);
    Mat sigma = matmul_tn(x, x);
    for (std::size_t i = 0; i < d * d; ++i)
      sigma.data()[i] /= static_cast<double>(n);

    EigenState st = state_from_cols(
        {random_unit(d, rng), random_unit(d, rng), random_unit(d, rng)});
    const CovView dense = CovView::from_sigma(sigma);
    const CovView batch = CovView::from_batch(x);
    for (int i = 1; i <= 3; ++i) {
      CHECK(rel_err(mu_update(batch, st, i), mu_update(dense, st, i)) < 1e-12);
      CHECK(rel_err(alpha_update(batch, st, i), alpha_update(dense, st, i)) < 1e-12);
      CHECK(rel_err(gha_update(batch, st, i), gha_update(dense, st, i)) < 1e-12);
      CHECK(rel_err(mu_grad_update(batch, st, i), mu_grad_update(dense, st, i)) < 1e-12);
      CHECK(mu_utility(batch, st, i) ==
            doctest::Approx(mu_utility(dense, st, i)).epsilon(1e-12));
      CHECK(alpha_utility(batch, st, i) ==
            doctest::Approx(alpha_utility(dense, st, i)).epsilon(1e-12));
    }
  }
}

TEST_CASE("alpha equals mu with exact parents") {
  Philox rng(10);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + rng.next_index(15);  // up to 16
    const Mat sigma = random_psd(d, rng);
    const SymEig eig = jacobi_eigh(sigma);
    const std::size_t k = std::min<std::size_t>(8, d);

    EigenState st;
    st.vectors = Mat(d, k);
    for (std::size_t c = 0; c < k; ++c)
      st.vectors.set_col(c, eig.eigenvectors.col(c));
    const CovView cov = CovView::from_sigma(sigma);

    for (std::size_t i = 1; i <= k; ++i) {
      // player i's own vector is arbitrary; parents are exact
      st.vectors.set_col(i - 1, random_unit(d, rng));
      const Vec mu = mu_update(cov, st, static_cast<int>(i));
      const Vec alpha = alpha_update(cov, st, static_cast<int>(i));
      CHECK(rel_err(alpha, mu) <= 1e-10);
      st.vectors.set_col(i - 1, eig.eigenvectors.col(i - 1));
      ++checked;
    }
  }
  CHECK(checked >= 100);
}

TEST_CASE("shard decomposition is exact for mu and biased for alpha") {
  Philox rng(12);
  const std::size_t n = 64, d = 8, shards = 8, k = 4;
  const Mat x = random_gaussian(n, d, rng);
  EigenState st;
  st.vectors = Mat(d, k);
  for (std::size_t c = 0; c < k; ++c) st.vectors.set_col(c, random_unit(d, rng));

  const CovView full = CovView::from_batch(x);
  const std::size_t per = n / shards;
  for (std::size_t i = 1; i <= k; ++i) {
    Vec mu_mean(d, 0.0), alpha_mean(d, 0.0);
    for (std::size_t m = 0; m < shards; ++m) {
      const CovView view = CovView::from_batch_rows(x, m * per, (m + 1) * per);
      axpy(1.0 / shards, mu_update(view, st, static_cast<int>(i)), mu_mean);
      axpy(1.0 / shards, alpha_update(view, st, static_cast<int>(i)), alpha_mean);
    }
    CHECK(rel_err(mu_mean, mu_update(full, st, static_cast<int>(i))) <= 1e-10);
    if (i > 1) {
      // ratio penalties do not average across shards
      CHECK(rel_err(alpha_mean, alpha_update(full, st, static_cast<int>(i))) > 1e-6);
    }
  }
}

TEST_CASE("tangent-projected mu vanishes at the exact eigenbasis") {
  Philox rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 3 + rng.next_index(8);
    Vec lambda(d);
    for (std::size_t i = 0; i < d; ++i)
      lambda[i] = 1.0 - 0.5 * static_cast<double>(i) / static_cast<double>(d);
    const Mat q = random_orthogonal(d, rng.next_u64());
    Mat ql(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) ql(r, c) = q(r, c) * lambda[c];
    const Mat sigma = matmul(ql, q.transposed());

    const SymEig eig = jacobi_eigh(sigma);
    EigenState st;
    st.vectors = eig.eigenvectors;
    const CovView cov = CovView::from_sigma(sigma);
    for (std::size_t i = 1; i <= std::min<std::size_t>(d, 6); ++i) {
      const Vec dir = mu_update(cov, st, static_cast<int>(i));
      const Vec proj = tangent_project(st.vectors.col(i - 1), dir);
      CHECK(norm2(proj) <= 1e-8);
    }
  }
}

TEST_CASE("normalized penalty direction properties") {
  Philox rng(16);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + rng.next_index(9);
    const Mat sigma = random_psd(d, rng, 0.05, 1.0);
    const Vec v = random_unit(d, rng);
    const Vec sv = matvec(sigma, v);
    const double rayleigh = dot(v, sv);
    const Vec normalized = scaled(sv, 1.0 / rayleigh);
    CHECK(dot(normalized, v) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(norm2(v) <= norm2(normalized) + 1e-12);
  }
}

TEST_CASE("mu_grad matches finite differences of the deflated quadratic form") {
  Philox rng(18);
  const std::size_t d = 8;
  for (int trial = 0; trial < 25; ++trial) {
    const Mat sigma = random_psd(d, rng);
    const std::size_t parents = 1 + rng.next_index(3);
    std::vector<Vec> par;
    EigenState st;
    st.vectors = Mat(d, parents + 1);
    for (std::size_t j = 0; j < parents; ++j) {
      par.push_back(random_unit(d, rng));
      st.vectors.set_col(j, par.back());
    }
    Vec v = random_unit(d, rng);
    st.vectors.set_col(parents, v);
    st.constraint = Constraint::unit_ball;  // norms are free in this check

    auto quad_form = [&](const Vec& u) {
      const Vec su = matvec(sigma, u);
      double f = dot(u, su);
      for (const Vec& p : par) f -= dot(u, p) * dot(p, su);
      return f;
    };

    const Vec grad =
        mu_grad_update(CovView::from_sigma(sigma), st, static_cast<int>(parents) + 1);
    const double h = 1e-5;
    for (std::size_t c = 0; c < d; ++c) {
      Vec hi = v, lo = v;
      hi[c] += h;
      lo[c] -= h;
      const double fd = (quad_form(hi) - quad_form(lo)) / (2.0 * h);
      // the update direction carries the conventional 1/2 of the raw gradient
      CHECK(std::abs(2.0 * grad[c] - fd) < 1e-5);
    }
  }
}

TEST_CASE("small parent errors move the best response proportionally") {
  Philox rng(20);
  const std::size_t d = 8;
  int instances = 0;
  while (instances < 20) {
    // well-gapped spectrum keeps the best response a smooth target
    Vec lambda(d);
    for (std::size_t i = 0; i < d; ++i)
      lambda[i] = 1.0 - 0.1 * static_cast<double>(i);
    const Mat q = random_orthogonal(d, rng.next_u64());
    Mat ql(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) ql(r, c) = q(r, c) * lambda[c];
    const Mat sigma = matmul(ql, q.transposed());
    const SymEig eig = jacobi_eigh(sigma);

    const std::size_t parents = 1 + rng.next_index(3);
    const std::size_t target = parents;  // 0-based index of player i

    // one fixed tangent direction per parent, scaled by epsilon
    std::vector<Vec> tangents;
    for (std::size_t j = 0; j < parents; ++j) {
      Vec t(d);
      for (double& x : t) x = rng.next_normal();
      t = tangent_project(eig.eigenvectors.col(j), t);
      const double n = norm2(t);
      if (n < 1e-12) continue;
      scale(t, 1.0 / n);
      tangents.push_back(t);
    }
    if (tangents.size() != parents) continue;

    double prev = -1.0;
    bool ok = true;
    for (const double eps : {1e-3, 1e-2, 1e-1}) {
      std::vector<Vec> perturbed;
      for (std::size_t j = 0; j < parents; ++j) {
        Vec p = eig.eigenvectors.col(j);
        scale(p, std::cos(eps));
        axpy(std::sin(eps), tangents[j], p);
        perturbed.push_back(p);
      }
      const Vec response = best_response(sigma, perturbed);
      const double displacement =
          std::acos(std::min(1.0, std::abs(dot(response, eig.eigenvectors.col(target)))));
      CHECK(displacement < 1.5);  // stays away from the orthogonal repeller
      if (prev >= 0.0) {
        // one decade of epsilon may grow the displacement at most ~linearly
        if (displacement > 15.0 * prev + 1e-12) ok = false;
      }
      prev = displacement;
    }
    CHECK(ok);
    ++instances;
  }
}

TEST_CASE("singular penalty raises a typed error naming the parent") {
  Mat x(1, 2);
  x(0, 1) = 1.0;  // single sample along e2
  const EigenState st = state_from_cols({{1, 0}, {0, 1}});
  const CovView cov = CovView::from_batch(x);
  try {
    alpha_update(cov, st, 2);
    FAIL("expected SingularPenaltyError");
  } catch (const SingularPenaltyError& e) {
    CHECK(e.parent == 1);
  }
  CHECK_THROWS_AS(alpha_utility(cov, st, 2), SingularPenaltyError);
  // mu has no denominators, so the same state is fine
  CHECK_NOTHROW(mu_update(cov, st, 2));
}

TEST_CASE("update input validation") {
  Philox rng(22);
  const Mat sigma = random_psd(3, rng);
  const EigenState st = state_from_cols({random_unit(3, rng)});
  const CovView cov = CovView::from_sigma(sigma);
  CHECK_THROWS_AS(mu_update(cov, st, 0), IndexError);
  CHECK_THROWS_AS(mu_update(cov, st, 2), IndexError);

  const EigenState wrong = state_from_cols({random_unit(4, rng)});
  CHECK_THROWS_AS(mu_update(cov, wrong, 1), ShapeError);
}
