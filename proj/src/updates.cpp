#include "eigengame/updates.hpp"

#include <cmath>
#include <string>

#include "eigengame/errors.hpp"

namespace eigengame {

std::string to_string(UpdateRule rule) {
  switch (rule) {
    case UpdateRule::mu: return "mu";
    case UpdateRule::alpha: return "alpha";
    case UpdateRule::gha: return "gha";
    case UpdateRule::mu_grad: return "mu-grad";
  }
  return "?";
}

UpdateRule parse_update_rule(const std::string& name) {
  if (name == "mu") return UpdateRule::mu;
  if (name == "alpha") return UpdateRule::alpha;
  if (name == "gha") return UpdateRule::gha;
  if (name == "mu-grad" || name == "mu_grad") return UpdateRule::mu_grad;
  throw ConfigError("unknown update rule '" + name + "'");
}

void EigenState::validate() const {
  if (!all_finite(vectors)) throw DomainError("EigenState: non-finite entries");
  for (std::size_t c = 0; c < vectors.cols(); ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < vectors.rows(); ++r)
      s += vectors(r, c) * vectors(r, c);
    const double n = std::sqrt(s);
    if (constraint == Constraint::unit_sphere) {
      if (std::abs(n - 1.0) > 1e-8)
        throw DomainError("EigenState: column " + std::to_string(c) +
                          " has norm " + std::to_string(n) +
                          ", expected unit length");
    } else if (n > 1.0 + 1e-8) {
      throw DomainError("EigenState: column " + std::to_string(c) +
                        " has norm " + std::to_string(n) +
                        ", expected within the unit ball");
    }
  }
}

CovView CovView::from_sigma(const Mat& sigma) {
  if (sigma.rows() != sigma.cols())
    throw ShapeError("CovView: sigma must be square");
  const double scale = std::max(1.0, max_abs(sigma));
  for (std::size_t p = 0; p < sigma.rows(); ++p)
    for (std::size_t q = p + 1; q < sigma.cols(); ++q)
      if (std::abs(sigma(p, q) - sigma(q, p)) > 1e-8 * scale)
        throw ShapeError("CovView: sigma is not symmetric");
  CovView v;
  v.kind_ = Kind::sigma;
  v.mat_ = &sigma;
  return v;
}

CovView CovView::from_batch(const Mat& x) {
  return from_batch_rows(x, 0, x.rows());
}

CovView CovView::from_batch_rows(const Mat& x, std::size_t r0, std::size_t r1) {
  if (r1 > x.rows() || r0 >= r1)
    throw ShapeError("CovView: bad row range");
  CovView v;
  v.kind_ = Kind::batch;
  v.mat_ = &x;
  v.row_begin_ = r0;
  v.row_end_ = r1;
  return v;
}

std::size_t CovView::dim() const { return mat_->cols(); }

std::size_t CovView::samples() const {
  return kind_ == Kind::batch ? row_end_ - row_begin_ : 0;
}

Vec CovView::apply(const Vec& v) const {
  if (kind_ == Kind::sigma) return matvec(*mat_, v);
  return lift(half_apply(v));
}

Vec CovView::half_apply(const Vec& v) const {
  if (kind_ != Kind::batch) throw ShapeError("CovView: half_apply needs a batch");
  return matvec_rows(*mat_, row_begin_, row_end_, v);
}

Vec CovView::lift(const Vec& w) const {
  if (kind_ != Kind::batch) throw ShapeError("CovView: lift needs a batch");
  Vec y = matvec_t_rows(*mat_, row_begin_, row_end_, w);
  scale(y, 1.0 / static_cast<double>(samples()));
  return y;
}

double CovView::inner(const Vec& a, const Vec& b) const {
  if (kind_ != Kind::batch) throw ShapeError("CovView: inner needs a batch");
  return dot(a, b) / static_cast<double>(samples());
}

namespace {

void check_player(const CovView& cov, const EigenState& state, int player) {
  if (player < 1 || static_cast<std::size_t>(player) > state.k())
    throw IndexError("player index " + std::to_string(player) +
                     " out of range 1.." + std::to_string(state.k()));
  if (cov.dim() != state.dim())
    throw ShapeError("covariance dimension " + std::to_string(cov.dim()) +
                     " does not match state dimension " +
                     std::to_string(state.dim()));
}

double denominator_or_throw(double denom, int parent) {
  if (std::abs(denom) < kDenominatorGuard)
    throw SingularPenaltyError(
        "penalty denominator " + std::to_string(denom) + " for parent " +
            std::to_string(parent) + " is below the guard threshold",
        parent);
  return denom;
}

}  // namespace

Vec mu_update(const CovView& cov, const EigenState& state, int player) {
  check_player(cov, state, player);
  const Mat& v = state.vectors;
  const Vec vi = v.col(player - 1);

  if (cov.kind() == CovView::Kind::sigma) {
    // Symmetry lets every coefficient v_i^T Sigma v_j reuse Sigma v_i.
    const Vec sv = cov.apply(vi);
    Vec dir = sv;
    for (int j = 0; j < player - 1; ++j) col_axpy(-col_dot(v, j, sv), v, j, dir);
    return dir;
  }
  const Vec xvi = cov.half_apply(vi);
  Vec dir = cov.lift(xvi);  // rewards
  for (int j = 0; j < player - 1; ++j) {
    const Vec xvj = cov.half_apply(v.col(j));
    col_axpy(-cov.inner(xvi, xvj), v, j, dir);  // penalties
  }
  return dir;
}

Vec alpha_update(const CovView& cov, const EigenState& state, int player) {
  check_player(cov, state, player);
  const Mat& v = state.vectors;
  const Vec vi = v.col(player - 1);

  if (cov.kind() == CovView::Kind::sigma) {
    Vec dir = cov.apply(vi);
    for (int j = 0; j < player - 1; ++j) {
      const Vec svj = cov.apply(v.col(j));
      const double denom = denominator_or_throw(col_dot(v, j, svj), j + 1);
      axpy(-dot(vi, svj) / denom, svj, dir);
    }
    return dir;
  }
  const Vec xvi = cov.half_apply(vi);
  Vec dir = cov.lift(xvi);
  for (int j = 0; j < player - 1; ++j) {
    const Vec xvj = cov.half_apply(v.col(j));
    const double denom = denominator_or_throw(cov.inner(xvj, xvj), j + 1);
    axpy(-cov.inner(xvi, xvj) / denom, cov.lift(xvj), dir);
  }
  return dir;
}

Vec gha_update(const CovView& cov, const EigenState& state, int player) {
  check_player(cov, state, player);
  const Mat& v = state.vectors;
  const Vec vi = v.col(player - 1);

  if (cov.kind() == CovView::Kind::sigma) {
    const Vec sv = cov.apply(vi);
    Vec dir = sv;
    for (int j = 0; j < player; ++j) col_axpy(-col_dot(v, j, sv), v, j, dir);
    return dir;
  }
  const Vec xvi = cov.half_apply(vi);
  Vec dir = cov.lift(xvi);
  for (int j = 0; j < player; ++j) {
    const Vec xvj = cov.half_apply(v.col(j));
    col_axpy(-cov.inner(xvi, xvj), v, j, dir);
  }
  return dir;
}

Vec mu_grad_update(const CovView& cov, const EigenState& state, int player) {
  check_player(cov, state, player);
  const Mat& v = state.vectors;
  const Vec vi = v.col(player - 1);

  if (cov.kind() == CovView::Kind::sigma) {
    const Vec sv = cov.apply(vi);
    Vec dir = sv;
    for (int j = 0; j < player - 1; ++j) {
      const Vec vj = v.col(j);
      col_axpy(-0.5 * dot(sv, vj), v, j, dir);
      axpy(-0.5 * dot(vi, vj), cov.apply(vj), dir);
    }
    return dir;
  }
  const Vec xvi = cov.half_apply(vi);
  Vec dir = cov.lift(xvi);
  for (int j = 0; j < player - 1; ++j) {
    const Vec vj = v.col(j);
    const Vec xvj = cov.half_apply(vj);
    col_axpy(-0.5 * cov.inner(xvi, xvj), v, j, dir);
    axpy(-0.5 * dot(vi, vj), cov.lift(xvj), dir);
  }
  return dir;
}

double alpha_utility(const CovView& cov, const EigenState& state, int player) {
  check_player(cov, state, player);
  const Mat& v = state.vectors;
  const Vec vi = v.col(player - 1);

  if (cov.kind() == CovView::Kind::sigma) {
    const Vec sv = cov.apply(vi);
    double u = dot(vi, sv);
    for (int j = 0; j < player - 1; ++j) {
      const Vec svj = cov.apply(v.col(j));
      const double denom = denominator_or_throw(col_dot(v, j, svj), j + 1);
      const double num = dot(vi, svj);
      u -= num * num / denom;
    }
    return u;
  }
  const Vec xvi = cov.half_apply(vi);
  double u = cov.inner(xvi, xvi);
  for (int j = 0; j < player - 1; ++j) {
    const Vec xvj = cov.half_apply(v.col(j));
    const double denom = denominator_or_throw(cov.inner(xvj, xvj), j + 1);
    const double num = cov.inner(xvi, xvj);
    u -= num * num / denom;
  }
  return u;
}

double mu_utility(const CovView& cov, const EigenState& state, int player) {
  check_player(cov, state, player);
  const Mat& v = state.vectors;
  const Vec vi = v.col(player - 1);

  if (cov.kind() == CovView::Kind::sigma) {
    const Vec sv = cov.apply(vi);
    double u = dot(vi, sv);
    for (int j = 0; j < player - 1; ++j)
      u -= col_dot(v, j, vi) * col_dot(v, j, sv);
    return u;
  }
  const Vec xvi = cov.half_apply(vi);
  double u = cov.inner(xvi, xvi);
  for (int j = 0; j < player - 1; ++j) {
    const Vec xvj = cov.half_apply(v.col(j));
    u -= col_dot(v, j, vi) * cov.inner(xvj, xvi);
  }
  return u;
}

}  // namespace eigengame
