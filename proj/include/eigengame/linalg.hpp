#pragma once

#include <cstdint>

#include "eigengame/mat.hpp"

namespace eigengame {

/// Full eigendecomposition of a symmetric matrix. Eigenvalues are sorted
/// descending; eigenvectors sit on the matching columns, each with its
/// largest-magnitude entry made positive.
struct SymEig {
  Vec eigenvalues;
  Mat eigenvectors;
};

/// Dense symmetric eigendecomposition by cyclic Jacobi rotation sweeps.
///
/// Ground-truth oracle for everything else in the library; intended for
/// desk-scale inputs (d <= 4096). Sweeps stop once the off-diagonal
/// Frobenius norm drops below 1e-12 * ||S||_F. Deterministic for a fixed
/// input. Throws ShapeError for non-square or asymmetric input and
/// ConvergenceError if max_sweeps is exhausted.
SymEig jacobi_eigh(const Mat& s, int max_sweeps = 100);

/// Projection of y onto the tangent space of the unit sphere at v:
/// y - <y,v> v. Requires ||v|| = 1 within 1e-8.
Vec tangent_project(const Vec& v, const Vec& y);

/// Retraction onto the unit sphere: (v + z) / ||v + z||.
/// Requires ||v|| = 1 within 1e-8; throws DegenerateStepError when the sum
/// has vanishing norm.
Vec retract(const Vec& v, const Vec& z);

/// Gram-Schmidt orthonormalization of the columns of v (same span).
/// Throws RankError when a column is linearly dependent on its
/// predecessors beyond the 1e-10 rank tolerance.
Mat orthonormalize(const Mat& v);

/// Deterministic random orthogonal matrix: Gram-Schmidt QR of a seeded
/// standard-normal d x d matrix. The triangular factor's diagonal is
/// positive by construction, so the factorization (and hence Q) is unique.
Mat random_orthogonal(std::size_t d, std::uint64_t seed);

}  // namespace eigengame
