#pragma once

// Dense 3x3 kernels used by the Hankel feasibility check and the null-vector
// certificate. Everything here is closed form or a fixed small iteration, so
// no external linear-algebra dependency is needed.

#include <array>
#include <optional>

namespace mombound::linalg3 {

using Vector3 = std::array<double, 3>;
using Matrix3 = std::array<Vector3, 3>;

/// Cofactor expansion along the first row.
double determinant(const Matrix3& a) noexcept;

double dot(const Vector3& a, const Vector3& b) noexcept;
double norm(const Vector3& a) noexcept;
Vector3 multiply(const Matrix3& a, const Vector3& x) noexcept;

/// Gaussian elimination with partial pivoting. Returns nullopt when a pivot
/// is exactly zero.
std::optional<Vector3> solve(const Matrix3& a, const Vector3& b) noexcept;

/// Trigonometric (Cardano) eigenvalues of a symmetric matrix, ascending.
/// Returns nullopt when the characteristic polynomial is too close to a
/// repeated root for acos() to be well conditioned.
std::optional<Vector3> eigenvalues_closed_form(const Matrix3& a) noexcept;

struct JacobiResult {
    Vector3 values;   // ascending
    Matrix3 vectors;  // vectors[k] is the unit eigenvector for values[k]
    int sweeps = 0;
};

/// Cyclic Jacobi rotations for a symmetric matrix.
JacobiResult eigen_jacobi(const Matrix3& a) noexcept;

/// Ascending eigenvalues of a symmetric matrix: closed form, falling back to
/// Jacobi near repeated roots.
Vector3 symmetric_eigenvalues(const Matrix3& a) noexcept;

/// Inverse iteration on (a - shift*I) from `start`; converges to the
/// eigenvector whose eigenvalue is closest to `shift`, unless `start` has no
/// component along it. Result has unit length.
Vector3 inverse_iteration(const Matrix3& a, double shift, const Vector3& start, int max_iter = 64) noexcept;

}  // namespace mombound::linalg3
