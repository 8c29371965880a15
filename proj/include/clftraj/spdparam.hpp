#pragma once

#include <Eigen/Dense>
#include <vector>

#include "clftraj/errors.hpp"

// Construction of N x N orthonormal matrices from hyperspherical angles and
// symmetric positive-definite matrices from (eigenvalues, angles): K = Q L Q^T
// with Q built column-by-column, each new column the projection of a
// hyperspherical unit vector into the null space of the previous columns.
namespace clftraj::spd {

// Number of angles needed for an n x n orthonormal matrix: n(n-1)/2.
inline int angle_count(int n) {
    if (n < 1) throw ArgumentError("angle_count: dimension must be >= 1");
    return n * (n - 1) / 2;
}

// Total free parameters of an n x n SPD matrix: n eigenvalues + angles.
inline int parameter_count(int n) { return n + angle_count(n); }

// Unit vector in dimension d from d-1 angles:
// (cos t1, sin t1 cos t2, ..., sin t1...sin t_{d-2} cos t_{d-1}, sin t1...sin t_{d-1}).
// d = 1 takes an empty row and returns [1].
Eigen::VectorXd hypersphere_unit_vector(const std::vector<double>& angles_row);

// Orthonormal basis of the orthogonal complement of partial_q's columns,
// built by Gram-Schmidt over the standard basis vectors in index order
// (near-zero residuals skipped). partial_q may have zero columns, in which
// case the result is the identity. Columns of partial_q must already be
// orthonormal (within 1e-10), else ContractViolation.
Eigen::MatrixXd null_space_orthonormal_basis(const Eigen::MatrixXd& partial_q, int n);

// Full orthonormal matrix from n(n-1)/2 angles, consumed row-by-row:
// n-1 angles for column 1, n-2 for column 2, ..., none for column n.
// All-zero angles yield the identity under the deterministic basis convention.
Eigen::MatrixXd build_rotation(int n, const std::vector<double>& angles);

// K = Q diag(eigenvalues) Q^T, symmetrized. Eigenvalues must be > 0.
Eigen::MatrixXd build_spd(const std::vector<double>& eigenvalues,
                          const std::vector<double>& angles);

// Smallest eigenvalue of a symmetric matrix; ContractViolation if the input
// is not symmetric (tolerance 1e-12 relative to the largest entry).
double eigenvalue_floor_check(const Eigen::MatrixXd& matrix);

} // namespace clftraj::spd
