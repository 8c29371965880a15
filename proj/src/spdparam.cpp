#include "clftraj/spdparam.hpp"

#include <cmath>
#include <cstddef>

namespace clftraj::spd {

namespace {

// Residual threshold for skipping a standard-basis candidate that lies
// (numerically) in the span of the accepted columns. Candidates are unit
// vectors, so the scale is 1.
constexpr double kSkipThreshold = 1e-12;

constexpr double kOrthonormalTol = 1e-10;

} // namespace

Eigen::VectorXd hypersphere_unit_vector(const std::vector<double>& angles_row) {
    const int d = static_cast<int>(angles_row.size()) + 1;
    Eigen::VectorXd v(d);
    double sine_product = 1.0;
    for (int j = 0; j < d - 1; ++j) {
        v(j) = sine_product * std::cos(angles_row[static_cast<std::size_t>(j)]);
        sine_product *= std::sin(angles_row[static_cast<std::size_t>(j)]);
    }
    v(d - 1) = sine_product;
    return v;
}

Eigen::MatrixXd null_space_orthonormal_basis(const Eigen::MatrixXd& partial_q, int n) {
    const int k = static_cast<int>(partial_q.cols());
    if (k > 0 && partial_q.rows() != n) {
        throw ArgumentError("null_space_orthonormal_basis: row count mismatch");
    }
    if (k >= n) {
        throw ArgumentError("null_space_orthonormal_basis: no complement left");
    }
    if (k > 0) {
        const Eigen::MatrixXd gram = partial_q.transpose() * partial_q;
        const double defect =
            (gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff();
        if (defect > kOrthonormalTol) {
            throw ContractViolation("null_space_orthonormal_basis: input columns not orthonormal");
        }
    }

    // Gram-Schmidt over the standard basis in index order; two projection
    // passes per candidate for numerical orthogonality.
    Eigen::MatrixXd basis(n, n - k);
    int accepted = 0;
    for (int j = 0; j < n && accepted < n - k; ++j) {
        Eigen::VectorXd cand = Eigen::VectorXd::Zero(n);
        cand(j) = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            if (k > 0) cand -= partial_q * (partial_q.transpose() * cand);
            if (accepted > 0) {
                auto b = basis.leftCols(accepted);
                cand -= b * (b.transpose() * cand);
            }
        }
        const double res = cand.norm();
        if (res <= kSkipThreshold) continue;
        basis.col(accepted++) = cand / res;
    }
    if (accepted != n - k) {
        throw ContractViolation("null_space_orthonormal_basis: complement not spanned");
    }
    return basis;
}

Eigen::MatrixXd build_rotation(int n, const std::vector<double>& angles) {
    if (n < 1) throw ArgumentError("build_rotation: dimension must be >= 1");
    if (static_cast<int>(angles.size()) != angle_count(n)) {
        throw ArgumentError("build_rotation: expected n(n-1)/2 angles");
    }

    Eigen::MatrixXd Q(n, 0);
    std::size_t next = 0;
    for (int i = 0; i < n; ++i) {
        const std::vector<double> row(angles.begin() + static_cast<std::ptrdiff_t>(next),
                                      angles.begin() + static_cast<std::ptrdiff_t>(next + static_cast<std::size_t>(n - 1 - i)));
        next += static_cast<std::size_t>(n - 1 - i);
        const Eigen::MatrixXd basis = null_space_orthonormal_basis(Q, n);
        const Eigen::VectorXd col = basis * hypersphere_unit_vector(row);
        Q.conservativeResize(n, i + 1);
        Q.col(i) = col;
    }
    return Q;
}

Eigen::MatrixXd build_spd(const std::vector<double>& eigenvalues,
                          const std::vector<double>& angles) {
    const int n = static_cast<int>(eigenvalues.size());
    if (n < 1) throw ArgumentError("build_spd: need at least one eigenvalue");
    for (double lambda : eigenvalues) {
        if (!(lambda > 0.0)) {
            throw ArgumentError("build_spd: eigenvalues must be positive");
        }
    }
    const Eigen::MatrixXd Q = build_rotation(n, angles);
    Eigen::VectorXd lam(n);
    for (int i = 0; i < n; ++i) lam(i) = eigenvalues[static_cast<std::size_t>(i)];
    Eigen::MatrixXd K = Q * lam.asDiagonal() * Q.transpose();
    K = 0.5 * (K + K.transpose()).eval(); // strip floating-point asymmetry
    return K;
}

double eigenvalue_floor_check(const Eigen::MatrixXd& matrix) {
    if (matrix.rows() != matrix.cols()) {
        throw ContractViolation("eigenvalue_floor_check: matrix not square");
    }
    const double scale = matrix.cwiseAbs().maxCoeff();
    const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * std::max(scale, 1.0)) {
        throw ContractViolation("eigenvalue_floor_check: matrix not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix);
    return solver.eigenvalues().minCoeff();
}

} // namespace clftraj::spd
