#include "battfdi/riccati.hpp"

#include <cmath>
#include <stdexcept>

namespace battfdi {

CareResult solve_care(const Eigen::Ref<const Eigen::MatrixXd>& A,
                      const Eigen::Ref<const Eigen::MatrixXd>& B,
                      const Eigen::Ref<const Eigen::MatrixXd>& Q,
                      const Eigen::Ref<const Eigen::MatrixXd>& R) {
    const Eigen::Index n = B.rows(), m = B.cols();
    if (A.rows() != n || A.cols() != n) throw std::invalid_argument("care: A must be n x n");
    if (Q.rows() != n || Q.cols() != n) throw std::invalid_argument("care: Q must be n x n");
    if (R.rows() != m || R.cols() != m) throw std::invalid_argument("care: R must be m x m");
    if ((Q - Q.transpose()).lpNorm<Eigen::Infinity>() > 1e-8 * (1.0 + Q.lpNorm<Eigen::Infinity>()))
        throw std::invalid_argument("care: Q must be symmetric");

    Eigen::LLT<Eigen::MatrixXd> r_chol(R);
    if (r_chol.info() != Eigen::Success)
        throw std::invalid_argument("care: R must be positive definite");

    Eigen::MatrixXd H(2 * n, 2 * n);
    H << A, B * r_chol.solve(B.transpose()), Q, -A.transpose();

    Eigen::MatrixXd Z = H;
    Eigen::MatrixXd Z_old;
    const double tolerance = 1e-12;
    const int max_iterations = 200;
    const double p = static_cast<double>(Z.rows());

    CareResult out;
    double relative_norm = 0.0;
    do {
        Z_old = Z;
        // Determinant scaling roughly halves the iteration count.
        const double det = std::abs(Z.determinant());
        const double ck = det > 0.0 ? std::pow(det, -1.0 / p) : 1.0;
        Z *= ck;
        Z = Z - 0.5 * (Z - Z.inverse());
        relative_norm = (Z - Z_old).norm();
        ++out.iterations;
    } while (out.iterations < max_iterations &&
             relative_norm > tolerance * (1.0 + Z.norm()));

    const Eigen::MatrixXd W11 = Z.block(0, 0, n, n);
    const Eigen::MatrixXd W12 = Z.block(0, n, n, n);
    const Eigen::MatrixXd W21 = Z.block(n, 0, n, n);
    const Eigen::MatrixXd W22 = Z.block(n, n, n, n);

    Eigen::MatrixXd lhs(2 * n, n);
    Eigen::MatrixXd rhs(2 * n, n);
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
    lhs << W12, W22 + eye;
    rhs << W11 + eye, W21;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(lhs, Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.X = svd.solve(rhs);
    // Symmetrize; the sign iteration leaves a skew part of rounding size.
    out.X = 0.5 * (out.X + out.X.transpose()).eval();

    const Eigen::MatrixXd res = A.transpose() * out.X + out.X * A -
                                out.X * B * r_chol.solve(B.transpose()) * out.X + Q;
    out.residual_inf = res.lpNorm<Eigen::Infinity>();
    out.converged = relative_norm <= tolerance * (1.0 + Z.norm());
    return out;
}

CareResult solve_filter_are(const Eigen::Ref<const Eigen::MatrixXd>& A,
                            const Eigen::Ref<const Eigen::MatrixXd>& C,
                            const Eigen::Ref<const Eigen::MatrixXd>& Q,
                            const Eigen::Ref<const Eigen::MatrixXd>& S) {
    return solve_care(A.transpose(), C.transpose(), Q, S);
}

}  // namespace battfdi
