#pragma once

#include <Eigen/Dense>

namespace battfdi {

struct CareResult {
    Eigen::MatrixXd X;          ///< stabilizing solution
    double residual_inf{0.0};   ///< ||A'X + XA - XBR^-1B'X + Q||_inf
    int iterations{0};
    bool converged{false};
};

/// Solves the continuous-time algebraic Riccati equation
///   A'X + XA - X B R^-1 B' X + Q = 0
/// with the matrix sign function iteration of Byers (Linear Algebra Appl.,
/// 85:267-279, 1987), with determinant scaling. R must be symmetric positive
/// definite and Q symmetric positive semi-definite.
CareResult solve_care(const Eigen::Ref<const Eigen::MatrixXd>& A,
                      const Eigen::Ref<const Eigen::MatrixXd>& B,
                      const Eigen::Ref<const Eigen::MatrixXd>& Q,
                      const Eigen::Ref<const Eigen::MatrixXd>& R);

/// Filter-form ARE: returns P with A P + P A' - P C' S^-1 C P + Q = 0,
/// i.e. solve_care on the dual (A', C', Q, S).
CareResult solve_filter_are(const Eigen::Ref<const Eigen::MatrixXd>& A,
                            const Eigen::Ref<const Eigen::MatrixXd>& C,
                            const Eigen::Ref<const Eigen::MatrixXd>& Q,
                            const Eigen::Ref<const Eigen::MatrixXd>& S);

}  // namespace battfdi
