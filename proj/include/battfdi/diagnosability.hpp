#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace battfdi {

/// Fault-to-output steady-state transfer gain G = C (-A)^-1 E, computed by
/// linear solve. Throws std::runtime_error naming the offending eigenvalue
/// when A is numerically singular.
Eigen::MatrixXd steady_state_gain(const Eigen::Ref<const Eigen::MatrixXd>& A,
                                  const Eigen::Ref<const Eigen::MatrixXd>& C,
                                  const Eigen::Ref<const Eigen::MatrixXd>& E);

/// Fault i is detectable iff ||C A^-1 E_i||_inf exceeds the relative floor
/// 1e-10 * ||C A^-1||_inf * ||E_i||_inf.
bool check_detectable(const Eigen::Ref<const Eigen::MatrixXd>& A,
                      const Eigen::Ref<const Eigen::MatrixXd>& C,
                      const Eigen::Ref<const Eigen::MatrixXd>& E, int fault_index);

struct IsolabilityResult {
    bool isolable{false};
    int rank_value{0};
    double smallest_retained_sv{0.0};
};

/// Rank test of the (N+K)x(N+K) block matrix [-A E; C 0]: isolable iff the
/// numerical rank equals N+K. Rank uses singular values above
/// max_dim * sigma_max * machine epsilon.
IsolabilityResult check_isolable(const Eigen::Ref<const Eigen::MatrixXd>& A,
                                 const Eigen::Ref<const Eigen::MatrixXd>& C,
                                 const Eigen::Ref<const Eigen::MatrixXd>& E);

struct DiagnosabilityCertificate {
    std::vector<bool> detectable_per_fault;
    bool isolable{false};
    int rank_value{0};
    double smallest_retained_sv{0.0};
    Eigen::MatrixXd gain;  ///< full G, for cross-gain inspection

    bool all_detectable() const;
};

DiagnosabilityCertificate certify(const Eigen::Ref<const Eigen::MatrixXd>& A,
                                  const Eigen::Ref<const Eigen::MatrixXd>& C,
                                  const Eigen::Ref<const Eigen::MatrixXd>& E);

std::string render_certificate(const DiagnosabilityCertificate& cert);

}  // namespace battfdi
