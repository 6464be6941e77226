#include "battfdi/filter_bank.hpp"

#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "battfdi/riccati.hpp"

namespace battfdi {

FilterDesign design_filter(const LumpedModel& model, int zone, const Eigen::MatrixXd& Q_cov,
                           const Eigen::MatrixXd& S_cov, FilterMode mode,
                           const Eigen::MatrixXd& P0) {
    const int n = model.n();
    const int k = model.num_sensors();
    if (k == 0) throw std::invalid_argument("design_filter: model has no sensors");
    if (zone < 0 || zone >= k) throw std::invalid_argument("design_filter: zone out of range");
    if (Q_cov.rows() != n || Q_cov.cols() != n)
        throw std::invalid_argument("design_filter: Q_cov must be N x N");
    if (S_cov.rows() != k || S_cov.cols() != k)
        throw std::invalid_argument("design_filter: S_cov must be K x K");
    Eigen::LLT<Eigen::MatrixXd> s_chol(S_cov);
    if (s_chol.info() != Eigen::Success)
        throw std::invalid_argument("design_filter: S_cov must be positive definite");

    FilterDesign d;
    d.zone = zone;
    d.Q_cov = Q_cov;
    d.S_cov = S_cov;
    d.mode = mode;

    if (mode == FilterMode::time_varying) {
        d.P = P0.size() > 0 ? P0 : Eigen::MatrixXd::Identity(n, n);
        return d;
    }

    CareResult care = solve_filter_are(model.A, model.C, Q_cov, S_cov);
    if (!care.converged || care.residual_inf > 1e-6 * (1.0 + care.X.lpNorm<Eigen::Infinity>())) {
        throw std::runtime_error("design_filter: Riccati iteration did not converge (residual " +
                                 std::to_string(care.residual_inf) + ")");
    }
    d.P = care.X;
    d.riccati_residual = care.residual_inf;
    d.L = d.P * model.C.transpose() * s_chol.solve(Eigen::MatrixXd::Identity(k, k));

    // A - L C must be stable for the innovation dynamics to settle.
    Eigen::EigenSolver<Eigen::MatrixXd> es(model.A - d.L * model.C, false);
    Eigen::Index worst;
    const double max_re = es.eigenvalues().real().maxCoeff(&worst);
    if (!(max_re < 0.0)) {
        std::ostringstream msg;
        msg << "design_filter: configuration not stabilizable; closed-loop mode at "
            << es.eigenvalues()(worst).real();
        if (es.eigenvalues()(worst).imag() != 0.0) msg << " +/- " << std::abs(es.eigenvalues()(worst).imag()) << "i";
        msg << " is not stable";
        throw std::runtime_error(msg.str());
    }
    return d;
}

Eigen::VectorXd run_filter(const FilterDesign& design, const LumpedModel& model,
                           const Eigen::VectorXd& times, const Eigen::MatrixXd& inputs,
                           const Eigen::MatrixXd& outputs, const Eigen::VectorXd& x0) {
    const int n = model.n();
    const int k = model.num_sensors();
    const int m = static_cast<int>(times.size());
    if (inputs.rows() != n + 1 || inputs.cols() != m)
        throw std::invalid_argument("run_filter: inputs must be (N+1) x steps");
    if (outputs.rows() != k || outputs.cols() != m)
        throw std::invalid_argument("run_filter: outputs must be K x steps");
    if (x0.size() != n) throw std::invalid_argument("run_filter: x0 must have N entries");
    if (m < 2) throw std::invalid_argument("run_filter: need at least two samples");
    const double dt = times(1) - times(0);

    const bool steady = design.mode == FilterMode::steady_state;
    if (steady) {
        const double stable = max_stable_dt(model.A - design.L * model.C);
        if (dt > stable) {
            std::ostringstream msg;
            msg << "run_filter: dt " << dt << " s exceeds the RK4 stability bound of the filter "
                << "dynamics; use dt <= " << stable << " s";
            throw std::runtime_error(msg.str());
        }
    }

    Eigen::VectorXd innovation(m);
    Eigen::VectorXd xhat = x0;
    Eigen::MatrixXd P = design.P;
    Eigen::LLT<Eigen::MatrixXd> s_chol(design.S_cov);
    const Eigen::MatrixXd S_inv = s_chol.solve(Eigen::MatrixXd::Identity(k, k));
    const Eigen::MatrixXd CtSinv = model.C.transpose() * S_inv;

    Eigen::VectorXd k1(n), k2(n), k3(n), k4(n);
    Eigen::MatrixXd kp1, kp2, kp3, kp4;

    for (int step = 0; step < m; ++step) {
        innovation(step) = outputs(design.zone, step) - model.C.row(design.zone) * xhat;
        if (step + 1 == m) break;

        const Eigen::VectorXd u = inputs.col(step);
        const Eigen::VectorXd y = outputs.col(step);

        if (steady) {
            auto rhs = [&](const Eigen::VectorXd& x, Eigen::VectorXd& dx) {
                dx.noalias() = model.A * x;
                dx.noalias() += model.B * u;
                dx.noalias() += design.L * (y - model.C * x);
            };
            rhs(xhat, k1);
            rhs(xhat + 0.5 * dt * k1, k2);
            rhs(xhat + 0.5 * dt * k2, k3);
            rhs(xhat + dt * k3, k4);
            xhat += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        } else {
            // Joint RK4 on the state estimate and the Riccati ODE
            // P' = A P + P A' + Q - P C' S^-1 C P, with L(t) = P C' S^-1.
            auto rhs = [&](const Eigen::VectorXd& x, const Eigen::MatrixXd& Pm,
                           Eigen::VectorXd& dx, Eigen::MatrixXd& dP) {
                const Eigen::MatrixXd Lt = Pm * CtSinv;
                dx.noalias() = model.A * x;
                dx.noalias() += model.B * u;
                dx.noalias() += Lt * (y - model.C * x);
                dP = model.A * Pm + Pm * model.A.transpose() + design.Q_cov -
                     Pm * CtSinv * model.C * Pm;
            };
            rhs(xhat, P, k1, kp1);
            rhs(xhat + 0.5 * dt * k1, P + 0.5 * dt * kp1, k2, kp2);
            rhs(xhat + 0.5 * dt * k2, P + 0.5 * dt * kp2, k3, kp3);
            rhs(xhat + dt * k3, P + dt * kp3, k4, kp4);
            xhat += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            P += (dt / 6.0) * (kp1 + 2.0 * kp2 + 2.0 * kp3 + kp4);
        }
    }
    return innovation;
}

Eigen::MatrixXd run_bank(const std::vector<FilterDesign>& bank, const LumpedModel& model,
                         const Trajectory& traj, const Eigen::VectorXd& x0) {
    Eigen::MatrixXd innovations(static_cast<int>(bank.size()), traj.steps());
    for (size_t i = 0; i < bank.size(); ++i)
        innovations.row(static_cast<int>(i)) =
            run_filter(bank[i], model, traj.times, traj.inputs, traj.outputs, x0).transpose();
    return innovations;
}

}  // namespace battfdi
