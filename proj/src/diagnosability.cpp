#include "battfdi/diagnosability.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace battfdi {

namespace {

Eigen::PartialPivLU<Eigen::MatrixXd> checked_lu(const Eigen::Ref<const Eigen::MatrixXd>& A) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    if (smin <= A.rows() * smax * std::numeric_limits<double>::epsilon()) {
        Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
        Eigen::Index worst;
        es.eigenvalues().cwiseAbs().minCoeff(&worst);
        std::ostringstream msg;
        msg << "steady_state_gain: A is numerically singular (eigenvalue "
            << es.eigenvalues()(worst).real();
        if (es.eigenvalues()(worst).imag() != 0.0)
            msg << (es.eigenvalues()(worst).imag() > 0 ? "+" : "") << es.eigenvalues()(worst).imag()
                << "i";
        msg << ")";
        throw std::runtime_error(msg.str());
    }
    return Eigen::PartialPivLU<Eigen::MatrixXd>(A);
}

}  // namespace

Eigen::MatrixXd steady_state_gain(const Eigen::Ref<const Eigen::MatrixXd>& A,
                                  const Eigen::Ref<const Eigen::MatrixXd>& C,
                                  const Eigen::Ref<const Eigen::MatrixXd>& E) {
    auto lu = checked_lu(-A);
    return C * lu.solve(E);
}

bool check_detectable(const Eigen::Ref<const Eigen::MatrixXd>& A,
                      const Eigen::Ref<const Eigen::MatrixXd>& C,
                      const Eigen::Ref<const Eigen::MatrixXd>& E, int fault_index) {
    if (fault_index < 0 || fault_index >= E.cols())
        throw std::out_of_range("check_detectable: fault index out of range");
    auto lu = checked_lu(Eigen::MatrixXd(A));
    const Eigen::MatrixXd CAinv = C * lu.inverse();
    const double response = (CAinv * E.col(fault_index)).lpNorm<Eigen::Infinity>();
    const double floor = 1e-10 * CAinv.lpNorm<Eigen::Infinity>() *
                         E.col(fault_index).lpNorm<Eigen::Infinity>();
    return response > floor;
}

IsolabilityResult check_isolable(const Eigen::Ref<const Eigen::MatrixXd>& A,
                                 const Eigen::Ref<const Eigen::MatrixXd>& C,
                                 const Eigen::Ref<const Eigen::MatrixXd>& E) {
    const int n = static_cast<int>(A.rows());
    const int k = static_cast<int>(E.cols());
    if (C.rows() != k && !(k == 0 && C.rows() == 0))
        throw std::invalid_argument("check_isolable: C rows must match E columns");
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n + C.rows(), n + k);
    block.topLeftCorner(n, n) = -A;
    block.topRightCorner(n, k) = E;
    block.bottomLeftCorner(C.rows(), n) = C;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(block);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    const double thresh = std::max(block.rows(), block.cols()) * smax *
                          std::numeric_limits<double>::epsilon();
    IsolabilityResult r;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > thresh) {
            ++r.rank_value;
            r.smallest_retained_sv = sv(i);
        }
    }
    r.isolable = (r.rank_value == n + k);
    return r;
}

bool DiagnosabilityCertificate::all_detectable() const {
    for (bool d : detectable_per_fault)
        if (!d) return false;
    return true;
}

DiagnosabilityCertificate certify(const Eigen::Ref<const Eigen::MatrixXd>& A,
                                  const Eigen::Ref<const Eigen::MatrixXd>& C,
                                  const Eigen::Ref<const Eigen::MatrixXd>& E) {
    DiagnosabilityCertificate cert;
    cert.gain = steady_state_gain(A, C, E);
    for (int i = 0; i < E.cols(); ++i)
        cert.detectable_per_fault.push_back(check_detectable(A, C, E, i));
    const IsolabilityResult iso = check_isolable(A, C, E);
    cert.isolable = iso.isolable;
    cert.rank_value = iso.rank_value;
    cert.smallest_retained_sv = iso.smallest_retained_sv;
    return cert;
}

std::string render_certificate(const DiagnosabilityCertificate& cert) {
    std::ostringstream out;
    out << "diagnosability certificate\n";
    out << "  faults: " << cert.detectable_per_fault.size() << "\n";
    for (size_t i = 0; i < cert.detectable_per_fault.size(); ++i)
        out << "  fault " << i + 1 << ": "
            << (cert.detectable_per_fault[i] ? "detectable" : "NOT detectable") << "\n";
    out << "  isolable: " << (cert.isolable ? "yes" : "no") << " (rank " << cert.rank_value
        << ", smallest retained singular value " << cert.smallest_retained_sv << ")\n";
    out << "  steady-state gain G = C(-A)^-1 E:\n";
    for (int i = 0; i < cert.gain.rows(); ++i) {
        out << "   ";
        for (int j = 0; j < cert.gain.cols(); ++j) out << " " << cert.gain(i, j);
        out << "\n";
    }
    return out.str();
}

}  // namespace battfdi
