#include "battfdi/cell_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace battfdi {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

CellGeometry CellGeometry::from_dimensions(double length_m, double breadth_m, double depth_m) {
    CellGeometry g;
    g.length_m = length_m;
    g.breadth_m = breadth_m;
    g.depth_m = depth_m;
    g.surface_area_m2 = length_m * breadth_m;
    g.volume_m3 = g.surface_area_m2 * depth_m;
    g.validate();
    return g;
}

void CellGeometry::validate() const {
    require(length_m > 0.0, "geometry: length_M must be positive");
    require(breadth_m > 0.0, "geometry: breadth_N must be positive");
    require(depth_m > 0.0, "geometry: depth_p must be positive");
    require(depth_m < length_m && depth_m < breadth_m,
            "geometry: depth_p must be smaller than both in-plane dimensions");
    require(std::abs(volume_m3 - surface_area_m2 * depth_m) <=
                1e-9 * std::max(volume_m3, surface_area_m2 * depth_m),
            "geometry: volume_vc inconsistent with surface_area_As * depth_p");
}

void ThermalParams::validate() const {
    require(density_kg_m3 > 0.0, "params: rho must be positive");
    require(heat_capacity_J_kgK > 0.0, "params: C_p must be positive");
    require(conductivity_W_mK > 0.0, "params: k must be positive");
    require(h_transfer_W_m2K >= 0.0, "params: h_o must be non-negative");
}

std::vector<int> Grid::neighbors(int i) const {
    std::vector<int> out;
    const int m = x_of(i), n = y_of(i);
    if (m > 1) out.push_back(i - 1);
    if (m < nx) out.push_back(i + 1);
    if (n > 1) out.push_back(i - nx);
    if (n < ny) out.push_back(i + nx);
    return out;
}

Grid build_grid(const CellGeometry& geometry, int nx, int ny) {
    geometry.validate();
    require(nx >= 1, "grid: nx must be at least 1");
    require(ny >= 1, "grid: ny must be at least 1");
    Grid g;
    g.nx = nx;
    g.ny = ny;
    g.dx_m = geometry.length_m / nx;
    g.dy_m = geometry.breadth_m / ny;
    return g;
}

OcvCurve OcvCurve::affine(double v_at_0, double v_at_1) {
    OcvCurve c;
    c.points = {{0.0, v_at_0}, {1.0, v_at_1}};
    return c;
}

double OcvCurve::at(double soc) const {
    if (points.size() < 2) throw std::domain_error("ocv: curve needs at least two points");
    if (soc < soc_min() || soc > soc_max())
        throw std::domain_error("ocv: soc " + std::to_string(soc) + " outside curve domain [" +
                                std::to_string(soc_min()) + ", " + std::to_string(soc_max()) + "]");
    auto hi = std::lower_bound(points.begin(), points.end(), soc,
                               [](const auto& p, double s) { return p.first < s; });
    if (hi == points.begin()) return hi->second;
    if (hi == points.end()) return points.back().second;
    auto lo = std::prev(hi);
    const double w = (soc - lo->first) / (hi->first - lo->first);
    return lo->second + w * (hi->second - lo->second);
}

void ElectricalState::validate(int node_count) const {
    require(capacity_As > 0.0, "electrical: capacity_Q must be positive");
    require(soc >= 0.0 && soc <= 1.0, "electrical: soc must lie in [0, 1]");
    if (g_weights.size() > 0) {
        require(static_cast<int>(g_weights.size()) == node_count,
                "electrical: g_weights size must match node count");
        require((g_weights.array() >= 0.0).all(), "electrical: g_weights must be non-negative");
        require(std::abs(g_weights.mean() - 1.0) < 1e-9,
                "electrical: g_weights must average to 1");
    }
}

SocStepResult soc_step(const ElectricalState& elec, double dt_s) {
    require(dt_s > 0.0, "soc_step: dt must be positive");
    SocStepResult r;
    r.soc = elec.soc - elec.applied_current_A * dt_s / elec.capacity_As;
    if (r.soc < 0.0) {
        r.soc = 0.0;
        r.clamped = true;
    } else if (r.soc > 1.0) {
        r.soc = 1.0;
        r.clamped = true;
    }
    return r;
}

Eigen::VectorXd heat_generation(const ElectricalState& elec,
                                const Eigen::VectorXd& node_temps_K,
                                const ThermalParams& params,
                                const CellGeometry& geometry) {
    const double e_ocv = elec.ocv.at(elec.soc);
    const double e_term = e_ocv - elec.applied_current_A * elec.internal_resistance_ohm;
    return heat_generation(elec, node_temps_K, params, geometry, e_term);
}

Eigen::VectorXd heat_generation(const ElectricalState& elec,
                                const Eigen::VectorXd& node_temps_K,
                                const ThermalParams& params,
                                const CellGeometry& geometry,
                                double e_term_V) {
    const int n = static_cast<int>(node_temps_K.size());
    const double e_ocv = elec.ocv.at(elec.soc);
    const double ja = elec.applied_current_A;
    Eigen::VectorXd g = elec.g_weights.size() == n ? elec.g_weights : Eigen::VectorXd::Ones(n);
    Eigen::VectorXd q(n);
    for (int i = 0; i < n; ++i) {
        q(i) = g(i) * ja * (e_ocv - e_term_V - node_temps_K(i) * params.entropic_gamma_V_K) /
               geometry.volume_m3;
    }
    return q;
}

namespace {

/// Per-node boundary bookkeeping shared by A and B assembly. For each
/// direction the node either couples to two interior neighbours (1/d^2
/// each), or to one doubled neighbour plus a Robin term from eliminating the
/// ghost node, or (single-node axis) to Robin terms on both sides with the
/// vanished neighbour couplings cancelling out of the diagonal.
struct NodeStencil {
    double diag = 0.0;            // before k/(rho Cp) scaling, without -As*ho
    double ambient = 0.0;         // gamma part of the ambient column, without k factor
    std::vector<std::pair<int, double>> couplings;
};

NodeStencil stencil_for(const Grid& grid, const ThermalParams& p, int i) {
    NodeStencil s;
    const int m = grid.x_of(i), n = grid.y_of(i);
    const double dx = grid.dx_m, dy = grid.dy_m;

    // x direction
    if (grid.nx == 1) {
        s.diag += -2.0 * (p.gamma_x0_per_m - p.gamma_xM_per_m) / dx;
        s.ambient += 2.0 * (p.gamma_x0_per_m - p.gamma_xM_per_m) / dx;
    } else if (m == 1) {
        s.couplings.emplace_back(i + 1, 2.0 / (dx * dx));
        s.diag += -2.0 * (1.0 / (dx * dx) + p.gamma_x0_per_m / dx);
        s.ambient += 2.0 * p.gamma_x0_per_m / dx;
    } else if (m == grid.nx) {
        s.couplings.emplace_back(i - 1, 2.0 / (dx * dx));
        s.diag += -2.0 * (1.0 / (dx * dx) - p.gamma_xM_per_m / dx);
        s.ambient += -2.0 * p.gamma_xM_per_m / dx;
    } else {
        s.couplings.emplace_back(i - 1, 1.0 / (dx * dx));
        s.couplings.emplace_back(i + 1, 1.0 / (dx * dx));
        s.diag += -2.0 / (dx * dx);
    }

    // y direction
    if (grid.ny == 1) {
        s.diag += -2.0 * (p.gamma_y0_per_m - p.gamma_yN_per_m) / dy;
        s.ambient += 2.0 * (p.gamma_y0_per_m - p.gamma_yN_per_m) / dy;
    } else if (n == 1) {
        s.couplings.emplace_back(i + grid.nx, 2.0 / (dy * dy));
        s.diag += -2.0 * (1.0 / (dy * dy) + p.gamma_y0_per_m / dy);
        s.ambient += 2.0 * p.gamma_y0_per_m / dy;
    } else if (n == grid.ny) {
        s.couplings.emplace_back(i - grid.nx, 2.0 / (dy * dy));
        s.diag += -2.0 * (1.0 / (dy * dy) - p.gamma_yN_per_m / dy);
        s.ambient += -2.0 * p.gamma_yN_per_m / dy;
    } else {
        s.couplings.emplace_back(i - grid.nx, 1.0 / (dy * dy));
        s.couplings.emplace_back(i + grid.nx, 1.0 / (dy * dy));
        s.diag += -2.0 / (dy * dy);
    }
    return s;
}

}  // namespace

Eigen::MatrixXd assemble_A(const Grid& grid, const ThermalParams& params,
                           const CellGeometry& geometry) {
    params.validate();
    const int n = grid.node_count();
    const double as_ho = geometry.surface_area_m2 * params.h_transfer_W_m2K;
    const double scale = params.conductivity_W_mK / params.rho_cp();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const NodeStencil s = stencil_for(grid, params, i);
        A(i, i) = scale * (s.diag - as_ho);
        for (const auto& [j, c] : s.couplings) A(i, j) = scale * c;
    }
    return A;
}

Eigen::MatrixXd assemble_B(const Grid& grid, const ThermalParams& params,
                           const CellGeometry& geometry) {
    params.validate();
    const int n = grid.node_count();
    const double k = params.conductivity_W_mK;
    const double as_ho = geometry.surface_area_m2 * params.h_transfer_W_m2K;
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n + 1);
    B.leftCols(n) = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i) {
        const NodeStencil s = stencil_for(grid, params, i);
        B(i, n) = k * s.ambient + k * as_ho;
    }
    B /= params.rho_cp();
    return B;
}

std::vector<int> LumpedModel::sensor_nodes() const {
    std::vector<int> out;
    for (int r = 0; r < C.rows(); ++r) {
        for (int c = 0; c < C.cols(); ++c) {
            if (C(r, c) != 0.0) {
                out.push_back(c);
                break;
            }
        }
    }
    return out;
}

void LumpedModel::apply_placement(const Partition& p) {
    p.validate();
    if (p.N() != Mo.cols())
        throw std::invalid_argument("apply_placement: partition does not cover Mo columns");
    partition = p;
    C = build_C(p, n());
    E = build_E(Mo, p);
}

LumpedModel build_lumped_model(const CellGeometry& geometry, const ThermalParams& params,
                               int nx, int ny) {
    LumpedModel m;
    m.geometry = geometry;
    m.params = params;
    m.grid = build_grid(geometry, nx, ny);
    m.A = assemble_A(m.grid, params, geometry);
    m.B = assemble_B(m.grid, params, geometry);
    m.Mo = Eigen::MatrixXd::Identity(m.grid.node_count(), m.grid.node_count());
    m.C.resize(0, m.grid.node_count());
    m.E.resize(m.grid.node_count(), 0);

    Eigen::EigenSolver<Eigen::MatrixXd> es(m.A, /*computeEigenvectors=*/false);
    m.spectral_abscissa = es.eigenvalues().real().maxCoeff();
    if (!(m.spectral_abscissa < 0.0)) {
        throw std::runtime_error("model: A is not Hurwitz (max eigenvalue real part " +
                                 std::to_string(m.spectral_abscissa) + ")");
    }
    return m;
}

}  // namespace battfdi
