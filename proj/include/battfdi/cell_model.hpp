#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "battfdi/partition.hpp"

namespace battfdi {

/// Planar cell geometry. The x axis runs along the length, y along the
/// breadth; the depth is the thin transverse dimension.
struct CellGeometry {
    double length_m{0.0};
    double breadth_m{0.0};
    double depth_m{0.0};
    double surface_area_m2{0.0};  ///< one face, length * breadth
    double volume_m3{0.0};        ///< surface_area * depth

    static CellGeometry from_dimensions(double length_m, double breadth_m, double depth_m);
    void validate() const;
};

/// Thermal constants of the lumped model. Boundary coefficients follow the
/// convention that a positive gamma at a low edge (x=0, y=0) and a negative
/// gamma at a high edge (x=M, y=N) both dissipate heat to ambient.
struct ThermalParams {
    double density_kg_m3{2000.0};
    double heat_capacity_J_kgK{1019.99};
    double conductivity_W_mK{5.99};
    double h_transfer_W_m2K{15.0};
    double gamma_x0_per_m{7.9746};
    double gamma_xM_per_m{-7.9746};
    double gamma_y0_per_m{7.9746};
    double gamma_yN_per_m{-2.3339};
    double theta_ambient_K{298.15};
    double entropic_gamma_V_K{0.0};

    double rho_cp() const { return density_kg_m3 * heat_capacity_J_kgK; }
    void validate() const;
};

/// Uniform rectangular node grid. Node (m, n), 1-based, sits at linear index
/// (n-1)*nx + m: x-major ordering, so node i couples to i+1 in x and to i+nx
/// in y.
struct Grid {
    int nx{0};
    int ny{0};
    double dx_m{0.0};
    double dy_m{0.0};

    int node_count() const { return nx * ny; }
    /// 0-based linear index of 1-based grid coordinates.
    int index(int m, int n) const { return (n - 1) * nx + (m - 1); }
    int x_of(int i) const { return i % nx + 1; }
    int y_of(int i) const { return i / nx + 1; }
    /// 4-neighbourhood in linear indices (0-based).
    std::vector<int> neighbors(int i) const;
    /// Volume of one node sub-domain given the cell depth.
    double node_volume_m3(double depth_m) const { return dx_m * dy_m * depth_m; }
};

Grid build_grid(const CellGeometry& geometry, int nx, int ny);

/// Open-circuit voltage as a piecewise-linear map soc -> volts.
struct OcvCurve {
    std::vector<std::pair<double, double>> points;  // (soc, volts), soc ascending

    static OcvCurve affine(double v_at_0, double v_at_1);
    /// Throws std::domain_error outside the tabulated soc range.
    double at(double soc) const;
    double soc_min() const { return points.front().first; }
    double soc_max() const { return points.back().first; }
};

struct ElectricalState {
    double soc{1.0};
    double capacity_As{36000.0};        ///< ampere-seconds
    double applied_current_A{0.0};      ///< positive = discharge
    OcvCurve ocv{OcvCurve::affine(2.75, 4.2)};
    double internal_resistance_ohm{0.002};
    Eigen::VectorXd g_weights;          ///< per-node heat distribution, mean 1

    void validate(int node_count) const;
};

struct SocStepResult {
    double soc{0.0};
    bool clamped{false};
};

/// Coulomb counting: soc' = soc - J*dt/Q, clamped to [0, 1].
SocStepResult soc_step(const ElectricalState& elec, double dt_s);

/// Per-node volumetric heat generation (W/m^3) at the given node
/// temperatures. In simulation mode the terminal voltage is the open-circuit
/// voltage minus the ohmic drop J*R_int.
Eigen::VectorXd heat_generation(const ElectricalState& elec,
                                const Eigen::VectorXd& node_temps_K,
                                const ThermalParams& params,
                                const CellGeometry& geometry);

/// Same, but with an externally supplied terminal voltage (data replay).
Eigen::VectorXd heat_generation(const ElectricalState& elec,
                                const Eigen::VectorXd& node_temps_K,
                                const ThermalParams& params,
                                const CellGeometry& geometry,
                                double e_term_V);

/// State matrix of the lumped ODE, d(T)/dt = A T + B u. Off-diagonal
/// couplings are k/(rho*Cp) times 1/dx^2 (interior) or 2/dx^2 (boundary,
/// after ghost-node elimination through the Robin conditions), and
/// correspondingly in y. Every diagonal carries the surface-loss term
/// -As*h_o inside the k/(rho*Cp) scaling.
Eigen::MatrixXd assemble_A(const Grid& grid, const ThermalParams& params,
                           const CellGeometry& geometry);

/// Input matrix B = (1/(rho*Cp)) [I_N | b], N x (N+1). The first N columns
/// accept per-node volumetric heat, the last column the ambient temperature.
/// The ambient column is the exact negative row sum of A, so a uniform state
/// at ambient with zero heat is a fixed point to rounding error.
Eigen::MatrixXd assemble_B(const Grid& grid, const ThermalParams& params,
                           const CellGeometry& geometry);

/// The state-space quadruple plus grid metadata. C/E/partition are empty
/// until a sensor placement is attached.
struct LumpedModel {
    Eigen::MatrixXd A;         ///< N x N, 1/s
    Eigen::MatrixXd B;         ///< N x (N+1)
    Eigen::MatrixXd C;         ///< K x N binary sensor selection (may be 0 x N)
    Eigen::MatrixXd Mo;        ///< N x F fault distribution (default identity)
    Eigen::MatrixXd E;         ///< N x K zonal fault map (may be N x 0)
    Partition partition;       ///< zone assignment backing E (may be empty)
    Grid grid;
    CellGeometry geometry;
    ThermalParams params;
    double spectral_abscissa{0.0};  ///< max real part of eig(A)

    int n() const { return static_cast<int>(A.rows()); }
    int num_sensors() const { return static_cast<int>(C.rows()); }
    std::vector<int> sensor_nodes() const;
    /// Attach a placement: builds C from sensor rows and E from Mo via the
    /// partition, and stores the partition.
    void apply_placement(const Partition& p);
};

/// Assembles A and B, verifies the Hurwitz property numerically, and returns
/// the model with Mo = I_N. Throws std::runtime_error if any eigenvalue of A
/// has a non-negative real part.
LumpedModel build_lumped_model(const CellGeometry& geometry,
                               const ThermalParams& params, int nx, int ny);

}  // namespace battfdi
