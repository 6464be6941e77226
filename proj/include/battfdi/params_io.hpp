#pragma once

#include <string>

#include "battfdi/cell_model.hpp"

namespace battfdi {

/// Everything the parameter file configures: cell geometry, thermal
/// constants and the electrical side of the heat-generation model.
struct CellConfig {
    CellGeometry geometry{CellGeometry::from_dimensions(0.060, 0.162, 0.006)};
    ThermalParams params;
    double capacity_As{36000.0};
    double internal_resistance_ohm{0.002};
    double ocv_soc0_V{2.75};
    double ocv_soc1_V{4.2};

    ElectricalState make_electrical(double soc = 1.0) const;
};

/// Parses the key = value parameter file ('#' comments). Unknown keys and
/// malformed lines are rejected with the line number; invalid values are
/// rejected with the field name.
CellConfig load_params_file(const std::string& path);
void write_params_file(const std::string& path, const CellConfig& config);

}  // namespace battfdi
