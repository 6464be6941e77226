#include "battfdi/params_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace battfdi {

ElectricalState CellConfig::make_electrical(double soc) const {
    ElectricalState e;
    e.soc = soc;
    e.capacity_As = capacity_As;
    e.internal_resistance_ohm = internal_resistance_ohm;
    e.ocv = OcvCurve::affine(ocv_soc0_V, ocv_soc1_V);
    return e;
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

CellConfig load_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("params: cannot open " + path);

    CellConfig cfg;
    double length = cfg.geometry.length_m, breadth = cfg.geometry.breadth_m,
           depth = cfg.geometry.depth_m;

    std::map<std::string, double*> keys = {
        {"length_M", &length},
        {"breadth_N", &breadth},
        {"depth_p", &depth},
        {"rho", &cfg.params.density_kg_m3},
        {"C_p", &cfg.params.heat_capacity_J_kgK},
        {"k", &cfg.params.conductivity_W_mK},
        {"h_o", &cfg.params.h_transfer_W_m2K},
        {"gamma_x0", &cfg.params.gamma_x0_per_m},
        {"gamma_M", &cfg.params.gamma_xM_per_m},
        {"gamma_y0", &cfg.params.gamma_y0_per_m},
        {"gamma_N", &cfg.params.gamma_yN_per_m},
        {"Theta_amb", &cfg.params.theta_ambient_K},
        {"Gamma", &cfg.params.entropic_gamma_V_K},
        {"capacity_Q", &cfg.capacity_As},
        {"R_int", &cfg.internal_resistance_ohm},
        {"ocv_soc0", &cfg.ocv_soc0_V},
        {"ocv_soc1", &cfg.ocv_soc1_V},
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("params: expected key = value at " + path + ":" +
                                     std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto it = keys.find(key);
        if (it == keys.end())
            throw std::runtime_error("params: unknown key '" + key + "' at " + path + ":" +
                                     std::to_string(lineno));
        try {
            size_t used = 0;
            *it->second = std::stod(value, &used);
            if (trim(value.substr(used)) != "")
                throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw std::runtime_error("params: bad numeric value for '" + key + "' at " + path +
                                     ":" + std::to_string(lineno));
        }
    }

    cfg.geometry = CellGeometry::from_dimensions(length, breadth, depth);
    cfg.params.validate();
    if (cfg.capacity_As <= 0.0) throw std::runtime_error("params: capacity_Q must be positive");
    return cfg;
}

void write_params_file(const std::string& path, const CellConfig& cfg) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("params: cannot write " + path);
    out.precision(17);
    out << "# cell geometry (m)\n";
    out << "length_M = " << cfg.geometry.length_m << "\n";
    out << "breadth_N = " << cfg.geometry.breadth_m << "\n";
    out << "depth_p = " << cfg.geometry.depth_m << "\n";
    out << "# thermal\n";
    out << "rho = " << cfg.params.density_kg_m3 << "\n";
    out << "C_p = " << cfg.params.heat_capacity_J_kgK << "\n";
    out << "k = " << cfg.params.conductivity_W_mK << "\n";
    out << "h_o = " << cfg.params.h_transfer_W_m2K << "\n";
    out << "gamma_x0 = " << cfg.params.gamma_x0_per_m << "\n";
    out << "gamma_M = " << cfg.params.gamma_xM_per_m << "\n";
    out << "gamma_y0 = " << cfg.params.gamma_y0_per_m << "\n";
    out << "gamma_N = " << cfg.params.gamma_yN_per_m << "\n";
    out << "Theta_amb = " << cfg.params.theta_ambient_K << "\n";
    out << "Gamma = " << cfg.params.entropic_gamma_V_K << "\n";
    out << "# electrical\n";
    out << "capacity_Q = " << cfg.capacity_As << "\n";
    out << "R_int = " << cfg.internal_resistance_ohm << "\n";
    out << "ocv_soc0 = " << cfg.ocv_soc0_V << "\n";
    out << "ocv_soc1 = " << cfg.ocv_soc1_V << "\n";
}

}  // namespace battfdi
