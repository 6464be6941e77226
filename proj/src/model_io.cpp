#include "battfdi/model_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace battfdi {

namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw std::runtime_error(std::string("model file: ") + what +
                                                " must be an array of rows");
    const int rows = static_cast<int>(j.size());
    if (rows == 0) return Eigen::MatrixXd(0, 0);
    const int cols = static_cast<int>(j[0].size());
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j[i].size()) != cols)
            throw std::runtime_error(std::string("model file: ragged rows in ") + what);
        for (int c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
    }
    return m;
}

}  // namespace

void save_model(const std::string& path, const LumpedModel& model) {
    json j;
    j["format"] = "battfdi-model";
    j["version"] = 1;
    j["grid"] = {{"nx", model.grid.nx},
                 {"ny", model.grid.ny},
                 {"dx_m", model.grid.dx_m},
                 {"dy_m", model.grid.dy_m}};
    j["geometry"] = {{"length_m", model.geometry.length_m},
                     {"breadth_m", model.geometry.breadth_m},
                     {"depth_m", model.geometry.depth_m},
                     {"surface_area_m2", model.geometry.surface_area_m2},
                     {"volume_m3", model.geometry.volume_m3}};
    j["params"] = {{"rho", model.params.density_kg_m3},
                   {"C_p", model.params.heat_capacity_J_kgK},
                   {"k", model.params.conductivity_W_mK},
                   {"h_o", model.params.h_transfer_W_m2K},
                   {"gamma_x0", model.params.gamma_x0_per_m},
                   {"gamma_M", model.params.gamma_xM_per_m},
                   {"gamma_y0", model.params.gamma_y0_per_m},
                   {"gamma_N", model.params.gamma_yN_per_m},
                   {"Theta_amb", model.params.theta_ambient_K},
                   {"Gamma", model.params.entropic_gamma_V_K}};
    j["A"] = matrix_to_json(model.A);
    j["B"] = matrix_to_json(model.B);
    j["Mo"] = matrix_to_json(model.Mo);
    j["spectral_abscissa"] = model.spectral_abscissa;
    if (!model.partition.empty()) {
        j["placement"] = {{"zone_of_node", model.partition.zone_of_node},
                          {"sensor_node", model.partition.sensor_node}};
        j["C"] = matrix_to_json(model.C);
        j["E"] = matrix_to_json(model.E);
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("model file: cannot write " + path);
    out << j.dump(1) << "\n";
}

LumpedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("model file: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("model file: parse error in " + path + ": " + e.what());
    }
    if (j.value("format", "") != "battfdi-model")
        throw std::runtime_error("model file: unrecognized format in " + path);
    if (j.value("version", 0) != 1)
        throw std::runtime_error("model file: unsupported version in " + path);

    LumpedModel m;
    m.grid.nx = j["grid"]["nx"].get<int>();
    m.grid.ny = j["grid"]["ny"].get<int>();
    m.grid.dx_m = j["grid"]["dx_m"].get<double>();
    m.grid.dy_m = j["grid"]["dy_m"].get<double>();
    const auto& g = j["geometry"];
    m.geometry.length_m = g["length_m"].get<double>();
    m.geometry.breadth_m = g["breadth_m"].get<double>();
    m.geometry.depth_m = g["depth_m"].get<double>();
    m.geometry.surface_area_m2 = g["surface_area_m2"].get<double>();
    m.geometry.volume_m3 = g["volume_m3"].get<double>();
    const auto& p = j["params"];
    m.params.density_kg_m3 = p["rho"].get<double>();
    m.params.heat_capacity_J_kgK = p["C_p"].get<double>();
    m.params.conductivity_W_mK = p["k"].get<double>();
    m.params.h_transfer_W_m2K = p["h_o"].get<double>();
    m.params.gamma_x0_per_m = p["gamma_x0"].get<double>();
    m.params.gamma_xM_per_m = p["gamma_M"].get<double>();
    m.params.gamma_y0_per_m = p["gamma_y0"].get<double>();
    m.params.gamma_yN_per_m = p["gamma_N"].get<double>();
    m.params.theta_ambient_K = p["Theta_amb"].get<double>();
    m.params.entropic_gamma_V_K = p["Gamma"].get<double>();
    m.A = matrix_from_json(j["A"], "A");
    m.B = matrix_from_json(j["B"], "B");
    m.Mo = matrix_from_json(j["Mo"], "Mo");
    m.spectral_abscissa = j["spectral_abscissa"].get<double>();
    if (j.contains("placement")) {
        m.partition.zone_of_node = j["placement"]["zone_of_node"].get<std::vector<int>>();
        m.partition.sensor_node = j["placement"]["sensor_node"].get<std::vector<int>>();
        m.C = matrix_from_json(j["C"], "C");
        m.E = matrix_from_json(j["E"], "E");
    } else {
        m.C.resize(0, m.A.rows());
        m.E.resize(m.A.rows(), 0);
    }
    return m;
}

}  // namespace battfdi
