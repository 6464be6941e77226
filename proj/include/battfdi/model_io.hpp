#pragma once

#include <string>

#include "battfdi/cell_model.hpp"

namespace battfdi {

/// Versioned JSON container for a (possibly placed) lumped model. Matrices
/// are stored with 17 significant digits, which round-trips IEEE doubles
/// bit-for-bit.
void save_model(const std::string& path, const LumpedModel& model);
LumpedModel load_model(const std::string& path);

}  // namespace battfdi
