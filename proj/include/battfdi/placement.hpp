#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "battfdi/cell_model.hpp"
#include "battfdi/diagnosability.hpp"
#include "battfdi/partition.hpp"

namespace battfdi {

struct SearchConfig {
    int zones{2};
    int exhaustive_limit{10};  ///< exhaustive enumeration up to this node count
    int restarts{32};          ///< multi-start count of the local search
    bool contiguous{true};     ///< restrict zones to 4-connected grid regions
    std::uint64_t seed{1};
    bool log_candidates{false};
    bool force_heuristic{false};  ///< skip the exhaustive path regardless of size
};

struct PlacementResult {
    bool feasible{false};
    std::string infeasibility_reason;
    Partition partition;
    Eigen::MatrixXd C;  ///< K x N
    Eigen::MatrixXd E;  ///< N x K
    double objective{0.0};  ///< sum of squared diagonal gains
    DiagnosabilityCertificate certificate;
    long candidates_evaluated{0};
    double wall_seconds{0.0};
    bool exhaustive{false};  ///< true when the result is a certified global optimum
    std::vector<std::pair<std::string, double>> candidate_log;  ///< (signature, objective)
};

/// Zone/sensor optimization: maximizes the sum of squared diagonal gains
/// G_ii of G = C(-A)^-1 E over partitions of the Mo columns into `zones`
/// non-empty zones with one sensor per zone, subject to the block rank
/// certificate, the one-entry-per-row structure of C and C_i E_i != 0.
/// Exhaustive below the size limit, seeded multi-start local search above
/// (moves: reassign one node's zone, relocate one sensor). Ties break on the
/// lexicographically smallest canonical signature.
PlacementResult optimize_placement(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Mo,
                                   const Grid& grid, const SearchConfig& config);

/// Single-sensor variant: E is the sum of all Mo columns; scans all N sensor
/// positions for the largest squared scalar gain.
PlacementResult optimize_single_sensor(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Mo,
                                       const Grid& grid);

std::string render_placement_report(const PlacementResult& result, const Grid& grid);
void write_candidate_csv(const std::string& path, const PlacementResult& result);

}  // namespace battfdi
