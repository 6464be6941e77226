#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace battfdi {

/// Assignment of N fault modes (Mo columns, one per node here) to K zones,
/// with one sensor node per zone. Zones are disjoint, non-empty and cover
/// all modes; each zone's sensor lies inside the zone.
struct Partition {
    std::vector<int> zone_of_node;  ///< node -> zone in [0, K)
    std::vector<int> sensor_node;   ///< zone -> node index

    int K() const { return static_cast<int>(sensor_node.size()); }
    int N() const { return static_cast<int>(zone_of_node.size()); }
    bool empty() const { return sensor_node.empty(); }

    std::vector<std::vector<int>> zones() const;
    /// Throws std::invalid_argument on empty zones, out-of-range labels or a
    /// sensor outside its zone.
    void validate() const;
    /// Relabels zones by ascending smallest member so that equal partitions
    /// compare equal.
    Partition canonical() const;
    /// Stable text key of the canonical form, e.g. "0011|s2,3".
    std::string signature() const;
};

/// E_i = sum of the Mo columns assigned to zone i.
Eigen::MatrixXd build_E(const Eigen::MatrixXd& Mo, const Partition& p);

/// K x N binary selection matrix with row i picking the zone-i sensor node.
Eigen::MatrixXd build_C(const Partition& p, int n_nodes);

/// Enumerates every partition of {0..N-1} into exactly K non-empty unlabeled
/// blocks (restricted growth strings). The callback receives zone labels in
/// first-appearance order.
void for_each_partition(int n, int k, const std::function<void(const std::vector<int>&)>& fn);

/// True if every zone is 4-connected on an nx-by-ny grid.
bool zones_contiguous(const std::vector<int>& zone_of_node, int nx, int ny);

}  // namespace battfdi
