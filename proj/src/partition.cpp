#include "battfdi/partition.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>

namespace battfdi {

std::vector<std::vector<int>> Partition::zones() const {
    std::vector<std::vector<int>> out(K());
    for (int i = 0; i < N(); ++i) out[zone_of_node[i]].push_back(i);
    return out;
}

void Partition::validate() const {
    if (zone_of_node.empty()) throw std::invalid_argument("partition: no nodes assigned");
    const int k = K();
    std::vector<int> count(k, 0);
    for (int i = 0; i < N(); ++i) {
        const int z = zone_of_node[i];
        if (z < 0 || z >= k) throw std::invalid_argument("partition: zone label out of range");
        ++count[z];
    }
    for (int z = 0; z < k; ++z) {
        if (count[z] == 0) throw std::invalid_argument("partition: empty zone " + std::to_string(z));
        const int s = sensor_node[z];
        if (s < 0 || s >= N()) throw std::invalid_argument("partition: sensor index out of range");
        if (zone_of_node[s] != z)
            throw std::invalid_argument("partition: sensor of zone " + std::to_string(z) +
                                        " lies outside the zone");
    }
}

Partition Partition::canonical() const {
    // Relabel zones by order of their smallest member.
    std::vector<int> first(K(), N());
    for (int i = 0; i < N(); ++i) first[zone_of_node[i]] = std::min(first[zone_of_node[i]], i);
    std::vector<int> order(K());
    for (int z = 0; z < K(); ++z) order[z] = z;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return first[a] < first[b]; });
    std::vector<int> relabel(K());
    for (int r = 0; r < K(); ++r) relabel[order[r]] = r;

    Partition out;
    out.zone_of_node.resize(N());
    out.sensor_node.resize(K());
    for (int i = 0; i < N(); ++i) out.zone_of_node[i] = relabel[zone_of_node[i]];
    for (int z = 0; z < K(); ++z) out.sensor_node[relabel[z]] = sensor_node[z];
    return out;
}

std::string Partition::signature() const {
    const Partition c = canonical();
    std::string s;
    for (int i = 0; i < c.N(); ++i) {
        if (i) s += '.';
        s += std::to_string(c.zone_of_node[i]);
    }
    s += "|s";
    for (int z = 0; z < c.K(); ++z) {
        if (z) s += ',';
        s += std::to_string(c.sensor_node[z]);
    }
    return s;
}

Eigen::MatrixXd build_E(const Eigen::MatrixXd& Mo, const Partition& p) {
    p.validate();
    if (p.N() != Mo.cols())
        throw std::invalid_argument("build_E: partition must cover all Mo columns");
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(Mo.rows(), p.K());
    for (int r = 0; r < Mo.cols(); ++r) E.col(p.zone_of_node[r]) += Mo.col(r);
    return E;
}

Eigen::MatrixXd build_C(const Partition& p, int n_nodes) {
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(p.K(), n_nodes);
    for (int z = 0; z < p.K(); ++z) C(z, p.sensor_node[z]) = 1.0;
    return C;
}

void for_each_partition(int n, int k,
                        const std::function<void(const std::vector<int>&)>& fn) {
    if (n <= 0 || k <= 0 || k > n) return;
    // Restricted growth strings: a[i] <= 1 + max(a[0..i-1]), final max = k-1.
    std::vector<int> a(n, 0);
    std::function<void(int, int)> rec = [&](int i, int mx) {
        if (i == n) {
            if (mx == k - 1) fn(a);
            return;
        }
        // Cannot reach k blocks if too few positions remain.
        if (mx + (n - i) < k - 1 + 1) return;
        const int hi = std::min(mx + 1, k - 1);
        for (int z = 0; z <= hi; ++z) {
            a[i] = z;
            rec(i + 1, std::max(mx, z));
        }
    };
    a[0] = 0;
    rec(1, 0);
}

bool zones_contiguous(const std::vector<int>& zone_of_node, int nx, int ny) {
    const int n = nx * ny;
    if (static_cast<int>(zone_of_node.size()) != n) return false;
    std::vector<char> seen(n, 0);
    std::map<int, int> zone_sizes;
    for (int i = 0; i < n; ++i) ++zone_sizes[zone_of_node[i]];

    std::map<int, int> reached;
    for (int start = 0; start < n; ++start) {
        const int z = zone_of_node[start];
        if (seen[start] || reached.count(z)) continue;
        // Flood fill the component of `start` within zone z.
        int size = 0;
        std::queue<int> q;
        q.push(start);
        seen[start] = 1;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            ++size;
            const int m = u % nx, nrow = u / nx;
            const int cand[4] = {m > 0 ? u - 1 : -1, m + 1 < nx ? u + 1 : -1,
                                 nrow > 0 ? u - nx : -1, nrow + 1 < ny ? u + nx : -1};
            for (int v : cand) {
                if (v >= 0 && !seen[v] && zone_of_node[v] == z) {
                    seen[v] = 1;
                    q.push(v);
                }
            }
        }
        reached[z] = size;
    }
    for (auto& [z, size] : zone_sizes) {
        auto it = reached.find(z);
        if (it == reached.end() || it->second != size) return false;
    }
    return true;
}

}  // namespace battfdi
