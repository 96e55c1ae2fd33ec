#include "uavsim/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace uavsim {

const char* to_string(RoutingProtocolId id) {
    switch (id) {
        case RoutingProtocolId::greedy: return "greedy";
        case RoutingProtocolId::dsdv: return "dsdv";
        case RoutingProtocolId::opar: return "opar";
        case RoutingProtocolId::q_routing: return "q_routing";
    }
    return "?";
}

void NeighborTable::upsert(int id, const Vector3& pos, const Vector3& vel, SimTime now) {
    NeighborEntry& e = entries_[id];
    e.uav_id = id;
    e.position = pos;
    e.velocity = vel;
    e.last_heard = now;
}

const NeighborEntry* NeighborTable::get(int id, SimTime now) const {
    auto it = entries_.find(id);
    if (it == entries_.end() || expired(it->second, now)) return nullptr;
    return &it->second;
}

std::vector<NeighborEntry> NeighborTable::alive(SimTime now) const {
    std::vector<NeighborEntry> out;
    out.reserve(entries_.size());
    for (const auto& [id, e] : entries_) {
        if (!expired(e, now)) out.push_back(e);
    }
    return out;
}

std::vector<int> NeighborTable::evict_expired(SimTime now) {
    std::vector<int> lost;
    for (auto it = entries_.begin(); it != entries_.end();) {
        if (expired(it->second, now)) {
            lost.push_back(it->first);
            it = entries_.erase(it);
        } else {
            ++it;
        }
    }
    return lost;
}

const DsdvEntry* DsdvTable::get(int destination) const {
    auto it = routes_.find(destination);
    return it == routes_.end() ? nullptr : &it->second;
}

bool DsdvTable::install(const DsdvEntry& entry, SimTime now) {
    auto it = routes_.find(entry.destination);
    if (it != routes_.end() && entry.sequence_number < it->second.sequence_number) {
        ++violations_;
        return false;
    }
    DsdvEntry e = entry;
    e.installed_at = now;
    routes_[entry.destination] = e;
    return true;
}

std::vector<DsdvEntry> DsdvTable::all() const {
    std::vector<DsdvEntry> out;
    out.reserve(routes_.size());
    for (const auto& [dst, e] : routes_) out.push_back(e);
    return out;
}

double link_lifetime(const Vector3& p_i, const Vector3& v_i,
                     const Vector3& p_j, const Vector3& v_j, double range) {
    const Vector3 dp = p_i - p_j;
    const Vector3 dv = v_i - v_j;
    const double a = dv.norm2();
    if (a == 0.0) return std::numeric_limits<double>::infinity();
    const double b = 2.0 * dp.dot(dv);
    const double c = dp.norm2() - range * range;
    // c <= 0 inside the range, so the discriminant is non-negative and the
    // larger root is the separation time.
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return std::numeric_limits<double>::infinity();
    const double t = (-b + std::sqrt(disc)) / (2.0 * a);
    return std::max(0.0, t);
}

std::vector<int> opar_compute_path(const WorldSnapshot& snap, int src, int dst,
                                   double per_hop_traversal_s) {
    const int n = static_cast<int>(snap.positions.size());
    if (src < 0 || dst < 0 || src >= n || dst >= n) return {};
    if (src == dst) return {src};

    struct Cost {
        int hops = std::numeric_limits<int>::max();
        double length = std::numeric_limits<double>::infinity();
        bool operator<(const Cost& o) const {
            if (hops != o.hops) return hops < o.hops;
            return length < o.length;
        }
    };

    auto edge_ok = [&](int u, int v, int depth, bool constrained) {
        if (!snap.alive.empty() && (!snap.alive[u] || !snap.alive[v])) return false;
        const double d = distance(snap.positions[u], snap.positions[v]);
        if (d > snap.comm_range) return false;
        if (!constrained) return true;
        const double lifetime = link_lifetime(snap.positions[u], snap.velocities[u],
                                              snap.positions[v], snap.velocities[v],
                                              snap.comm_range);
        // Link `depth` (1-based along the path) must survive until the packet
        // has crossed it: depth traversal times from now.
        return lifetime >= per_hop_traversal_s * static_cast<double>(depth);
    };

    auto search = [&](bool constrained) -> std::vector<int> {
        std::vector<Cost> best(n);
        std::vector<int> prev(n, -1);
        std::vector<char> settled(n, 0);
        best[src] = {0, 0.0};

        struct QItem {
            Cost cost;
            int node;
            bool operator>(const QItem& o) const {
                if (o.cost < cost) return true;
                if (cost < o.cost) return false;
                return node > o.node;
            }
        };
        std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> pq;
        pq.push({best[src], src});

        while (!pq.empty()) {
            const QItem item = pq.top();
            pq.pop();
            const int u = item.node;
            if (settled[u]) continue;
            settled[u] = 1;
            if (u == dst) break;
            for (int v = 0; v < n; ++v) {
                if (v == u || settled[v]) continue;
                if (!edge_ok(u, v, best[u].hops + 1, constrained)) continue;
                const Cost cand{best[u].hops + 1,
                                best[u].length + distance(snap.positions[u], snap.positions[v])};
                if (cand < best[v]) {
                    best[v] = cand;
                    prev[v] = u;
                    pq.push({cand, v});
                }
            }
        }

        if (!settled[dst]) return {};
        std::vector<int> path;
        for (int at = dst; at != -1; at = prev[at]) path.push_back(at);
        std::reverse(path.begin(), path.end());
        return path;
    };

    std::vector<int> path = search(true);
    if (path.empty()) path = search(false);
    return path;
}

std::unique_ptr<RoutingProtocol> make_routing_protocol(RoutingEnv env) {
    switch (env.params.protocol) {
        case RoutingProtocolId::greedy: return std::make_unique<GreedyRouting>(std::move(env));
        case RoutingProtocolId::dsdv: return std::make_unique<DsdvRouting>(std::move(env));
        case RoutingProtocolId::opar: return std::make_unique<OparRouting>(std::move(env));
        case RoutingProtocolId::q_routing: return std::make_unique<QRouting>(std::move(env));
    }
    return nullptr;
}

} // namespace uavsim
