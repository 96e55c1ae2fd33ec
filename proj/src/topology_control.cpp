#include "uavsim/topology_control.hpp"

#include "uavsim/rng.hpp"

#include <algorithm>
#include <cmath>

namespace uavsim {

Vector3 virtual_force(const Vector3& self_pos, int self_id,
                      const std::vector<std::pair<int, Vector3>>& neighbors,
                      const ForceParams& p) {
    Vector3 total{0, 0, 0};
    for (const auto& [id, npos] : neighbors) {
        const Vector3 delta = npos - self_pos;
        const double d = delta.norm();
        if (p.interaction_radius > 0.0 && d > p.interaction_radius) continue;
        if (d == 0.0) {
            // Coincident pair: repel along a unit vector hashed from the ids
            // so both sides compute equal and opposite forces.
            const int lo = std::min(self_id, id);
            const int hi = std::max(self_id, id);
            Rng dir(Rng::derive_seed(0x746f706fULL, {static_cast<std::uint64_t>(lo),
                                                     static_cast<std::uint64_t>(hi)}));
            const double az = dir.uniform(0.0, 2.0 * M_PI);
            const double el = std::asin(dir.uniform(-1.0, 1.0));
            Vector3 u = heading_vector(az, el);
            if (self_id > id) u = u * -1.0;
            total += u * (p.spring_gain * p.desired_distance);
            continue;
        }
        const Vector3 unit = delta * (1.0 / d);
        total += unit * (p.spring_gain * (d - p.desired_distance));
    }
    return total;
}

MotionState apply_control_step(const MotionState& s, const Vector3& force,
                               const ForceParams& p, const Box3& bounds,
                               BoundaryPolicy policy) {
    MotionState n = s;
    const double magnitude = force.norm();
    if (magnitude == 0.0) {
        n.speed = 0.0;
        return n;
    }
    const double speed = std::min(magnitude * p.velocity_gain, p.max_step_speed);
    Vector3 vel = force.normalized() * speed;
    Vector3 pos = s.position + vel * p.control_interval;
    n.position = enforce_bounds(pos, vel, bounds, policy);
    n.speed = speed;
    const double vnorm = vel.norm();
    if (vnorm > 0.0) {
        n.direction = std::atan2(vel.y, vel.x);
        if (n.direction < 0.0) n.direction += 2.0 * M_PI;
        n.pitch = std::asin(std::clamp(vel.z / vnorm, -1.0, 1.0));
    }
    return n;
}

ConnectivityStats connectivity_stats(const std::vector<Vector3>& positions, double range) {
    const int n = static_cast<int>(positions.size());
    ConnectivityStats stats;
    if (n == 0) return stats;

    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (distance(positions[i], positions[j]) <= range) {
                ++stats.edge_count;
                const int a = find(i), b = find(j);
                if (a != b) parent[a] = b;
            }
        }
    }

    std::vector<int> size(n, 0);
    for (int i = 0; i < n; ++i) ++size[find(i)];
    for (int i = 0; i < n; ++i) {
        if (size[i] > 0) {
            ++stats.component_count;
            stats.largest_component_size = std::max(stats.largest_component_size, size[i]);
        }
    }
    return stats;
}

} // namespace uavsim
