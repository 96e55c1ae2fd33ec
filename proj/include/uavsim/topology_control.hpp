#pragma once

#include "uavsim/geometry.hpp"
#include "uavsim/mobility.hpp"

#include <utility>
#include <vector>

namespace uavsim {

struct ForceParams {
    double desired_distance = 174.0;  // m, spring rest length
    double spring_gain = 1.0;         // force units per metre of stretch
    double velocity_gain = 0.05;      // m/s per force unit
    double max_step_speed = 10.0;     // m/s
    double control_interval = 0.5;    // s
    double interaction_radius = 249.0;// m, defaults to the comm range
};

// Net spring force on a node: attractive beyond desired_distance, repulsive
// inside it. Coincident neighbors repel along a deterministic pseudo-random
// direction derived from the id pair.
Vector3 virtual_force(const Vector3& self_pos, int self_id,
                      const std::vector<std::pair<int, Vector3>>& neighbors,
                      const ForceParams& p);

// Force-as-velocity integration with speed saturation and bounds handling.
MotionState apply_control_step(const MotionState& s, const Vector3& force,
                               const ForceParams& p, const Box3& bounds,
                               BoundaryPolicy policy);

struct ConnectivityStats {
    int component_count = 0;
    int edge_count = 0;
    int largest_component_size = 0;
};

ConnectivityStats connectivity_stats(const std::vector<Vector3>& positions, double range);

} // namespace uavsim
