#pragma once

#include "uavsim/geometry.hpp"
#include "uavsim/rng.hpp"

#include <optional>

namespace uavsim {

enum class MobilityModel { gauss_markov, random_walk, random_waypoint, static_hover, virtual_force };

enum class BoundaryPolicy { reflect, clamp };

struct MotionState {
    Vector3 position;
    double speed = 0.0;      // m/s
    double direction = 0.0;  // azimuth, [0, 2pi)
    double pitch = 0.0;      // [-pi/2, pi/2]
    std::optional<Vector3> current_waypoint; // random waypoint only
    double pause_remaining = 0.0;            // s, random waypoint dwell

    // Gauss-Markov reversion means. Direction mean flips with boundary
    // reflections so trajectories turn away from walls.
    double gm_mean_direction = 0.0;
    double gm_mean_pitch = 0.0;

    Vector3 velocity() const { return heading_vector(direction, pitch) * speed; }
};

struct MobilityParams {
    MobilityModel model = MobilityModel::gauss_markov;
    double update_interval = 0.1;  // s
    double alpha = 0.85;           // Gauss-Markov memory
    double mean_speed = 10.0;      // m/s, Gauss-Markov reversion target
    double speed_sigma = 1.0;      // m/s
    double direction_sigma = 0.1;  // rad
    double pitch_sigma = 0.05;     // rad
    double speed_min = 0.0;        // m/s
    double speed_max = 20.0;       // m/s
    double walk_pitch_limit = M_PI / 18.0;    // random walk pitch band
    double waypoint_arrival_radius = 10.0;    // m
    double pause_time = 0.0;                  // s
    Box3 bounds{{0, 0, 0}, {600, 600, 100}};
    BoundaryPolicy boundary = BoundaryPolicy::reflect;
};

// Returns the in-box position; `velocity` is updated in place when the
// policy mirrors an offending component (heading must be recomputed by the
// caller from the adjusted velocity).
Vector3 enforce_bounds(Vector3 pos, Vector3& velocity, const Box3& bounds, BoundaryPolicy policy);

MotionState gauss_markov_step(const MotionState& s, const MobilityParams& p, Rng& rng);
MotionState random_walk_step(const MotionState& s, const MobilityParams& p, Rng& rng);
MotionState random_waypoint_step(const MotionState& s, const MobilityParams& p, Rng& rng);

// Dispatch on p.model (static_hover returns s unchanged).
MotionState mobility_update(const MotionState& s, const MobilityParams& p, Rng& rng);

} // namespace uavsim
