#include "uavsim/mobility.hpp"

#include <algorithm>
#include <cmath>

namespace uavsim {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double wrap_direction(double d) {
    d = std::fmod(d, kTwoPi);
    if (d < 0.0) d += kTwoPi;
    return d;
}

double clamp_pitch(double p) {
    return std::clamp(p, -M_PI / 2.0, M_PI / 2.0);
}

// Mirror x into [lo, hi] (single fold is enough for one step of travel).
double reflect1(double x, double lo, double hi, bool& flipped) {
    flipped = false;
    if (x < lo) { x = 2.0 * lo - x; flipped = true; }
    else if (x > hi) { x = 2.0 * hi - x; flipped = true; }
    return std::clamp(x, lo, hi);
}

// Recompute spherical heading from a velocity vector, preserving old angles
// at zero speed.
void set_heading_from_velocity(MotionState& s, const Vector3& v) {
    const double speed = v.norm();
    if (speed <= 0.0) return;
    s.direction = wrap_direction(std::atan2(v.y, v.x));
    s.pitch = clamp_pitch(std::asin(std::clamp(v.z / speed, -1.0, 1.0)));
}

} // namespace

Vector3 enforce_bounds(Vector3 pos, Vector3& velocity, const Box3& bounds, BoundaryPolicy policy) {
    if (policy == BoundaryPolicy::clamp) {
        pos.x = std::clamp(pos.x, bounds.min.x, bounds.max.x);
        pos.y = std::clamp(pos.y, bounds.min.y, bounds.max.y);
        pos.z = std::clamp(pos.z, bounds.min.z, bounds.max.z);
        return pos;
    }
    bool fx, fy, fz;
    pos.x = reflect1(pos.x, bounds.min.x, bounds.max.x, fx);
    pos.y = reflect1(pos.y, bounds.min.y, bounds.max.y, fy);
    pos.z = reflect1(pos.z, bounds.min.z, bounds.max.z, fz);
    if (fx) velocity.x = -velocity.x;
    if (fy) velocity.y = -velocity.y;
    if (fz) velocity.z = -velocity.z;
    return pos;
}

MotionState gauss_markov_step(const MotionState& s, const MobilityParams& p, Rng& rng) {
    MotionState n = s;
    const double a = p.alpha;
    const double noise = std::sqrt(std::max(0.0, 1.0 - a * a));

    n.speed = a * s.speed + (1.0 - a) * p.mean_speed + p.speed_sigma * noise * rng.normal();
    n.direction = a * s.direction + (1.0 - a) * s.gm_mean_direction +
                  p.direction_sigma * noise * rng.normal();
    n.pitch = a * s.pitch + (1.0 - a) * s.gm_mean_pitch +
              p.pitch_sigma * noise * rng.normal();

    n.speed = std::clamp(n.speed, p.speed_min, p.speed_max);
    n.pitch = clamp_pitch(n.pitch);

    Vector3 vel = heading_vector(n.direction, n.pitch) * n.speed;
    Vector3 pos = s.position + vel * p.update_interval;
    const Vector3 before = vel;
    n.position = enforce_bounds(pos, vel, p.bounds, p.boundary);
    if (!(vel == before)) {
        // Reflection: flip the reversion mean with the heading so the model
        // keeps steering away from the wall.
        set_heading_from_velocity(n, vel);
        Vector3 mean_vel = heading_vector(s.gm_mean_direction, s.gm_mean_pitch);
        if (vel.x != before.x) mean_vel.x = -mean_vel.x;
        if (vel.y != before.y) mean_vel.y = -mean_vel.y;
        if (vel.z != before.z) mean_vel.z = -mean_vel.z;
        n.gm_mean_direction = wrap_direction(std::atan2(mean_vel.y, mean_vel.x));
        n.gm_mean_pitch = clamp_pitch(std::asin(std::clamp(mean_vel.z, -1.0, 1.0)));
    } else {
        n.direction = wrap_direction(n.direction);
    }
    return n;
}

MotionState random_walk_step(const MotionState& s, const MobilityParams& p, Rng& rng) {
    MotionState n = s;
    n.direction = rng.uniform(0.0, kTwoPi);
    n.pitch = rng.uniform(-p.walk_pitch_limit, p.walk_pitch_limit);
    n.speed = rng.uniform(p.speed_min, p.speed_max);

    Vector3 vel = heading_vector(n.direction, n.pitch) * n.speed;
    Vector3 pos = s.position + vel * p.update_interval;
    const Vector3 before = vel;
    n.position = enforce_bounds(pos, vel, p.bounds, p.boundary);
    if (!(vel == before)) set_heading_from_velocity(n, vel);
    return n;
}

MotionState random_waypoint_step(const MotionState& s, const MobilityParams& p, Rng& rng) {
    MotionState n = s;

    if (n.pause_remaining > 0.0) {
        n.pause_remaining = std::max(0.0, n.pause_remaining - p.update_interval);
        n.speed = 0.0;
        return n;
    }

    if (!n.current_waypoint ||
        distance(n.position, *n.current_waypoint) <= p.waypoint_arrival_radius) {
        if (n.current_waypoint && p.pause_time > 0.0) {
            n.current_waypoint.reset();
            n.pause_remaining = p.pause_time;
            n.speed = 0.0;
            return n;
        }
        n.current_waypoint = Vector3{
            rng.uniform(p.bounds.min.x, p.bounds.max.x),
            rng.uniform(p.bounds.min.y, p.bounds.max.y),
            rng.uniform(p.bounds.min.z, p.bounds.max.z),
        };
        n.speed = rng.uniform(p.speed_min, p.speed_max);
    }

    const Vector3 to_wp = *n.current_waypoint - n.position;
    const double dist = to_wp.norm();
    if (dist > 0.0) {
        // Clamp the step so the UAV never overshoots past the waypoint.
        const double step = std::min(n.speed * p.update_interval, dist);
        n.position = n.position + to_wp.normalized() * step;
        set_heading_from_velocity(n, to_wp);
    }
    return n;
}

MotionState mobility_update(const MotionState& s, const MobilityParams& p, Rng& rng) {
    switch (p.model) {
        case MobilityModel::gauss_markov: return gauss_markov_step(s, p, rng);
        case MobilityModel::random_walk: return random_walk_step(s, p, rng);
        case MobilityModel::random_waypoint: return random_waypoint_step(s, p, rng);
        case MobilityModel::static_hover:
        case MobilityModel::virtual_force:
            return s;
    }
    return s;
}

} // namespace uavsim
