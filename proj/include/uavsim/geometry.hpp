#pragma once

#include <cmath>

namespace uavsim {

struct Vector3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vector3 operator+(const Vector3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vector3 operator-(const Vector3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vector3 operator*(double k) const { return {x * k, y * k, z * k}; }
    Vector3& operator+=(const Vector3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    bool operator==(const Vector3& o) const { return x == o.x && y == o.y && z == o.z; }

    double dot(const Vector3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }

    Vector3 normalized() const {
        const double n = norm();
        if (n == 0.0) return {0.0, 0.0, 0.0};
        return {x / n, y / n, z / n};
    }
};

inline Vector3 operator*(double k, const Vector3& v) { return v * k; }

inline double distance(const Vector3& a, const Vector3& b) { return (a - b).norm(); }

// Unit vector from spherical heading: azimuth in the xy-plane, pitch above it.
inline Vector3 heading_vector(double direction, double pitch) {
    const double cp = std::cos(pitch);
    return {cp * std::cos(direction), cp * std::sin(direction), std::sin(pitch)};
}

struct Box3 {
    Vector3 min;
    Vector3 max;

    bool contains(const Vector3& p) const {
        return p.x >= min.x && p.x <= max.x &&
               p.y >= min.y && p.y <= max.y &&
               p.z >= min.z && p.z <= max.z;
    }
};

} // namespace uavsim
