// cwlidar is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <array>
#include <cmath>

#include "cwl/dual.hpp"

namespace cwl {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Wraps an angle to (-pi, pi]. The branch is taken on the value track, so
/// the derivative is 1 everywhere away from the seam.
template <typename S> S WrapPi(S a) {
    S w = a - kTwoPi * floor((a + kPi) / kTwoPi);
    if (value_of(w) <= -kPi) w = w + kTwoPi;
    return w;
}

/// Wraps an angle to [0, 2*pi).
template <typename S> S WrapTwoPi(S a) {
    S w = a - kTwoPi * floor(a / kTwoPi);
    if (value_of(w) >= kTwoPi) w = w - kTwoPi;
    if (value_of(w) < 0.0) w = w + kTwoPi;
    return w;
}

template <typename S> struct Vec3 {
    S x{}, y{}, z{};

    Vec3() = default;
    Vec3(S x, S y, S z) : x(x), y(y), z(z) {}

    Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 operator*(S s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(S s) const { return {x / s, y / s, z / s}; }
    friend Vec3 operator*(S s, const Vec3 &v) { return v * s; }

    S operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

template <typename S> S dot(const Vec3<S> &a, const Vec3<S> &b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <typename S> Vec3<S> cross(const Vec3<S> &a, const Vec3<S> &b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <typename S> S norm(const Vec3<S> &v) { return sqrt(dot(v, v)); }

template <typename S> Vec3<S> normalized(const Vec3<S> &v) { return v / norm(v); }

template <typename S> Vec3<double> value_of(const Vec3<S> &v) {
    return {value_of(v.x), value_of(v.y), value_of(v.z)};
}

using Vec3d = Vec3<double>;

/// Planar rigid pose. Yaw is normalized to (-pi, pi] on construction.
template <typename S> struct PoseSE2 {
    S x{}, y{}, yaw{};

    PoseSE2() = default;
    PoseSE2(S x, S y, S yaw) : x(x), y(y), yaw(WrapPi(yaw)) {}
};

using PoseSE2d = PoseSE2<double>;

/// SE(2) distance with the yaw difference wrapped to (-pi, pi]; one meter
/// weighs the same as one radian.
inline double SE2Error(const PoseSE2d &a, const PoseSE2d &b) {
    double dx = a.x - b.x;
    double dy = a.y - b.y;
    double dyaw = WrapPi(a.yaw - b.yaw);
    return std::sqrt(dx * dx + dy * dy + dyaw * dyaw);
}

template <typename S> struct Mat3 {
    // Row-major.
    std::array<S, 9> m{};

    static Mat3 Identity() {
        Mat3 r;
        r.m = {S(1), S(0), S(0), S(0), S(1), S(0), S(0), S(0), S(1)};
        return r;
    }

    static Mat3 RotationZ(S angle) {
        S c = cos(angle), s = sin(angle);
        Mat3 r;
        r.m = {c, -s, S(0), s, c, S(0), S(0), S(0), S(1)};
        return r;
    }

    Vec3<S> operator*(const Vec3<S> &v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }

    Mat3 operator*(const Mat3 &o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                S acc = S(0);
                for (int k = 0; k < 3; ++k) acc += m[3 * i + k] * o.m[3 * k + j];
                r.m[3 * i + j] = acc;
            }
        return r;
    }

    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[3 * i + j] = m[3 * j + i];
        return r;
    }
};

/// Rigid transform in 3D; rotation is orthonormal with det +1.
template <typename S> struct Transform3 {
    Mat3<S> rotation = Mat3<S>::Identity();
    Vec3<S> translation{};

    static Transform3 FromSE2(const PoseSE2<S> &p) {
        Transform3 t;
        t.rotation = Mat3<S>::RotationZ(p.yaw);
        t.translation = {p.x, p.y, S(0)};
        return t;
    }

    Vec3<S> Point(const Vec3<S> &p) const { return rotation * p + translation; }
    Vec3<S> Direction(const Vec3<S> &d) const { return rotation * d; }

    Transform3 operator*(const Transform3 &o) const {
        Transform3 r;
        r.rotation = rotation * o.rotation;
        r.translation = rotation * o.translation + translation;
        return r;
    }

    Transform3 Inverse() const {
        Transform3 r;
        r.rotation = rotation.transposed();
        r.translation = -(r.rotation * translation);
        return r;
    }
};

} // namespace cwl
