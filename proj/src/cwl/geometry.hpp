// cwlidar is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <array>
#include <limits>
#include <optional>
#include <vector>

#include "cwl/linalg.hpp"

namespace cwl {

inline constexpr double kRayInfinity = std::numeric_limits<double>::infinity();
// Secondary rays start this far along their direction so they cannot re-hit
// the surface that spawned them. Scene scale is ~1 m.
inline constexpr double kSecondaryRayEpsilon = 1e-4;

template <typename S> struct Ray {
    Vec3<S> origin;
    Vec3<S> direction; // unit
    double t_min = 0.0;
    double t_max = kRayInfinity;
};

template <typename S> struct Triangle {
    Vec3<S> p0, p1, p2;
    int material_id = 0;
};

template <typename S> struct TriangleMesh {
    std::vector<Vec3<S>> vertices;
    std::vector<std::array<int, 3>> triangles;
    int material_id = 0;
};

template <typename S> struct TriangleHit {
    S t;
    S b0, b1, b2; // barycentric
};

template <typename S> struct Hit {
    S t;
    Vec3<S> point;
    Vec3<S> normal; // unit, oriented against the incoming ray
    int material_id = 0;
    int triangle_index = 0;
    S b0, b1, b2;
};

namespace detail {

inline int MaxDimension(const Vec3d &v) {
    double ax = std::fabs(v.x), ay = std::fabs(v.y), az = std::fabs(v.z);
    return (ax > ay) ? (ax > az ? 0 : 2) : (ay > az ? 1 : 2);
}

template <typename S> Vec3<S> Permute(const Vec3<S> &v, int kx, int ky, int kz) {
    return {v[kx], v[ky], v[kz]};
}

} // namespace detail

/// Watertight ray-triangle intersection (shear-and-permute formulation).
/// Edge functions that land exactly on zero are recomputed in extended
/// precision so rays crossing a shared edge or vertex of adjacent triangles
/// cannot slip between them. Branches follow the value track; the returned
/// t and barycentrics carry derivatives.
template <typename S>
std::optional<TriangleHit<S>> IntersectTriangle(const Ray<S> &ray, const Vec3<S> &p0,
                                                const Vec3<S> &p1, const Vec3<S> &p2) {
    // Translate so the ray origin is at the coordinate origin, then permute
    // axes so the dominant direction component is z.
    Vec3<S> p0t = p0 - ray.origin;
    Vec3<S> p1t = p1 - ray.origin;
    Vec3<S> p2t = p2 - ray.origin;

    int kz = detail::MaxDimension(value_of(ray.direction));
    int kx = kz + 1 == 3 ? 0 : kz + 1;
    int ky = kx + 1 == 3 ? 0 : kx + 1;
    Vec3<S> d = detail::Permute(ray.direction, kx, ky, kz);
    p0t = detail::Permute(p0t, kx, ky, kz);
    p1t = detail::Permute(p1t, kx, ky, kz);
    p2t = detail::Permute(p2t, kx, ky, kz);

    // Shear so the ray maps onto +z.
    S sx = -d.x / d.z;
    S sy = -d.y / d.z;
    S sz = S(1.0) / d.z;
    p0t.x += sx * p0t.z;
    p0t.y += sy * p0t.z;
    p1t.x += sx * p1t.z;
    p1t.y += sy * p1t.z;
    p2t.x += sx * p2t.z;
    p2t.y += sy * p2t.z;

    S e0 = p1t.x * p2t.y - p1t.y * p2t.x;
    S e1 = p2t.x * p0t.y - p2t.y * p0t.x;
    S e2 = p0t.x * p1t.y - p0t.y * p1t.x;

    // Exact-zero edge functions get the extended-precision fallback.
    if (value_of(e0) == 0.0 || value_of(e1) == 0.0 || value_of(e2) == 0.0) {
        auto re = [](const Vec3<S> &a, const Vec3<S> &b) {
            long double ax = value_of(a.x), ay = value_of(a.y);
            long double bx = value_of(b.x), by = value_of(b.y);
            return static_cast<double>(ax * by - ay * bx);
        };
        if (value_of(e0) == 0.0) e0 = S(re(p1t, p2t));
        if (value_of(e1) == 0.0) e1 = S(re(p2t, p0t));
        if (value_of(e2) == 0.0) e2 = S(re(p0t, p1t));
    }

    double e0v = value_of(e0), e1v = value_of(e1), e2v = value_of(e2);
    if ((e0v < 0 || e1v < 0 || e2v < 0) && (e0v > 0 || e1v > 0 || e2v > 0))
        return std::nullopt;
    S det = e0 + e1 + e2;
    double detv = value_of(det);
    if (detv == 0.0) return std::nullopt;

    p0t.z *= sz;
    p1t.z *= sz;
    p2t.z *= sz;
    S t_scaled = e0 * p0t.z + e1 * p1t.z + e2 * p2t.z;
    double tsv = value_of(t_scaled);
    if (detv < 0 && (tsv >= ray.t_min * detv || tsv < ray.t_max * detv))
        return std::nullopt;
    if (detv > 0 && (tsv <= ray.t_min * detv || tsv > ray.t_max * detv))
        return std::nullopt;

    S inv_det = S(1.0) / det;
    TriangleHit<S> hit;
    hit.b0 = e0 * inv_det;
    hit.b1 = e1 * inv_det;
    hit.b2 = e2 * inv_det;
    hit.t = t_scaled * inv_det;
    return hit;
}

/// Geometric normal oriented against the ray, plus the interpolated point.
template <typename S>
Hit<S> MakeHit(const Ray<S> &ray, const Triangle<S> &tri, int triangle_index,
               const TriangleHit<S> &th) {
    Hit<S> h;
    h.t = th.t;
    h.b0 = th.b0;
    h.b1 = th.b1;
    h.b2 = th.b2;
    h.point = tri.p0 * th.b0 + tri.p1 * th.b1 + tri.p2 * th.b2;
    Vec3<S> n = normalized(cross(tri.p1 - tri.p0, tri.p2 - tri.p0));
    if (value_of(dot(n, ray.direction)) > 0.0) n = -n;
    h.normal = n;
    h.material_id = tri.material_id;
    h.triangle_index = triangle_index;
    return h;
}

/// Nearest hit by linear scan; ties broken by lowest triangle index. This is
/// both the no-acceleration path and the oracle the k-d tree is checked
/// against.
template <typename S>
std::optional<Hit<S>> IntersectLinear(const Ray<S> &ray,
                                      const std::vector<Triangle<S>> &triangles) {
    std::optional<Hit<S>> best;
    double best_t = ray.t_max;
    for (int i = 0; i < static_cast<int>(triangles.size()); ++i) {
        auto th = IntersectTriangle(ray, triangles[i].p0, triangles[i].p1,
                                    triangles[i].p2);
        if (!th) continue;
        double tv = value_of(th->t);
        if (tv < best_t || (tv == best_t && (!best || i < best->triangle_index))) {
            best_t = tv;
            best = MakeHit(ray, triangles[i], i, *th);
        }
    }
    return best;
}

} // namespace cwl
