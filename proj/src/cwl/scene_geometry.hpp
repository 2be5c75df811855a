// cwlidar is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "cwl/geometry.hpp"
#include "cwl/kdtree.hpp"

namespace cwl {

/// Immutable triangle soup plus its acceleration structure. The tree is
/// always built over the value track of the vertices, so the double and dual
/// instantiations traverse identically.
template <typename S> struct SceneGeometry {
    std::vector<Triangle<S>> triangles;
    KdTree tree;
};

template <typename S>
SceneGeometry<S> BuildSceneGeometry(std::vector<Triangle<S>> triangles,
                                    const KdTree::BuildParams &params = {}) {
    std::vector<Aabb> boxes(triangles.size());
    for (size_t i = 0; i < triangles.size(); ++i) {
        boxes[i].Grow(value_of(triangles[i].p0));
        boxes[i].Grow(value_of(triangles[i].p1));
        boxes[i].Grow(value_of(triangles[i].p2));
    }
    SceneGeometry<S> geom;
    geom.tree = KdTree::Build(boxes, params);
    geom.triangles = std::move(triangles);
    return geom;
}

/// Globally nearest hit through the k-d tree; t strictly minimal, ties broken
/// by lowest triangle index. Agrees exactly with IntersectLinear.
template <typename S>
std::optional<Hit<S>> IntersectScene(const Ray<S> &ray, const SceneGeometry<S> &scene) {
    std::optional<Hit<S>> best;
    double best_t = ray.t_max;
    Vec3d o = value_of(ray.origin);
    Vec3d d = value_of(ray.direction);
    scene.tree.Traverse(o, d, ray.t_min, ray.t_max, [&](std::span<const int> leaf) {
        for (int i : leaf) {
            const Triangle<S> &tri = scene.triangles[i];
            auto th = IntersectTriangle(ray, tri.p0, tri.p1, tri.p2);
            if (!th) continue;
            double tv = value_of(th->t);
            if (tv < best_t ||
                (tv == best_t && (!best || i < best->triangle_index))) {
                best_t = tv;
                best = MakeHit(ray, tri, i, *th);
            }
        }
        return best_t;
    });
    return best;
}

} // namespace cwl
