// cwlidar is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cwl/linalg.hpp"

namespace cwl {

struct Aabb {
    static constexpr double kInf = 1e300;

    Vec3d lo{kInf, kInf, kInf};
    Vec3d hi{-kInf, -kInf, -kInf};

    void Grow(const Vec3d &p) {
        lo = {min(lo.x, p.x), min(lo.y, p.y), min(lo.z, p.z)};
        hi = {max(hi.x, p.x), max(hi.y, p.y), max(hi.z, p.z)};
    }
    void Grow(const Aabb &b) {
        Grow(b.lo);
        Grow(b.hi);
    }
    double SurfaceArea() const {
        Vec3d d = hi - lo;
        return 2.0 * (d.x * d.y + d.y * d.z + d.z * d.x);
    }
};

/// Axis-aligned BSP over triangle bounding boxes, built with the surface-area
/// heuristic. The structure is value-typed double geometry; queries on
/// differentiable rays traverse with the value track and evaluate exact hits
/// through the caller's visitor.
class KdTree {
  public:
    struct BuildParams {
        int max_leaf_size = 4;
        int intersect_cost = 80;
        int traversal_cost = 1;
        double empty_bonus = 0.5;
        // depth limit = round(8 + 1.3 * log2(N))
    };

    /// Throws Error(kData) on an empty triangle list.
    static KdTree Build(std::span<const Aabb> boxes, const BuildParams &params = {});

    const Aabb &bounds() const { return bounds_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    int leaf_count() const;

    /// Walks leaves front to back. The visitor receives the triangle indices
    /// of one leaf and returns the best hit distance known so far; traversal
    /// stops once every remaining node starts beyond that distance.
    template <typename Visitor>
    void Traverse(const Vec3d &origin, const Vec3d &direction, double t_min,
                  double t_max, Visitor &&visit) const;

  private:
    struct Node {
        // Interior: axis 0..2, split position, index of the above child
        // (below child is the next node in the array). Leaf: axis == 3.
        int axis = 3;
        double split = 0.0;
        int above_child = -1;
        int first = 0;
        int count = 0;
    };

    int BuildRecursive(std::span<const Aabb> boxes, const Aabb &node_bounds,
                       std::vector<int> &tris, int depth, int bad_refines,
                       const BuildParams &params);

    std::vector<Node> nodes_;
    std::vector<int> items_;
    Aabb bounds_;
};

template <typename Visitor>
void KdTree::Traverse(const Vec3d &origin, const Vec3d &direction, double t_min,
                      double t_max, Visitor &&visit) const {
    // Clip against the tree bounds.
    double t0 = t_min, t1 = t_max;
    Vec3d inv{1.0 / direction.x, 1.0 / direction.y, 1.0 / direction.z};
    for (int a = 0; a < 3; ++a) {
        double near = (bounds_.lo[a] - origin[a]) * inv[a];
        double far = (bounds_.hi[a] - origin[a]) * inv[a];
        if (near > far) std::swap(near, far);
        if (near > t0) t0 = near;
        if (far < t1) t1 = far;
        if (t0 > t1) return;
    }

    struct Todo {
        int node;
        double t0, t1;
    };
    Todo todo[64];
    int todo_count = 0;
    int node = 0;
    double best = t_max;

    while (true) {
        if (t0 > best) break;
        const Node &n = nodes_[node];
        if (n.axis == 3) {
            double b = visit(std::span<const int>(items_.data() + n.first,
                                                  static_cast<size_t>(n.count)));
            if (b < best) best = b;
            if (todo_count == 0) break;
            --todo_count;
            node = todo[todo_count].node;
            t0 = todo[todo_count].t0;
            t1 = todo[todo_count].t1;
            continue;
        }
        double t_plane = (n.split - origin[n.axis]) * inv[n.axis];
        int below = node + 1;
        int above = n.above_child;
        bool below_first = origin[n.axis] < n.split ||
                           (origin[n.axis] == n.split && direction[n.axis] <= 0);
        int first = below_first ? below : above;
        int second = below_first ? above : below;
        if (t_plane > t1 || t_plane <= 0) {
            node = first;
        } else if (t_plane < t0) {
            node = second;
        } else {
            todo[todo_count++] = {second, t_plane, t1};
            node = first;
            t1 = t_plane;
        }
    }
}

} // namespace cwl
