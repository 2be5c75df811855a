// cwlidar is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "cwl/kdtree.hpp"

#include <algorithm>
#include <cmath>

#include "cwl/errors.hpp"

namespace cwl {

namespace {

struct BoundEdge {
    double t;
    int tri;
    bool start;
};

} // namespace

KdTree KdTree::Build(std::span<const Aabb> boxes, const BuildParams &params) {
    if (boxes.empty())
        throw Error(ErrorCode::kData, "cannot build a k-d tree over an empty scene");
    KdTree tree;
    for (const Aabb &b : boxes) tree.bounds_.Grow(b);
    std::vector<int> tris(boxes.size());
    for (size_t i = 0; i < boxes.size(); ++i) tris[i] = static_cast<int>(i);
    int max_depth = static_cast<int>(
        std::lround(8.0 + 1.3 * std::log2(static_cast<double>(boxes.size()))));
    struct Builder {
        KdTree &tree;
        std::span<const Aabb> boxes;
        const BuildParams &params;
        int max_depth;

        int Run(const Aabb &node_bounds, std::vector<int> tris, int depth,
                int bad_refines) {
            int node_index = static_cast<int>(tree.nodes_.size());
            tree.nodes_.emplace_back();

            auto make_leaf = [&](const std::vector<int> &items) {
                Node &n = tree.nodes_[node_index];
                n.axis = 3;
                n.first = static_cast<int>(tree.items_.size());
                n.count = static_cast<int>(items.size());
                tree.items_.insert(tree.items_.end(), items.begin(), items.end());
            };

            if (static_cast<int>(tris.size()) <= params.max_leaf_size ||
                depth >= max_depth) {
                make_leaf(tris);
                return node_index;
            }

            // SAH sweep over candidate split planes taken from box edges.
            double best_cost = Aabb::kInf;
            int best_axis = -1;
            size_t best_edge = 0;
            double old_cost =
                static_cast<double>(params.intersect_cost) * tris.size();
            double inv_area = 1.0 / node_bounds.SurfaceArea();
            Vec3d diag = node_bounds.hi - node_bounds.lo;
            int axis = detailAxis(diag);
            std::vector<BoundEdge> edges;
            std::vector<BoundEdge> best_edges;

            for (int attempt = 0; attempt < 3; ++attempt) {
                edges.clear();
                edges.reserve(2 * tris.size());
                for (int tri : tris) {
                    edges.push_back({boxes[tri].lo[axis], tri, true});
                    edges.push_back({boxes[tri].hi[axis], tri, false});
                }
                std::sort(edges.begin(), edges.end(),
                          [](const BoundEdge &a, const BoundEdge &b) {
                              if (a.t != b.t) return a.t < b.t;
                              return a.start && !b.start;
                          });
                int below = 0, above = static_cast<int>(tris.size());
                for (size_t i = 0; i < edges.size(); ++i) {
                    if (!edges[i].start) --above;
                    double t = edges[i].t;
                    if (t > node_bounds.lo[axis] && t < node_bounds.hi[axis]) {
                        int oa0 = (axis + 1) % 3, oa1 = (axis + 2) % 3;
                        double below_area =
                            2.0 * (diag[oa0] * diag[oa1] +
                                   (t - node_bounds.lo[axis]) * (diag[oa0] + diag[oa1]));
                        double above_area =
                            2.0 * (diag[oa0] * diag[oa1] +
                                   (node_bounds.hi[axis] - t) * (diag[oa0] + diag[oa1]));
                        double pb = below_area * inv_area;
                        double pa = above_area * inv_area;
                        double bonus = (above == 0 || below == 0) ? params.empty_bonus : 0.0;
                        double cost = params.traversal_cost +
                                      params.intersect_cost * (1.0 - bonus) *
                                          (pb * below + pa * above);
                        if (cost < best_cost) {
                            best_cost = cost;
                            best_axis = axis;
                            best_edge = i;
                            best_edges = edges;
                        }
                    }
                    if (edges[i].start) ++below;
                }
                if (best_axis != -1) break;
                axis = (axis + 1) % 3;
            }

            if (best_cost > old_cost) ++bad_refines;
            if ((best_cost > 4.0 * old_cost && tris.size() < 16) || best_axis == -1 ||
                bad_refines == 3) {
                make_leaf(tris);
                return node_index;
            }

            double split = best_edges[best_edge].t;
            std::vector<int> below_tris, above_tris;
            for (size_t i = 0; i < best_edge; ++i)
                if (best_edges[i].start) below_tris.push_back(best_edges[i].tri);
            for (size_t i = best_edge + 1; i < best_edges.size(); ++i)
                if (!best_edges[i].start) above_tris.push_back(best_edges[i].tri);

            Aabb below_bounds = node_bounds, above_bounds = node_bounds;
            if (best_axis == 0) {
                below_bounds.hi.x = split;
                above_bounds.lo.x = split;
            } else if (best_axis == 1) {
                below_bounds.hi.y = split;
                above_bounds.lo.y = split;
            } else {
                below_bounds.hi.z = split;
                above_bounds.lo.z = split;
            }

            tris.clear();
            tris.shrink_to_fit();
            best_edges.clear();
            best_edges.shrink_to_fit();
            edges.clear();
            edges.shrink_to_fit();

            Run(below_bounds, std::move(below_tris), depth + 1, bad_refines);
            int above_index =
                Run(above_bounds, std::move(above_tris), depth + 1, bad_refines);
            Node &n = tree.nodes_[node_index];
            n.axis = best_axis;
            n.split = split;
            n.above_child = above_index;
            return node_index;
        }

        static int detailAxis(const Vec3d &d) {
            return (d.x > d.y) ? (d.x > d.z ? 0 : 2) : (d.y > d.z ? 1 : 2);
        }
    };

    Builder builder{tree, boxes, params, max_depth};
    builder.Run(tree.bounds_, std::move(tris), 0, 0);
    return tree;
}

int KdTree::leaf_count() const {
    int n = 0;
    for (const Node &node : nodes_)
        if (node.axis == 3) ++n;
    return n;
}

} // namespace cwl
