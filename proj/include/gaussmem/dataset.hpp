#pragma once

#include "gaussmem/refinement.hpp"
#include "gaussmem/splatting.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gaussmem {

inline constexpr double kVoxelSize = 0.08;                  // m, global and local grids
inline const Eigen::Vector3i kLocalDims{60, 60, 36};        // 4.8 x 4.8 x 2.88 m box
inline constexpr double kLocalReach = 4.8;                  // m, box depth and frustum z_far
inline constexpr double kZNear = 1e-4;

using Mask = std::vector<std::uint8_t>;

struct CameraFrame {
    Intrinsics K;
    Pose3d pose;
    std::optional<Observation> obs;  // filled by raycast_render / render_scene
};

struct GlobalScene {
    std::string name;
    Vec3d extent = Vec3d::Zero();
    VoxelGrid grid;  // ground truth, origin at the world origin
    std::vector<CameraFrame> frames;

    Aabb bounds() const {
        return Aabb{grid.geom.origin,
                    grid.geom.origin + grid.geom.voxel_size * grid.geom.dims.cast<double>()};
    }
};

// The local prediction region: a 60x60x36 box whose voxels are a subset of
// the global lattice. `base` is the global voxel index of the box corner, so
// local voxel (i,j,k) and global voxel base+(i,j,k) share the same center.
struct LocalBox {
    Eigen::Vector3i base = Eigen::Vector3i::Zero();
    GridGeometry geom;
};

int ceil_cells(double extent, double voxel);

// Deterministic box-furniture room: floor layer, boundary walls, ceiling
// layer, 3-8 non-overlapping boxes from the movable classes.
GlobalScene gen_synthetic_scene(std::uint64_t seed, const Vec3d& extent);

// Ring of inward-facing poses with cycling pitch; regenerated with a derived
// seed until consecutive visibility masks overlap by >= 20% and the mask
// union covers >= 50% of the non-empty voxels.
std::vector<CameraFrame> gen_trajectory(const GlobalScene& scene, std::uint64_t seed,
                                        int n_frames = 30);

// Integer-stepping traversal through the ground-truth grid; the first
// non-empty voxel along each pixel ray yields its class and the metric
// z-depth a quarter of the way through the voxel (so back-projection lands
// strictly inside it). Rays that leave the grid or exceed z_far give depth 0.
Observation raycast_render(const GlobalScene& scene, const CameraFrame& frame,
                           double z_far = kLocalReach);

LocalBox local_box_for_frame(const CameraFrame& frame, const GridGeometry& global);

// Global voxels whose center lies inside both the local box and the frustum.
Mask visibility_mask(const CameraFrame& frame, const LocalBox& box,
                     const GridGeometry& global);

Mask splice_masks(const std::vector<Mask>& masks);

struct LabeledPoint {
    Vec3d position;
    std::uint8_t label;
};

// Majority class of the k nearest labeled points per voxel center; voxels
// farther than d_max from every point stay empty. Majority ties resolve to
// the nearest tied point, distance ties to the lowest point index.
VoxelGrid knn_label_transfer(const std::vector<LabeledPoint>& points,
                             const GridGeometry& target, int k = 1,
                             double d_max = 0.24);

// Scene directory: scene.json, occ_global.occg, frame_%03d.json and, once
// rendered, depth_%03d.f32 / sem_%03d.u8 / mask_%03d.bin.
void save_scene(const GlobalScene& scene, const std::string& dir);
GlobalScene load_scene(const std::string& dir);

// Fills every frame's observation in place (no-op for frames already rendered).
void render_scene(GlobalScene& scene);

// Writes depth/sem/mask files for all rendered frames.
void save_renders(const GlobalScene& scene, const std::string& dir);

}  // namespace gaussmem
