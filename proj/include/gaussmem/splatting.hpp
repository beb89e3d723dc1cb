#pragma once

#include "gaussmem/gaussian.hpp"

#include <cstdint>
#include <vector>

namespace gaussmem {

struct GridGeometry {
    Vec3d origin = Vec3d::Zero();  // world frame, min corner
    Eigen::Vector3i dims = Eigen::Vector3i::Zero();
    double voxel_size = 0.08;

    std::int64_t voxel_count() const {
        return static_cast<std::int64_t>(dims.x()) * dims.y() * dims.z();
    }
    std::int64_t index(int x, int y, int z) const {
        return x + static_cast<std::int64_t>(dims.x()) * (y + static_cast<std::int64_t>(dims.y()) * z);
    }
    Vec3d center(int x, int y, int z) const {
        return origin + voxel_size * Vec3d(x + 0.5, y + 0.5, z + 0.5);
    }
    bool contains(int x, int y, int z) const {
        return x >= 0 && x < dims.x() && y >= 0 && y < dims.y() && z >= 0 && z < dims.z();
    }
    bool operator==(const GridGeometry& o) const {
        return origin == o.origin && dims == o.dims && voxel_size == o.voxel_size;
    }
};

// Dense semantic occupancy grid; labels indexed x + X*(y + Y*z).
struct VoxelGrid {
    GridGeometry geom;
    std::vector<std::uint8_t> labels;

    static VoxelGrid empty(const GridGeometry& geom) {
        VoxelGrid g;
        g.geom = geom;
        g.labels.assign(static_cast<std::size_t>(geom.voxel_count()), 0);
        return g;
    }
    std::uint8_t& at(int x, int y, int z) { return labels[geom.index(x, y, z)]; }
    std::uint8_t at(int x, int y, int z) const { return labels[geom.index(x, y, z)]; }
};

// Accumulated per-class mass per voxel: accum is (voxel_count * kClassCount),
// class-major within each voxel.
struct SemanticVolume {
    GridGeometry geom;
    std::vector<double> accum;

    static SemanticVolume zero(const GridGeometry& geom) {
        SemanticVolume v;
        v.geom = geom;
        v.accum.assign(static_cast<std::size_t>(geom.voxel_count()) * kClassCount, 0.0);
        return v;
    }
    double* voxel(std::int64_t i) { return accum.data() + i * kClassCount; }
    const double* voxel(std::int64_t i) const { return accum.data() + i * kClassCount; }
};

inline constexpr double kCutoffDisabled = 0.0;  // sentinel: cutoff_sigmas <= 0 disables the cutoff

// Evaluates w_i(v) = opacity_i * exp(-0.5 (v-m)^T Sigma^-1 (v-m)) at every
// voxel center and accumulates w_i * class_probs_i. With a finite cutoff,
// Gaussian i only reaches voxels with |v - m_i| <= cutoff_sigmas * max(scale_i).
// Deterministic for any thread count (each voxel is summed by one worker in
// index order).
SemanticVolume splat(const std::vector<SemanticGaussian>& gaussians,
                     const GridGeometry& geom, const GaussianConfig& cfg,
                     double cutoff_sigmas, int n_threads = 1);

// Reference implementation: same kernel, no cutoff, naive double loop with an
// independent linear-solve Mahalanobis path.
SemanticVolume splat_bruteforce(const std::vector<SemanticGaussian>& gaussians,
                                const GridGeometry& geom, const GaussianConfig& cfg);

// Per voxel: empty if total mass < tau_empty, else argmax over all classes
// (ties -> lowest class index).
VoxelGrid labels_from_volume(const SemanticVolume& vol, double tau_empty);

}  // namespace gaussmem
