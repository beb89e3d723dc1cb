#pragma once

#include "gaussmem/geometry.hpp"

#include <cstdint>
#include <vector>

namespace gaussmem {

// Semantic classes: 0 = empty, then ceiling, floor, wall, window, chair,
// bed, sofa, table, tvs, furniture, objects.
inline constexpr int kClassCount = 12;
inline constexpr int kEmptyClass = 0;

extern const char* const kClassNames[kClassCount];

using LogitVec = Eigen::Matrix<double, kClassCount, 1>;

struct SemanticGaussian {
    Vec3d mean = Vec3d::Zero();            // meters, world or camera frame per context
    Vec3d scale_raw = Vec3d::Zero();       // pre-activation
    Quatd rotation = Quatd::Identity();
    double opacity_raw = 0.0;              // pre-activation
    LogitVec logits = LogitVec::Zero();
    std::uint8_t tag = 0;                  // 1 once written back after a refinement
};

struct Aabb {
    Vec3d min = Vec3d::Zero();
    Vec3d max = Vec3d::Zero();

    Vec3d extent() const { return max - min; }
    Vec3d clamp(const Vec3d& p) const {
        return p.cwiseMax(min).cwiseMin(max);
    }
};

struct GaussianConfig {
    double s_min = 0.01;       // m, lower activated-scale bound
    double s_max = 0.08;       // m, upper activated-scale bound
    double interval = 0.16;    // m, lattice spacing of initial Gaussians
    int local_count = 16200;   // expected count for the default local box lattice
    bool random_init_logits = false;
    std::uint64_t init_seed = 0;
};

struct GaussianMemory {
    std::vector<SemanticGaussian> gaussians;  // world frame
    Aabb bounds;
    double interval = 0.16;
};

struct Activation {
    Vec3d scale = Vec3d::Zero();   // in [s_min, s_max]
    double opacity = 0.0;          // in (0, 1)
    LogitVec class_probs = LogitVec::Zero();
};

// Number of lattice cells along one axis: floor(extent / interval), with a
// relative epsilon so exact multiples (4.8 / 0.16 = 30) are not lost to
// floating-point division.
int lattice_cells(double extent, double interval);

double logistic(double x);
double logit(double p);

// Raw value whose activated scale equals s (s strictly inside [s_min, s_max]).
double scale_raw_for(double s, const GaussianConfig& cfg);

GaussianMemory init_memory_uniform(const Aabb& bounds, const GaussianConfig& cfg);

Activation activate(const SemanticGaussian& g, const GaussianConfig& cfg);

Mat3d covariance(const SemanticGaussian& g, const GaussianConfig& cfg);

struct FrustumSelection {
    std::vector<int> indices;
    std::vector<SemanticGaussian> view;  // camera frame copies
};

FrustumSelection select_frustum(const GaussianMemory& memory, const Pose3d& pose,
                                const Intrinsics& K, double z_near, double z_far);

// Transforms the updated camera-frame Gaussians back to world coordinates,
// clamps means to the memory bounds, and marks them with tag = 1. Gaussians
// not listed in `indices` are untouched.
void write_back(GaussianMemory& memory, const std::vector<int>& indices,
                const std::vector<SemanticGaussian>& updated, const Pose3d& pose);

}  // namespace gaussmem
