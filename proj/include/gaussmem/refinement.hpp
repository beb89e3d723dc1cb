#pragma once

#include "gaussmem/gaussian.hpp"

#include <functional>
#include <vector>

namespace gaussmem {

struct GaussianDelta {
    Vec3d d_mean = Vec3d::Zero();
    Vec3d d_scale_raw = Vec3d::Zero();
    Quatd d_rotation = Quatd::Identity();
    double d_opacity_raw = 0.0;
    LogitVec d_logits = LogitVec::Zero();
};

// Rendered (or externally supplied) depth + per-pixel class observation.
// depth is metric z-depth in meters, 0 where the ray hit nothing.
struct Observation {
    std::vector<float> depth;          // H*W row-major
    std::vector<std::uint8_t> semantics;  // H*W row-major
    Intrinsics K;
    Pose3d pose;

    float depth_at(int col, int row) const { return depth[static_cast<std::size_t>(row) * K.width + col]; }
    std::uint8_t sem_at(int col, int row) const { return semantics[static_cast<std::size_t>(row) * K.width + col]; }
};

// Per-stage damping factors theta in [0, 1], selected by the Gaussian's tag.
// Defaults follow the schedule: tagged Gaussians frozen-equivalent (theta 0)
// for two stages then damped by 0.5, untagged Gaussians never damped.
struct ConfidenceSchedule {
    std::vector<double> theta_tagged{0.0, 0.0, 0.5};
    std::vector<double> theta_untagged{0.0, 0.0, 0.0};
    int stages = 3;

    double theta(std::uint8_t tag, int stage) const {
        return tag ? theta_tagged[stage] : theta_untagged[stage];
    }
};

enum class DepthRelation { Front, Surface, Occluded, NoDepth };

struct RefinerParams {
    double delta_front = 0.04;    // m, half a voxel
    double band_behind = 0.24;    // m, three voxels
    double beta = 10.0;           // logit target magnitude
    double opacity_high_raw = 4.0;
    double opacity_low_raw = -4.0;
    double surface_scale = 0.05;  // m, target activated scale for surface Gaussians
};

// Nearest-pixel depth lookup; (u, v) clamped to the image. Pixel (i, j)
// covers [i, i+1) x [j, j+1).
double sample_depth(const Observation& obs, double u, double v);

DepthRelation classify_depth_relation(double z, double d, double delta_front,
                                      double band_behind);

// Deterministic depth-driven stand-in for a learned refiner. Gaussians in
// front of the observed depth become opaque empty-class evidence, Gaussians
// near the depth point move onto it with the observed class, occluded or
// unobserved Gaussians are left alone.
GaussianDelta oracle_delta(const SemanticGaussian& g_cam, const Observation& obs,
                           const RefinerParams& params, const GaussianConfig& cfg);

// Confidence damping: additive fields scaled by (1 - theta), rotation
// slerped from identity by (1 - theta).
GaussianDelta scale_delta(const GaussianDelta& d, double theta);

// Property update: add everything, compose the rotation on the left.
SemanticGaussian apply_delta(const SemanticGaussian& g, const GaussianDelta& d);

using Refiner = std::function<GaussianDelta(const SemanticGaussian&, const Observation&)>;

Refiner make_oracle_refiner(const RefinerParams& params, const GaussianConfig& cfg);

// Runs `schedule.stages` refinement passes over the camera-frame view.
// Output order matches input order.
std::vector<SemanticGaussian> refine_frustum(const std::vector<SemanticGaussian>& view,
                                             const std::vector<std::uint8_t>& tags,
                                             const Observation& obs,
                                             const ConfidenceSchedule& schedule,
                                             const Refiner& refiner);

}  // namespace gaussmem
