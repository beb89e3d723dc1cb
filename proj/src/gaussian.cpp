#include "gaussmem/gaussian.hpp"

#include "gaussmem/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace gaussmem {

const char* const kClassNames[kClassCount] = {
    "empty",  "ceiling", "floor", "wall",      "window",  "chair",
    "bed",    "sofa",    "table", "tvs",       "furniture", "objects"};

int lattice_cells(double extent, double interval) {
    return static_cast<int>(std::floor(extent / interval * (1.0 + 1e-12) + 1e-9));
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double logit(double p) { return std::log(p / (1.0 - p)); }

double scale_raw_for(double s, const GaussianConfig& cfg) {
    return logit((s - cfg.s_min) / (cfg.s_max - cfg.s_min));
}

GaussianMemory init_memory_uniform(const Aabb& bounds, const GaussianConfig& cfg) {
    const Vec3d extent = bounds.extent();
    const int nx = lattice_cells(extent.x(), cfg.interval);
    const int ny = lattice_cells(extent.y(), cfg.interval);
    const int nz = lattice_cells(extent.z(), cfg.interval);
    if (nx < 1 || ny < 1 || nz < 1) {
        throw std::invalid_argument("scene too small for Gaussian interval");
    }

    GaussianMemory mem;
    mem.bounds = bounds;
    mem.interval = cfg.interval;
    mem.gaussians.reserve(static_cast<std::size_t>(nx) * ny * nz);

    SplitMix64 rng(cfg.init_seed);
    for (int k = 0; k < nz; ++k) {
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) {
                SemanticGaussian g;
                g.mean = bounds.min + cfg.interval * Vec3d(i + 0.5, j + 0.5, k + 0.5);
                // scale_raw = 0 activates to (s_min + s_max) / 2; logits all
                // equal so softmax is the uniform distribution.
                if (cfg.random_init_logits) {
                    for (int c = 0; c < kClassCount; ++c) {
                        g.logits[c] = rng.uniform(-1.0, 1.0);
                    }
                }
                mem.gaussians.push_back(g);
            }
        }
    }
    return mem;
}

Activation activate(const SemanticGaussian& g, const GaussianConfig& cfg) {
    Activation a;
    for (int i = 0; i < 3; ++i) {
        a.scale[i] = cfg.s_min + (cfg.s_max - cfg.s_min) * logistic(g.scale_raw[i]);
    }
    a.opacity = logistic(g.opacity_raw);
    const double m = g.logits.maxCoeff();
    a.class_probs = (g.logits.array() - m).exp();
    a.class_probs /= a.class_probs.sum();
    return a;
}

Mat3d covariance(const SemanticGaussian& g, const GaussianConfig& cfg) {
    const Activation a = activate(g, cfg);
    const Mat3d R = rotation_matrix(g.rotation);
    return R * a.scale.cwiseProduct(a.scale).asDiagonal() * R.transpose();
}

FrustumSelection select_frustum(const GaussianMemory& memory, const Pose3d& pose,
                                const Intrinsics& K, double z_near, double z_far) {
    FrustumSelection sel;
    const Quatd pose_q(pose.rotation);
    const Quatd pose_q_inv = pose_q.conjugate();
    for (int i = 0; i < static_cast<int>(memory.gaussians.size()); ++i) {
        const SemanticGaussian& g = memory.gaussians[i];
        if (!in_frustum(g.mean, pose, K, z_near, z_far)) continue;
        SemanticGaussian v = g;
        v.mean = pose.world_to_camera(g.mean);
        v.rotation = compose_quaternions(pose_q_inv, g.rotation);
        sel.indices.push_back(i);
        sel.view.push_back(v);
    }
    return sel;
}

void write_back(GaussianMemory& memory, const std::vector<int>& indices,
                const std::vector<SemanticGaussian>& updated, const Pose3d& pose) {
    if (indices.size() != updated.size()) {
        throw std::invalid_argument("write_back: indices/updated size mismatch");
    }
    const Quatd pose_q(pose.rotation);
    for (std::size_t n = 0; n < indices.size(); ++n) {
        const int i = indices[n];
        if (i < 0 || i >= static_cast<int>(memory.gaussians.size())) {
            throw std::out_of_range("write_back: index out of range");
        }
        SemanticGaussian g = updated[n];
        g.mean = memory.bounds.clamp(pose.camera_to_world(g.mean));
        g.rotation = compose_quaternions(pose_q, g.rotation);
        g.tag = 1;
        memory.gaussians[i] = g;
    }
}

}  // namespace gaussmem
