#include "gaussmem/refinement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gaussmem {

double sample_depth(const Observation& obs, double u, double v) {
    const int col = std::clamp(static_cast<int>(std::floor(u)), 0, obs.K.width - 1);
    const int row = std::clamp(static_cast<int>(std::floor(v)), 0, obs.K.height - 1);
    return obs.depth_at(col, row);
}

DepthRelation classify_depth_relation(double z, double d, double delta_front,
                                      double band_behind) {
    if (d == 0.0) return DepthRelation::NoDepth;
    if (z < d - delta_front) return DepthRelation::Front;
    if (z <= d + band_behind) return DepthRelation::Surface;
    return DepthRelation::Occluded;
}

GaussianDelta oracle_delta(const SemanticGaussian& g_cam, const Observation& obs,
                           const RefinerParams& params, const GaussianConfig& cfg) {
    GaussianDelta delta;
    const auto px = project_to_pixel(g_cam.mean, obs.K);
    if (px.behind) return delta;
    if (px.u < 0.0 || px.u >= obs.K.width || px.v < 0.0 || px.v >= obs.K.height) {
        return delta;  // outside the image: no evidence for this Gaussian
    }
    const double d = sample_depth(obs, px.u, px.v);
    switch (classify_depth_relation(px.z, d, params.delta_front, params.band_behind)) {
        case DepthRelation::Front: {
            LogitVec target = LogitVec::Zero();
            target[kEmptyClass] = params.beta;
            delta.d_logits = target - g_cam.logits;
            delta.d_opacity_raw = -params.opacity_low_raw - g_cam.opacity_raw;
            break;
        }
        case DepthRelation::Surface: {
            const int col = std::clamp(static_cast<int>(std::floor(px.u)), 0, obs.K.width - 1);
            const int row = std::clamp(static_cast<int>(std::floor(px.v)), 0, obs.K.height - 1);
            LogitVec target = LogitVec::Zero();
            target[obs.sem_at(col, row)] = params.beta;
            delta.d_logits = target - g_cam.logits;
            delta.d_opacity_raw = params.opacity_high_raw - g_cam.opacity_raw;
            delta.d_mean = pixel_ray(px.u, px.v, obs.K) * d - g_cam.mean;
            const double raw = scale_raw_for(params.surface_scale, cfg);
            delta.d_scale_raw = Vec3d::Constant(raw) - g_cam.scale_raw;
            break;
        }
        case DepthRelation::Occluded:
        case DepthRelation::NoDepth:
            break;
    }
    return delta;
}

GaussianDelta scale_delta(const GaussianDelta& d, double theta) {
    GaussianDelta out;
    const double k = 1.0 - theta;
    out.d_mean = k * d.d_mean;
    out.d_scale_raw = k * d.d_scale_raw;
    out.d_opacity_raw = k * d.d_opacity_raw;
    out.d_logits = k * d.d_logits;
    if (k <= 0.0) {
        out.d_rotation = Quatd::Identity();
    } else if (k >= 1.0) {
        out.d_rotation = d.d_rotation;
    } else {
        out.d_rotation = Quatd::Identity().slerp(k, d.d_rotation);
    }
    return out;
}

namespace {
bool is_exact_identity(const Quatd& q) {
    return q.w() == 1.0 && q.x() == 0.0 && q.y() == 0.0 && q.z() == 0.0;
}
}  // namespace

SemanticGaussian apply_delta(const SemanticGaussian& g, const GaussianDelta& d) {
    SemanticGaussian out = g;
    out.mean += d.d_mean;
    out.scale_raw += d.d_scale_raw;
    out.opacity_raw += d.d_opacity_raw;
    out.logits += d.d_logits;
    if (!is_exact_identity(d.d_rotation)) {
        out.rotation = compose_quaternions(d.d_rotation, g.rotation);
    }
    return out;
}

Refiner make_oracle_refiner(const RefinerParams& params, const GaussianConfig& cfg) {
    return [params, cfg](const SemanticGaussian& g, const Observation& obs) {
        return oracle_delta(g, obs, params, cfg);
    };
}

std::vector<SemanticGaussian> refine_frustum(const std::vector<SemanticGaussian>& view,
                                             const std::vector<std::uint8_t>& tags,
                                             const Observation& obs,
                                             const ConfidenceSchedule& schedule,
                                             const Refiner& refiner) {
    if (view.size() != tags.size()) {
        throw std::invalid_argument("refine_frustum: view/tags size mismatch");
    }
    if (static_cast<int>(schedule.theta_tagged.size()) != schedule.stages ||
        static_cast<int>(schedule.theta_untagged.size()) != schedule.stages) {
        throw std::invalid_argument("refine_frustum: schedule length != stages");
    }
    std::vector<SemanticGaussian> out = view;
    for (int stage = 0; stage < schedule.stages; ++stage) {
        for (std::size_t i = 0; i < out.size(); ++i) {
            const GaussianDelta d = refiner(out[i], obs);
            out[i] = apply_delta(out[i], scale_delta(d, schedule.theta(tags[i], stage)));
        }
    }
    return out;
}

}  // namespace gaussmem
