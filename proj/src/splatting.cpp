#include "gaussmem/splatting.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace gaussmem {

namespace {

struct PreparedGaussian {
    Vec3d mean;
    Mat3d inv_cov;
    LogitVec weighted_probs;  // opacity * class_probs
    double radius_sq;         // squared cutoff radius, infinity when disabled
};

std::vector<PreparedGaussian> prepare(const std::vector<SemanticGaussian>& gaussians,
                                      const GaussianConfig& cfg, double cutoff_sigmas) {
    std::vector<PreparedGaussian> out;
    out.reserve(gaussians.size());
    const bool cutoff = cutoff_sigmas > 0.0 && std::isfinite(cutoff_sigmas);
    for (const SemanticGaussian& g : gaussians) {
        const Activation a = activate(g, cfg);
        if (!(a.scale.minCoeff() > 0.0)) {
            throw std::runtime_error("splat: non-positive Gaussian scale");
        }
        PreparedGaussian p;
        p.mean = g.mean;
        const Mat3d R = rotation_matrix(g.rotation);
        p.inv_cov = R * a.scale.cwiseProduct(a.scale).cwiseInverse().asDiagonal() * R.transpose();
        p.weighted_probs = a.opacity * a.class_probs;
        if (cutoff) {
            const double r = cutoff_sigmas * a.scale.maxCoeff();
            p.radius_sq = r * r;
        } else {
            p.radius_sq = std::numeric_limits<double>::infinity();
        }
        out.push_back(p);
    }
    return out;
}

// Uniform spatial bins over the Gaussian means; cell size >= the largest
// cutoff radius so the 3x3x3 neighborhood of a voxel's cell covers every
// Gaussian that can reach it.
struct BinGrid {
    Vec3d origin;
    double cell = 1.0;
    Eigen::Vector3i dims = Eigen::Vector3i::Ones();
    std::vector<std::vector<int>> bins;

    Eigen::Vector3i cell_of(const Vec3d& p) const {
        Eigen::Vector3i c;
        for (int a = 0; a < 3; ++a) {
            const int i = static_cast<int>(std::floor((p[a] - origin[a]) / cell));
            c[a] = std::clamp(i, 0, dims[a] - 1);
        }
        return c;
    }
    int flat(const Eigen::Vector3i& c) const {
        return c.x() + dims.x() * (c.y() + dims.y() * c.z());
    }
};

BinGrid build_bins(const std::vector<PreparedGaussian>& prep, double max_radius) {
    BinGrid bg;
    Vec3d lo = prep.front().mean;
    Vec3d hi = prep.front().mean;
    for (const auto& p : prep) {
        lo = lo.cwiseMin(p.mean);
        hi = hi.cwiseMax(p.mean);
    }
    bg.origin = lo;
    bg.cell = std::max(max_radius, 1e-6);
    for (int a = 0; a < 3; ++a) {
        bg.dims[a] = std::max(1, static_cast<int>(std::floor((hi[a] - lo[a]) / bg.cell)) + 1);
    }
    bg.bins.resize(static_cast<std::size_t>(bg.dims.x()) * bg.dims.y() * bg.dims.z());
    for (int i = 0; i < static_cast<int>(prep.size()); ++i) {
        bg.bins[bg.flat(bg.cell_of(prep[i].mean))].push_back(i);
    }
    return bg;
}

void accumulate_voxel(const Vec3d& center, const PreparedGaussian& p, double* acc) {
    const Vec3d d = center - p.mean;
    if (d.squaredNorm() > p.radius_sq) return;
    const double w = std::exp(-0.5 * d.dot(p.inv_cov * d));
    for (int c = 0; c < kClassCount; ++c) {
        acc[c] += w * p.weighted_probs[c];
    }
}

}  // namespace

SemanticVolume splat(const std::vector<SemanticGaussian>& gaussians,
                     const GridGeometry& geom, const GaussianConfig& cfg,
                     double cutoff_sigmas, int n_threads) {
    SemanticVolume vol = SemanticVolume::zero(geom);
    if (gaussians.empty()) return vol;

    const auto prep = prepare(gaussians, cfg, cutoff_sigmas);
    const bool cutoff = cutoff_sigmas > 0.0 && std::isfinite(cutoff_sigmas);

    BinGrid bins;
    double max_radius = 0.0;
    if (cutoff) {
        for (const auto& p : prep) max_radius = std::max(max_radius, std::sqrt(p.radius_sq));
        bins = build_bins(prep, max_radius);
    }

    const int X = geom.dims.x(), Y = geom.dims.y(), Z = geom.dims.z();
    auto worker = [&](int z_begin, int z_end) {
        for (int z = z_begin; z < z_end; ++z) {
            for (int y = 0; y < Y; ++y) {
                for (int x = 0; x < X; ++x) {
                    const Vec3d c = geom.center(x, y, z);
                    double* acc = vol.voxel(geom.index(x, y, z));
                    if (!cutoff) {
                        for (const auto& p : prep) accumulate_voxel(c, p, acc);
                        continue;
                    }
                    const Eigen::Vector3i cc = bins.cell_of(c);
                    for (int dz = -1; dz <= 1; ++dz) {
                        for (int dy = -1; dy <= 1; ++dy) {
                            for (int dx = -1; dx <= 1; ++dx) {
                                const Eigen::Vector3i n(cc.x() + dx, cc.y() + dy, cc.z() + dz);
                                if (n.x() < 0 || n.x() >= bins.dims.x() || n.y() < 0 ||
                                    n.y() >= bins.dims.y() || n.z() < 0 || n.z() >= bins.dims.z()) {
                                    continue;
                                }
                                for (int gi : bins.bins[bins.flat(n)]) {
                                    accumulate_voxel(c, prep[gi], acc);
                                }
                            }
                        }
                    }
                }
            }
        }
    };

    n_threads = std::max(1, n_threads);
    if (n_threads == 1 || Z < 2) {
        worker(0, Z);
    } else {
        std::vector<std::thread> pool;
        const int slab = (Z + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads; ++t) {
            const int z0 = t * slab;
            const int z1 = std::min(Z, z0 + slab);
            if (z0 >= z1) break;
            pool.emplace_back(worker, z0, z1);
        }
        for (auto& th : pool) th.join();
    }
    return vol;
}

SemanticVolume splat_bruteforce(const std::vector<SemanticGaussian>& gaussians,
                                const GridGeometry& geom, const GaussianConfig& cfg) {
    SemanticVolume vol = SemanticVolume::zero(geom);
    for (const SemanticGaussian& g : gaussians) {
        const Activation a = activate(g, cfg);
        const Mat3d cov = covariance(g, cfg);
        const Eigen::LDLT<Mat3d> ldlt(cov);
        if (ldlt.info() != Eigen::Success) {
            throw std::runtime_error("splat_bruteforce: covariance not SPD");
        }
        const LogitVec wp = a.opacity * a.class_probs;
        for (int z = 0; z < geom.dims.z(); ++z) {
            for (int y = 0; y < geom.dims.y(); ++y) {
                for (int x = 0; x < geom.dims.x(); ++x) {
                    const Vec3d d = geom.center(x, y, z) - g.mean;
                    const double w = std::exp(-0.5 * d.dot(ldlt.solve(d)));
                    double* acc = vol.voxel(geom.index(x, y, z));
                    for (int c = 0; c < kClassCount; ++c) acc[c] += w * wp[c];
                }
            }
        }
    }
    return vol;
}

VoxelGrid labels_from_volume(const SemanticVolume& vol, double tau_empty) {
    VoxelGrid grid = VoxelGrid::empty(vol.geom);
    const std::int64_t n = vol.geom.voxel_count();
    for (std::int64_t i = 0; i < n; ++i) {
        const double* acc = vol.voxel(i);
        double total = 0.0;
        for (int c = 0; c < kClassCount; ++c) total += acc[c];
        if (total < tau_empty) {
            grid.labels[i] = kEmptyClass;
            continue;
        }
        int best = 0;
        for (int c = 1; c < kClassCount; ++c) {
            if (acc[c] > acc[best]) best = c;
        }
        grid.labels[i] = static_cast<std::uint8_t>(best);
    }
    return grid;
}

}  // namespace gaussmem
