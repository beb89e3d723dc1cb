#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cmath>
#include <stdexcept>

namespace gaussmem {

template <typename T>
using Vec3 = Eigen::Matrix<T, 3, 1>;
template <typename T>
using Mat3 = Eigen::Matrix<T, 3, 3>;
template <typename T>
using Quat = Eigen::Quaternion<T>;

using Vec3d = Vec3<double>;
using Mat3d = Mat3<double>;
using Quatd = Quat<double>;

// Rigid camera-to-world transform. `translation` is the camera center in
// world coordinates; the camera looks along +z of its own frame, +x right,
// +y down (so pixel (u,v) grow with camera x and y).
template <typename T>
struct Pose3 {
    Mat3<T> rotation = Mat3<T>::Identity();
    Vec3<T> translation = Vec3<T>::Zero();

    Vec3<T> camera_to_world(const Vec3<T>& p_cam) const {
        return rotation * p_cam + translation;
    }
    Vec3<T> world_to_camera(const Vec3<T>& p_world) const {
        return rotation.transpose() * (p_world - translation);
    }
};

using Pose3d = Pose3<double>;

struct Intrinsics {
    double fx = 500.0;
    double fy = 500.0;
    double cx = 320.0;
    double cy = 240.0;
    int width = 640;
    int height = 480;
};

// Hamilton product, renormalized. Quaternions are (w, x, y, z).
template <typename T>
Quat<T> compose_quaternions(const Quat<T>& a, const Quat<T>& b) {
    if (a.norm() < T(1e-12) || b.norm() < T(1e-12)) {
        throw std::invalid_argument("degenerate quaternion");
    }
    Quat<T> q = a * b;
    q.normalize();
    return q;
}

template <typename T>
Mat3<T> rotation_matrix(const Quat<T>& q) {
    return q.normalized().toRotationMatrix();
}

template <typename T>
Vec3<T> world_to_camera(const Vec3<T>& p_world, const Pose3<T>& pose) {
    return pose.world_to_camera(p_world);
}

template <typename T>
Vec3<T> camera_to_world(const Vec3<T>& p_cam, const Pose3<T>& pose) {
    return pose.camera_to_world(p_cam);
}

template <typename T>
struct PixelProjection {
    T u = T(0);
    T v = T(0);
    T z = T(0);
    bool behind = false;  // z <= 0: no valid pixel coordinates
};

template <typename T>
PixelProjection<T> project_to_pixel(const Vec3<T>& p_cam, const Intrinsics& K) {
    PixelProjection<T> out;
    out.z = p_cam.z();
    if (!(p_cam.z() > T(0))) {
        out.behind = true;
        return out;
    }
    out.u = static_cast<T>(K.fx) * p_cam.x() / p_cam.z() + static_cast<T>(K.cx);
    out.v = static_cast<T>(K.fy) * p_cam.y() / p_cam.z() + static_cast<T>(K.cy);
    return out;
}

// True iff the point projects inside the image with depth in (z_near, z_far].
template <typename T>
bool in_frustum(const Vec3<T>& p_world, const Pose3<T>& pose, const Intrinsics& K,
                T z_near, T z_far) {
    const Vec3<T> p_cam = pose.world_to_camera(p_world);
    if (!(p_cam.z() > z_near && p_cam.z() <= z_far)) return false;
    const auto px = project_to_pixel(p_cam, K);
    return px.u >= T(0) && px.u < static_cast<T>(K.width) &&
           px.v >= T(0) && px.v < static_cast<T>(K.height);
}

// Camera-frame direction of the ray through the continuous pixel coordinate
// (u, v); z component is 1, so scaling by a metric z-depth lands on the point
// at that depth.
template <typename T>
Vec3<T> pixel_ray(T u, T v, const Intrinsics& K) {
    return Vec3<T>((u - static_cast<T>(K.cx)) / static_cast<T>(K.fx),
                   (v - static_cast<T>(K.cy)) / static_cast<T>(K.fy), T(1));
}

}  // namespace gaussmem
