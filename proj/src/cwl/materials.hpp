// cwlidar is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <array>

#include "cwl/linalg.hpp"

namespace cwl {

enum class MaterialKind {
    kLambertian,
    kOrenNayar,
    kMirror,
    kGlass,
};

/// Surface scattering model evaluated at hit points. Glass (and mirror)
/// materials may carry a small additive Lambertian component to model
/// composites such as transparent plastic.
template <typename S> struct Material {
    MaterialKind kind = MaterialKind::kLambertian;
    S k_r = S(0.5);       // diffuse reflectance in [0, 1]
    S sigma = S(0.0);     // Oren-Nayar roughness, radians
    S eta = S(1.5);       // refractive index (mirror/glass)
    S diffuse = S(0.0);   // composite Lambertian weight (mirror/glass)
};

/// Unpolarized dielectric Fresnel reflectance: the polarization-averaged
/// fraction of light reflected at the boundary. cos_theta_i is measured on
/// the incidence side; returns exactly 1 under total internal reflection.
template <typename S> S FresnelReflectance(S cos_theta_i, S eta_i, S eta_o) {
    S sin2_i = S(1.0) - cos_theta_i * cos_theta_i;
    if (value_of(sin2_i) < 0.0) sin2_i = S(0.0);
    S sin_t = eta_i / eta_o * sqrt(sin2_i);
    if (value_of(sin_t) >= 1.0) return S(1.0);
    S cos_t = sqrt(S(1.0) - sin_t * sin_t);
    S r_parl = (eta_o * cos_theta_i - eta_i * cos_t) / (eta_o * cos_theta_i + eta_i * cos_t);
    S r_perp = (eta_i * cos_theta_i - eta_o * cos_t) / (eta_i * cos_theta_i + eta_o * cos_t);
    return (r_parl * r_parl + r_perp * r_perp) * 0.5;
}

/// Eq.-style perfect diffuser: k_r / pi, independent of directions.
template <typename S> S LambertianBrdf(S k_r) { return k_r / kPi; }

/// Oren-Nayar two-term approximation; reduces to Lambertian at sigma = 0.
/// omega_i, omega_o unit and in the hemisphere of n.
template <typename S>
S OrenNayarBrdf(S k_r, S sigma, const Vec3<S> &omega_i, const Vec3<S> &omega_o,
                const Vec3<S> &n) {
    S s2 = sigma * sigma;
    S a = S(1.0) - s2 / (2.0 * (s2 + 0.33));
    S b = 0.45 * s2 / (s2 + 0.09);

    S cos_i = dot(omega_i, n);
    S cos_o = dot(omega_o, n);
    S sin_i = sqrt(max(S(0.0), S(1.0) - cos_i * cos_i));
    S sin_o = sqrt(max(S(0.0), S(1.0) - cos_o * cos_o));

    // cos(phi_i - phi_o) from the direction components tangent to the surface.
    S max_cos = S(0.0);
    if (value_of(sin_i) > 1e-6 && value_of(sin_o) > 1e-6) {
        Vec3<S> ti = omega_i - n * cos_i;
        Vec3<S> to = omega_o - n * cos_o;
        S d_cos = dot(ti, to) / (sin_i * sin_o);
        max_cos = max(S(0.0), d_cos);
    }

    // sin(alpha) = sin of the larger inclination, tan(beta) of the smaller.
    S sin_alpha, tan_beta;
    if (value_of(abs(cos_i)) > value_of(abs(cos_o))) {
        sin_alpha = sin_o;
        tan_beta = sin_i / abs(cos_i);
    } else {
        sin_alpha = sin_i;
        tan_beta = sin_o / abs(cos_o);
    }
    return k_r / kPi * (a + b * max_cos * sin_alpha * tan_beta);
}

enum class ScatterKind {
    kReflect,
    kTransmit,
    kDiffuseReturn,
};

template <typename S> struct ScatterSample {
    Vec3<S> direction; // unit
    S weight;          // in [0, 1]
    ScatterKind kind = ScatterKind::kDiffuseReturn;
};

template <typename S> struct ScatterList {
    std::array<ScatterSample<S>, 3> samples;
    int count = 0;
    void Push(const Vec3<S> &dir, S weight, ScatterKind kind) {
        samples[count++] = {dir, weight, kind};
    }
};

template <typename S>
Vec3<S> Reflect(const Vec3<S> &omega_o, const Vec3<S> &n) {
    return n * (2.0 * dot(omega_o, n)) - omega_o;
}

/// Scattering samples produced at one hit. omega_o points away from the
/// surface toward the previous path vertex; n is in the hemisphere of
/// omega_o; eta_outside is the refractive index of the medium the incident
/// ray travels in.
///
/// Diffuse materials do not spawn new rays: the sensor is the only source of
/// radiance and the photodiode is coaxial with the laser, so the only diffuse
/// path carrying radiance back is the direct return. The sample weight folds
/// in the BRDF and the |cos theta_i| factor of the rendering equation.
template <typename S>
ScatterList<S> Scatter(const Material<S> &material, const Vec3<S> &omega_o,
                       const Vec3<S> &n, S eta_outside) {
    ScatterList<S> out;
    S cos_i = dot(omega_o, n);
    if (value_of(cos_i) < 0.0) cos_i = S(0.0);

    auto push_diffuse = [&](S k_r) {
        S f = material.kind == MaterialKind::kOrenNayar
                  ? OrenNayarBrdf(k_r, material.sigma, omega_o, omega_o, n)
                  : LambertianBrdf(k_r);
        out.Push(omega_o, f * abs(cos_i), ScatterKind::kDiffuseReturn);
    };

    switch (material.kind) {
    case MaterialKind::kLambertian:
    case MaterialKind::kOrenNayar:
        push_diffuse(material.k_r);
        break;
    case MaterialKind::kMirror: {
        S fr = FresnelReflectance(cos_i, eta_outside, material.eta);
        out.Push(Reflect(omega_o, n), fr, ScatterKind::kReflect);
        if (value_of(material.diffuse) > 0.0) push_diffuse(material.diffuse);
        break;
    }
    case MaterialKind::kGlass: {
        // Entering if the incident medium is the exterior one.
        bool entering = value_of(eta_outside) < value_of(material.eta);
        S eta_i = eta_outside;
        S eta_t = entering ? material.eta : S(1.0);
        S fr = FresnelReflectance(cos_i, eta_i, eta_t);
        out.Push(Reflect(omega_o, n), fr, ScatterKind::kReflect);
        if (value_of(fr) < 1.0) {
            S ratio = eta_i / eta_t;
            S sin2_t = ratio * ratio * max(S(0.0), S(1.0) - cos_i * cos_i);
            S cos_t = sqrt(S(1.0) - sin2_t);
            Vec3<S> refracted = -omega_o * ratio + n * (ratio * cos_i - cos_t);
            // Radiance compresses by (eta_t/eta_i)^2 entering the denser side.
            S weight = (eta_t * eta_t) / (eta_i * eta_i) * (S(1.0) - fr);
            out.Push(refracted, weight, ScatterKind::kTransmit);
        }
        if (value_of(material.diffuse) > 0.0) push_diffuse(material.diffuse);
        break;
    }
    }
    return out;
}

} // namespace cwl
