// cwlidar is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include "cwl/linalg.hpp"

namespace cwl {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

/// URG-04LX measurement constants plus the diode correction polynomial.
/// Only the polynomial coefficients participate in differentiation.
template <typename S> struct SensorModel {
    double f1_hz = 46.55e6;
    double f2_hz = 53.2e6;
    int periods_observed = 15;
    int sample_count = 30;
    int ray_count = 682;
    double fov_rad = 240.0 * kPi / 180.0;
    double angular_resolution_rad = 0.352 * kPi / 180.0;
    double scan_rate_hz = 10.0;
    // Beam diameter is specified as 40 mm at 4 m.
    double beam_half_angle_rad = std::atan(0.020 / 4.0);
    int beam_ray_count = 3;
    double range_min_m = 0.02;
    double range_max_m = 4.095;
    S diode_a = S(0.0);
    S diode_b = S(0.0);
    S diode_c = S(0.0);

    double beat_frequency_hz() const { return f2_hz - f1_hz; }
    /// Single-frequency unambiguous interval c / (2 f).
    static double UnambiguousRange(double f_hz) {
        return kSpeedOfLight / (2.0 * f_hz);
    }
};

using SensorModeld = SensorModel<double>;

} // namespace cwl
