// cwlidar is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace cwl {

/// Forward-mode differentiable scalar: a value plus a fixed-capacity vector
/// of tangents, one per free parameter of the enclosing evaluation.
///
/// Every arithmetic operation applies exactly the same double operations to
/// the value track as the plain-double instantiation of the same expression,
/// so simulate<double> and simulate<Dual>.value() agree bit for bit.
class Dual {
  public:
    // No experiment in this codebase frees more than eight parameters
    // (SE(2) pose = 3, two reflectances, three diode coefficients).
    static constexpr int kMaxTangents = 8;
    using Tangents = std::array<double, kMaxTangents>;

    constexpr Dual() : v_(0.0), d_{} {}
    // Implicit on purpose: plain constants participate in expressions.
    constexpr Dual(double v) : v_(v), d_{} {}

    /// Independent variable seeded with a unit tangent in the given slot.
    static Dual Variable(double v, int slot) {
        Dual x(v);
        x.d_[slot] = 1.0;
        return x;
    }

    double value() const { return v_; }
    double deriv(int slot) const { return d_[slot]; }
    const Tangents &tangents() const { return d_; }

    Dual operator-() const {
        Dual r(-v_);
        for (int k = 0; k < kMaxTangents; ++k) r.d_[k] = -d_[k];
        return r;
    }

    Dual &operator+=(const Dual &o) {
        v_ += o.v_;
        for (int k = 0; k < kMaxTangents; ++k) d_[k] += o.d_[k];
        return *this;
    }
    Dual &operator-=(const Dual &o) {
        v_ -= o.v_;
        for (int k = 0; k < kMaxTangents; ++k) d_[k] -= o.d_[k];
        return *this;
    }
    Dual &operator*=(const Dual &o) {
        for (int k = 0; k < kMaxTangents; ++k) d_[k] = d_[k] * o.v_ + v_ * o.d_[k];
        v_ *= o.v_;
        return *this;
    }
    Dual &operator/=(const Dual &o) {
        double inv = 1.0 / o.v_;
        for (int k = 0; k < kMaxTangents; ++k)
            d_[k] = (d_[k] - v_ * inv * o.d_[k]) * inv;
        v_ /= o.v_;
        return *this;
    }

    friend Dual operator+(const Dual &a, const Dual &b) {
        Dual r(a.v_ + b.v_);
        for (int k = 0; k < kMaxTangents; ++k) r.d_[k] = a.d_[k] + b.d_[k];
        return r;
    }
    friend Dual operator-(const Dual &a, const Dual &b) {
        Dual r(a.v_ - b.v_);
        for (int k = 0; k < kMaxTangents; ++k) r.d_[k] = a.d_[k] - b.d_[k];
        return r;
    }
    friend Dual operator*(const Dual &a, const Dual &b) {
        Dual r(a.v_ * b.v_);
        for (int k = 0; k < kMaxTangents; ++k)
            r.d_[k] = a.d_[k] * b.v_ + a.v_ * b.d_[k];
        return r;
    }
    friend Dual operator/(const Dual &a, const Dual &b) {
        double inv = 1.0 / b.v_;
        Dual r(a.v_ / b.v_);
        for (int k = 0; k < kMaxTangents; ++k)
            r.d_[k] = (a.d_[k] - a.v_ * inv * b.d_[k]) * inv;
        return r;
    }

    // Constant-on-one-side forms skip the dead tangent loop of the constant.
    friend Dual operator+(const Dual &a, double b) {
        Dual r = a;
        r.v_ += b;
        return r;
    }
    friend Dual operator+(double a, const Dual &b) { return b + a; }
    friend Dual operator-(const Dual &a, double b) {
        Dual r = a;
        r.v_ -= b;
        return r;
    }
    friend Dual operator-(double a, const Dual &b) {
        Dual r(a - b.v_);
        for (int k = 0; k < kMaxTangents; ++k) r.d_[k] = -b.d_[k];
        return r;
    }
    friend Dual operator*(const Dual &a, double b) {
        Dual r(a.v_ * b);
        for (int k = 0; k < kMaxTangents; ++k) r.d_[k] = a.d_[k] * b;
        return r;
    }
    friend Dual operator*(double a, const Dual &b) { return b * a; }
    friend Dual operator/(const Dual &a, double b) {
        Dual r(a.v_ / b);
        for (int k = 0; k < kMaxTangents; ++k) r.d_[k] = a.d_[k] / b;
        return r;
    }
    friend Dual operator/(double a, const Dual &b) { return Dual(a) / b; }

    // Branch decisions compare the value track only; tangents ride along.
    friend bool operator<(const Dual &a, const Dual &b) { return a.v_ < b.v_; }
    friend bool operator>(const Dual &a, const Dual &b) { return a.v_ > b.v_; }
    friend bool operator<=(const Dual &a, const Dual &b) { return a.v_ <= b.v_; }
    friend bool operator>=(const Dual &a, const Dual &b) { return a.v_ >= b.v_; }
    friend bool operator==(const Dual &a, const Dual &b) { return a.v_ == b.v_; }
    friend bool operator!=(const Dual &a, const Dual &b) { return a.v_ != b.v_; }

    friend Dual sin(const Dual &x) {
        Dual r(std::sin(x.v_));
        double c = std::cos(x.v_);
        for (int k = 0; k < kMaxTangents; ++k) r.d_[k] = c * x.d_[k];
        return r;
    }
    friend Dual cos(const Dual &x) {
        Dual r(std::cos(x.v_));
        double s = -std::sin(x.v_);
        for (int k = 0; k < kMaxTangents; ++k) r.d_[k] = s * x.d_[k];
        return r;
    }
    friend Dual tan(const Dual &x) {
        Dual r(std::tan(x.v_));
        double c = std::cos(x.v_);
        double g = 1.0 / (c * c);
        for (int k = 0; k < kMaxTangents; ++k) r.d_[k] = g * x.d_[k];
        return r;
    }
    friend Dual asin(const Dual &x) {
        Dual r(std::asin(x.v_));
        double g = 1.0 / std::sqrt(1.0 - x.v_ * x.v_);
        for (int k = 0; k < kMaxTangents; ++k) r.d_[k] = g * x.d_[k];
        return r;
    }
    friend Dual acos(const Dual &x) {
        Dual r(std::acos(x.v_));
        double g = -1.0 / std::sqrt(1.0 - x.v_ * x.v_);
        for (int k = 0; k < kMaxTangents; ++k) r.d_[k] = g * x.d_[k];
        return r;
    }
    friend Dual atan(const Dual &x) {
        Dual r(std::atan(x.v_));
        double g = 1.0 / (1.0 + x.v_ * x.v_);
        for (int k = 0; k < kMaxTangents; ++k) r.d_[k] = g * x.d_[k];
        return r;
    }
    friend Dual atan2(const Dual &y, const Dual &x) {
        Dual r(std::atan2(y.v_, x.v_));
        double w = x.v_ * x.v_ + y.v_ * y.v_;
        for (int k = 0; k < kMaxTangents; ++k)
            r.d_[k] = (x.v_ * y.d_[k] - y.v_ * x.d_[k]) / w;
        return r;
    }
    friend Dual sqrt(const Dual &x) {
        double s = std::sqrt(x.v_);
        Dual r(s);
        // Non-smooth at exactly zero; the subgradient 0 keeps tangents finite.
        double g = s > 0.0 ? 0.5 / s : 0.0;
        for (int k = 0; k < kMaxTangents; ++k) r.d_[k] = g * x.d_[k];
        return r;
    }
    friend Dual exp(const Dual &x) {
        double e = std::exp(x.v_);
        Dual r(e);
        for (int k = 0; k < kMaxTangents; ++k) r.d_[k] = e * x.d_[k];
        return r;
    }
    friend Dual log(const Dual &x) {
        Dual r(std::log(x.v_));
        double g = 1.0 / x.v_;
        for (int k = 0; k < kMaxTangents; ++k) r.d_[k] = g * x.d_[k];
        return r;
    }
    friend Dual abs(const Dual &x) { return x.v_ < 0.0 ? -x : x; }
    friend Dual fabs(const Dual &x) { return x.v_ < 0.0 ? -x : x; }
    friend Dual min(const Dual &a, const Dual &b) { return a.v_ <= b.v_ ? a : b; }
    friend Dual max(const Dual &a, const Dual &b) { return a.v_ >= b.v_ ? a : b; }
    friend Dual floor(const Dual &x) { return Dual(std::floor(x.v_)); }
    friend Dual ceil(const Dual &x) { return Dual(std::ceil(x.v_)); }

    friend bool isfinite(const Dual &x) {
        if (!std::isfinite(x.v_)) return false;
        for (int k = 0; k < kMaxTangents; ++k)
            if (!std::isfinite(x.d_[k])) return false;
        return true;
    }

  private:
    double v_;
    Tangents d_;
};

inline double value_of(double x) { return x; }
inline double value_of(const Dual &x) { return x.value(); }

// Makes unqualified math calls in generic code resolve for double operands.
using std::abs;
using std::acos;
using std::asin;
using std::atan;
using std::atan2;
using std::ceil;
using std::cos;
using std::exp;
using std::fabs;
using std::floor;
using std::isfinite;
using std::log;
using std::sin;
using std::sqrt;
using std::tan;

inline double min(double a, double b) { return a <= b ? a : b; }
inline double max(double a, double b) { return a >= b ? a : b; }

template <typename S> S sqr(S x) { return x * x; }

} // namespace cwl
