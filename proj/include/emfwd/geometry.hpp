#pragma once

// Small fixed-size vector/tensor types used throughout the library.
// Positions are in metres, the ground plane is x3 = 0, air is x3 > 0.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

namespace emfwd {

using Complex = std::complex<double>;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
    // radial distance from the x3 axis
    double rho() const { return std::hypot(x, y); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

struct CVec3 {
    Complex x{0.0, 0.0}, y{0.0, 0.0}, z{0.0, 0.0};

    CVec3() = default;
    CVec3(Complex x_, Complex y_, Complex z_) : x(x_), y(y_), z(z_) {}
    explicit CVec3(const Vec3& v) : x(v.x), y(v.y), z(v.z) {}

    Complex operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    CVec3 operator+(const CVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    CVec3 operator-(const CVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    CVec3 operator*(Complex s) const { return {x * s, y * s, z * s}; }

    double norm() const { return std::sqrt(std::norm(x) + std::norm(y) + std::norm(z)); }
};

inline CVec3 operator*(Complex s, const CVec3& v) { return v * s; }

// Unsymmetrised bilinear contraction a_i M_ij b_j is provided by ComplexTensor3.
struct ComplexTensor3 {
    std::array<std::array<Complex, 3>, 3> m{};

    Complex& operator()(int i, int j) { return m[i][j]; }
    const Complex& operator()(int i, int j) const { return m[i][j]; }

    static ComplexTensor3 zero() { return {}; }

    static ComplexTensor3 identity_times(Complex s) {
        ComplexTensor3 t;
        t(0, 0) = t(1, 1) = t(2, 2) = s;
        return t;
    }

    ComplexTensor3 operator+(const ComplexTensor3& o) const {
        ComplexTensor3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = m[i][j] + o(i, j);
        return r;
    }

    ComplexTensor3 operator-(const ComplexTensor3& o) const {
        ComplexTensor3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = m[i][j] - o(i, j);
        return r;
    }

    ComplexTensor3 operator*(Complex s) const {
        ComplexTensor3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = m[i][j] * s;
        return r;
    }

    CVec3 operator*(const CVec3& v) const {
        CVec3 r;
        r.x = m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z;
        r.y = m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z;
        r.z = m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z;
        return r;
    }

    Complex trace() const { return m[0][0] + m[1][1] + m[2][2]; }

    double frobenius_norm() const {
        double s = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s += std::norm(m[i][j]);
        return std::sqrt(s);
    }

    double max_asymmetry() const {
        double a = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) a = std::max(a, std::abs(m[i][j] - m[j][i]));
        return a;
    }

    ComplexTensor3 real_part() const {
        ComplexTensor3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = Complex(m[i][j].real(), 0.0);
        return r;
    }

    ComplexTensor3 imag_part() const {
        ComplexTensor3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = Complex(m[i][j].imag(), 0.0);
        return r;
    }
};

inline Complex contract(const CVec3& a, const ComplexTensor3& t, const CVec3& b) {
    Complex s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += a[i] * t(i, j) * b[j];
    return s;
}

// Eigenvalues of the real part of a (numerically real) symmetric tensor,
// ascending, via cyclic Jacobi rotations. Used for semidefiniteness checks.
inline std::array<double, 3> symmetric_eigenvalues(const ComplexTensor3& t) {
    double a[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i][j] = 0.5 * (t(i, j).real() + t(j, i).real());
    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
        double diag = std::abs(a[0][0]) + std::abs(a[1][1]) + std::abs(a[2][2]);
        if (off <= 1e-15 * (diag + off) || off == 0.0) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double sign = theta >= 0.0 ? 1.0 : -1.0;
                const double tt = sign / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(tt * tt + 1.0);
                const double s = tt * c;
                for (int k = 0; k < 3; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::array<double, 3> ev{a[0][0], a[1][1], a[2][2]};
    if (ev[0] > ev[1]) std::swap(ev[0], ev[1]);
    if (ev[1] > ev[2]) std::swap(ev[1], ev[2]);
    if (ev[0] > ev[1]) std::swap(ev[0], ev[1]);
    return ev;
}

}  // namespace emfwd
