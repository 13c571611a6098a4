// core.hpp — small vector algebra, physical constants, error types.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace xdwm {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const {
        const double n = norm();
        return n > 0.0 ? Vec3{x / n, y / n, z / n} : Vec3{};
    }
};

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline constexpr double dot(const Vec3& a, const Vec3& b) { return a.dot(b); }
inline constexpr Vec3 cross(const Vec3& a, const Vec3& b) { return a.cross(b); }

/// Fundamental constants, SI. gamma is the electron gyromagnetic ratio in
/// rad s^-1 T^-1; all field math multiplies it by mu0 to act on H in A/m.
struct PhysicalConstants {
    double mu0 = 4.0e-7 * 3.14159265358979323846;  // T m / A
    double muB = 9.2740100783e-24;                 // J / T
    double e = 1.602176634e-19;                    // C
    double hbar = 1.054571817e-34;                 // J s
    double gamma = 1.7595e11;                      // rad / (s T)

    void validate() const {
        if (!(mu0 > 0 && muB > 0 && e > 0 && hbar > 0 && gamma > 0))
            throw std::invalid_argument("PhysicalConstants: all constants must be > 0");
    }
};

enum class ErrorCode {
    NonIntegralDimension,
    OverlapConflict,
    PlacementOutOfRange,
    StepSizeUnderflow,
    NotConverged,
    WallCountMismatch,
    WallExited,
    DisconnectedTerminals,
    SingularSystem,
    Overflow,
    Misaligned,
    ConfigInvalid,
    ExperimentFailed,
    GoldenMismatch,
};

struct Error : std::runtime_error {
    ErrorCode code;
    Error(ErrorCode c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

inline const char* to_string(ErrorCode c) {
    switch (c) {
        case ErrorCode::NonIntegralDimension: return "NonIntegralDimension";
        case ErrorCode::OverlapConflict: return "OverlapConflict";
        case ErrorCode::PlacementOutOfRange: return "PlacementOutOfRange";
        case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
        case ErrorCode::NotConverged: return "NotConverged";
        case ErrorCode::WallCountMismatch: return "WallCountMismatch";
        case ErrorCode::WallExited: return "WallExited";
        case ErrorCode::DisconnectedTerminals: return "DisconnectedTerminals";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::Misaligned: return "Misaligned";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
        case ErrorCode::ExperimentFailed: return "ExperimentFailed";
        case ErrorCode::GoldenMismatch: return "GoldenMismatch";
    }
    return "Unknown";
}

}  // namespace xdwm
