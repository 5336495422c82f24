#pragma once

// Quaternions, the double cover S^3 -> SO(3), Hopf fibers and their linking,
// the ball model of RP^3 = SO(3), and lifting rotation loops through the
// double cover.
//
// Conventions:
//   * Hamilton product, ij = k, jk = i, ki = j.
//   * hopf_map(q) = conj(q) i q.
//   * rot_from_quat(q) is the matrix of x -> conj(q) x q acting on row
//     vectors, i.e. M v = q v conj(q) on columns.  With this choice
//     rot_from_quat is a homomorphism with kernel {+1, -1}.
//   * Rotations are active; axis-angle uses the right-hand rule.

#include "stemcert/derivation.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace stemcert::hopf {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kUnitTolerance = 1e-9;

struct Vec3 {
    double x = 0, y = 0, z = 0;

    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
    friend Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
    friend bool operator==(const Vec3&, const Vec3&) = default;

    [[nodiscard]] double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    [[nodiscard]] Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    [[nodiscard]] double norm() const { return std::sqrt(dot(*this)); }
};

struct Quaternion {
    double w = 1, x = 0, y = 0, z = 0;

    static Quaternion one() { return {1, 0, 0, 0}; }
    static Quaternion i() { return {0, 1, 0, 0}; }
    static Quaternion j() { return {0, 0, 1, 0}; }
    static Quaternion k() { return {0, 0, 0, 1}; }
    static Quaternion pure(const Vec3& v) { return {0, v.x, v.y, v.z}; }

    [[nodiscard]] Quaternion conj() const { return {w, -x, -y, -z}; }
    [[nodiscard]] double dot(const Quaternion& o) const { return w * o.w + x * o.x + y * o.y + z * o.z; }
    [[nodiscard]] double norm() const { return std::sqrt(dot(*this)); }
    [[nodiscard]] Quaternion normalized() const {
        const double n = norm();
        if (n == 0) throw std::domain_error("cannot normalize the zero quaternion");
        return {w / n, x / n, y / n, z / n};
    }
    [[nodiscard]] Vec3 vec() const { return {x, y, z}; }
    [[nodiscard]] bool is_unit(double tol = kUnitTolerance) const { return std::abs(norm() - 1) < tol; }

    friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
        return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
        return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
    friend Quaternion operator*(double s, const Quaternion& a) { return {s * a.w, s * a.x, s * a.y, s * a.z}; }
    friend bool operator==(const Quaternion&, const Quaternion&) = default;
};

/// Hamilton product.
inline Quaternion qmul(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline Quaternion operator*(const Quaternion& a, const Quaternion& b) { return qmul(a, b); }

inline double distance(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

inline void require_unit(const Quaternion& q, const char* who) {
    if (!q.is_unit()) throw std::invalid_argument(std::string(who) + ": quaternion is not a unit");
}

/// conj(q) i q, a point of the unit sphere in Ri + Rj + Rk.
inline Vec3 hopf_map(const Quaternion& q) {
    require_unit(q, "hopf_map");
    return (q.conj() * Quaternion::i() * q).vec();
}

// ---------------------------------------------------------------------------
// Rotations.

struct Rotation3 {
    std::array<std::array<double, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

    static Rotation3 identity() { return {}; }

    [[nodiscard]] double operator()(int r, int c) const { return m[r][c]; }
    [[nodiscard]] Vec3 apply(const Vec3& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }
    [[nodiscard]] Rotation3 transpose() const {
        Rotation3 t;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) t.m[r][c] = m[c][r];
        return t;
    }
    [[nodiscard]] double trace() const { return m[0][0] + m[1][1] + m[2][2]; }
    [[nodiscard]] double det() const {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }

    friend Rotation3 operator*(const Rotation3& a, const Rotation3& b) {
        Rotation3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                r.m[i][j] = 0;
                for (int k = 0; k < 3; ++k) r.m[i][j] += a.m[i][k] * b.m[k][j];
            }
        return r;
    }
    friend bool operator==(const Rotation3&, const Rotation3&) = default;
};

/// Max-norm distance between matrices.
inline double max_abs_diff(const Rotation3& a, const Rotation3& b) {
    double d = 0;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) d = std::max(d, std::abs(a.m[r][c] - b.m[r][c]));
    return d;
}

/// ||R^T R - I||_max < tol and det R > 0.
inline bool is_rotation(const Rotation3& r, double tol = kUnitTolerance) {
    return max_abs_diff(r.transpose() * r, Rotation3::identity()) < tol && r.det() > 0;
}

/// Rotation angle in [0, pi].
inline double rotation_angle(const Rotation3& r) {
    return std::acos(std::clamp((r.trace() - 1) / 2, -1.0, 1.0));
}

inline Rotation3 rot_from_quat(const Quaternion& q) {
    const double w = q.w, x = q.x, y = q.y, z = q.z;
    Rotation3 r;
    r.m = {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
            {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
            {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
    return r;
}

/// One of the two unit quaternions over r.  Uses the branch with the
/// largest diagonal pivot, which stays accurate near angle pi.
inline Quaternion quat_from_rot(const Rotation3& r) {
    const auto& m = r.m;
    const double tr = r.trace();
    Quaternion q;
    if (tr >= m[0][0] && tr >= m[1][1] && tr >= m[2][2]) {
        const double s = 2 * std::sqrt(std::max(0.0, 1 + tr));
        q = {s / 4, (m[2][1] - m[1][2]) / s, (m[0][2] - m[2][0]) / s, (m[1][0] - m[0][1]) / s};
    } else if (m[0][0] >= m[1][1] && m[0][0] >= m[2][2]) {
        const double s = 2 * std::sqrt(std::max(0.0, 1 + m[0][0] - m[1][1] - m[2][2]));
        q = {(m[2][1] - m[1][2]) / s, s / 4, (m[0][1] + m[1][0]) / s, (m[0][2] + m[2][0]) / s};
    } else if (m[1][1] >= m[2][2]) {
        const double s = 2 * std::sqrt(std::max(0.0, 1 + m[1][1] - m[0][0] - m[2][2]));
        q = {(m[0][2] - m[2][0]) / s, (m[0][1] + m[1][0]) / s, s / 4, (m[1][2] + m[2][1]) / s};
    } else {
        const double s = 2 * std::sqrt(std::max(0.0, 1 + m[2][2] - m[0][0] - m[1][1]));
        q = {(m[1][0] - m[0][1]) / s, (m[0][2] + m[2][0]) / s, (m[1][2] + m[2][1]) / s, s / 4};
    }
    return q.normalized();
}

/// Rodrigues: rotation by `angle` about the unit `axis`.
inline Rotation3 axis_angle(const Vec3& axis, double angle) {
    const double n = axis.norm();
    if (n == 0) {
        if (angle == 0) return Rotation3::identity();
        throw std::invalid_argument("axis_angle: zero axis");
    }
    const Vec3 u = (1 / n) * axis;
    const double c = std::cos(angle), s = std::sin(angle), v = 1 - c;
    Rotation3 r;
    r.m = {{{c + u.x * u.x * v, u.x * u.y * v - u.z * s, u.x * u.z * v + u.y * s},
            {u.y * u.x * v + u.z * s, c + u.y * u.y * v, u.y * u.z * v - u.x * s},
            {u.z * u.x * v - u.y * s, u.z * u.y * v + u.x * s, c + u.z * u.z * v}}};
    return r;
}

// ---------------------------------------------------------------------------
// Fibers and linking.

struct QuaternionCurve {
    std::vector<Quaternion> points;  // closed curves repeat the first point at the end
    bool closed = true;
};

struct SampledCurve {
    std::vector<Vec3> points;  // closed curves repeat the first point at the end
    bool closed = true;

    [[nodiscard]] std::size_t segments() const { return points.empty() ? 0 : points.size() - 1; }
    [[nodiscard]] bool closure_ok(double tol = kUnitTolerance) const {
        return !points.empty() && (points.front() - points.back()).norm() < tol;
    }
};

inline constexpr int kMinFiberSamples = 16;

/// The Hopf fiber over p: theta -> (cos theta + i sin theta) q0 with hopf_map(q0) = p.
inline QuaternionCurve fiber_curve(const Vec3& p, int samples) {
    if (samples < kMinFiberSamples) throw std::invalid_argument("fiber_curve: need at least 16 samples");
    if (std::abs(p.norm() - 1) > kUnitTolerance) throw std::invalid_argument("fiber_curve: point is not on S^2");
    const Vec3 e1{1, 0, 0};
    Vec3 axis = e1.cross(p);
    Rotation3 to_p;
    if (axis.norm() < 1e-12) {
        to_p = p.x > 0 ? Rotation3::identity() : axis_angle({0, 1, 0}, kPi);
    } else {
        to_p = axis_angle(axis, std::atan2(axis.norm(), e1.dot(p)));
    }
    // rot_from_quat(r) i = r i conj(r) = p, so q0 = conj(r) has conj(q0) i q0 = p.
    const Quaternion q0 = quat_from_rot(to_p).conj();
    QuaternionCurve c;
    c.points.reserve(static_cast<std::size_t>(samples) + 1);
    for (int s = 0; s < samples; ++s) {
        const double theta = 2 * kPi * s / samples;
        c.points.push_back(Quaternion{std::cos(theta), std::sin(theta), 0, 0} * q0);
    }
    c.points.push_back(c.points.front());
    return c;
}

/// Thrown when a point is too close to the projection pole; pick another pole.
class PoleTooClose : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kPoleClearance = 1e-3;

namespace detail {

// Orthonormal basis of the hyperplane orthogonal to `pole`.  For pole = -1
// this is (i, j, k), giving the usual (x, y, z) / (1 + w).
inline std::array<Quaternion, 3> tangent_basis(const Quaternion& pole) {
    const std::array<Quaternion, 4> standard{Quaternion::one(), Quaternion::i(), Quaternion::j(), Quaternion::k()};
    std::array<Quaternion, 3> out{};
    std::size_t n = 0;
    for (const auto& e : standard) {
        Quaternion v = e - pole.dot(e) * pole;
        for (std::size_t b = 0; b < n; ++b) v = v - out[b].dot(v) * out[b];
        if (v.norm() > 1e-6 && n < 3) out[n++] = v.normalized();
    }
    return out;
}

}  // namespace detail

/// Stereographic projection from `pole` onto the hyperplane orthogonal to it.
inline Vec3 stereographic(const Quaternion& q, const Quaternion& pole) {
    if (distance(q, pole) <= kPoleClearance) throw PoleTooClose("stereographic: point within 1e-3 of the pole");
    const double h = q.dot(pole);
    const Quaternion v = q - h * pole;
    const auto basis = detail::tangent_basis(pole);
    const double s = 1 / (1 - h);
    return {s * basis[0].dot(v), s * basis[1].dot(v), s * basis[2].dot(v)};
}

inline Quaternion inverse_stereographic(const Vec3& y, const Quaternion& pole) {
    const auto basis = detail::tangent_basis(pole);
    const double r2 = y.dot(y);
    const Quaternion embedded = y.x * basis[0] + y.y * basis[1] + y.z * basis[2];
    return (1 / (r2 + 1)) * (2 * embedded + (r2 - 1) * pole);
}

/// ±1, ±i, ±j, ±k and (±1 ± i ± j ± k)/2.
inline std::vector<Quaternion> pole_candidates() {
    std::vector<Quaternion> out;
    for (double s : {-1.0, 1.0}) {
        out.push_back({s, 0, 0, 0});
        out.push_back({0, s, 0, 0});
        out.push_back({0, 0, s, 0});
        out.push_back({0, 0, 0, s});
    }
    for (int mask = 0; mask < 16; ++mask)
        out.push_back({mask & 1 ? -0.5 : 0.5, mask & 2 ? -0.5 : 0.5, mask & 4 ? -0.5 : 0.5, mask & 8 ? -0.5 : 0.5});
    return out;
}

inline bool pole_is_clear(const Quaternion& pole, std::span<const QuaternionCurve> curves) {
    for (const auto& c : curves)
        for (const auto& q : c.points)
            if (distance(q, pole) <= kPoleClearance) return false;
    return true;
}

/// -1 unless a curve passes within 1e-3 of it; then a seeded shuffle of the candidates.
inline Quaternion choose_pole(std::span<const QuaternionCurve> curves, std::uint64_t seed = 0) {
    const Quaternion fallback{-1, 0, 0, 0};
    if (pole_is_clear(fallback, curves)) return fallback;
    auto candidates = pole_candidates();
    std::mt19937_64 rng(seed);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    for (const auto& p : candidates)
        if (pole_is_clear(p, curves)) return p;
    throw PoleTooClose("choose_pole: every candidate pole lies on a curve");
}

inline SampledCurve project(const QuaternionCurve& c, const Quaternion& pole) {
    SampledCurve out;
    out.closed = c.closed;
    out.points.reserve(c.points.size());
    for (const auto& q : c.points) out.points.push_back(stereographic(q, pole));
    return out;
}

inline constexpr int kMinLinkingSamples = 64;
inline constexpr double kMinCurveSeparation = 1e-3;

inline double min_distance(const SampledCurve& a, const SampledCurve& b) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& p : a.points)
        for (const auto& q : b.points) d = std::min(d, (p - q).norm());
    return d;
}

/// Midpoint-rule Gauss integral
///   (1 / 4 pi) sum_ij (m_i - m_j) . (d_i x d_j) / |m_i - m_j|^3
/// over segments of the two closed polygons, in a fixed order.
inline double gauss_linking(const SampledCurve& a, const SampledCurve& b) {
    for (const auto* c : {&a, &b}) {
        if (!c->closed || !c->closure_ok()) throw std::invalid_argument("gauss_linking: curves must be closed");
        if (c->segments() < static_cast<std::size_t>(kMinLinkingSamples))
            throw std::invalid_argument("gauss_linking: need at least 64 samples per curve");
    }
    if (min_distance(a, b) <= kMinCurveSeparation) throw std::invalid_argument("gauss_linking: curves intersect");

    auto segments = [](const SampledCurve& c, std::vector<Vec3>& mid, std::vector<Vec3>& dir) {
        for (std::size_t i = 0; i + 1 < c.points.size(); ++i) {
            mid.push_back(0.5 * (c.points[i] + c.points[i + 1]));
            dir.push_back(c.points[i + 1] - c.points[i]);
        }
    };
    std::vector<Vec3> ma, da, mb, db;
    segments(a, ma, da);
    segments(b, mb, db);
    double sum = 0;
    for (std::size_t i = 0; i < ma.size(); ++i) {
        double row = 0;
        for (std::size_t j = 0; j < mb.size(); ++j) {
            const Vec3 r = ma[i] - mb[j];
            const double n = r.norm();
            row += r.dot(da[i].cross(db[j])) / (n * n * n);
        }
        sum += row;
    }
    return sum / (4 * kPi);
}

/// Planar circle with the given center, unit normal and radius.
inline SampledCurve circle(const Vec3& center, const Vec3& normal, double radius, int samples) {
    const Vec3 n = (1 / normal.norm()) * normal;
    const Vec3 helper = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    const Vec3 u = (1 / n.cross(helper).norm()) * n.cross(helper);
    const Vec3 v = n.cross(u);
    SampledCurve c;
    for (int s = 0; s < samples; ++s) {
        const double th = 2 * kPi * s / samples;
        c.points.push_back(center + radius * std::cos(th) * u + radius * std::sin(th) * v);
    }
    c.points.push_back(c.points.front());
    return c;
}

struct FiberLinking {
    Vec3 p1, p2;
    Quaternion pole;
    double linking = 0;
};

/// Links the Hopf fibers over p1 and p2 after projecting from a clear pole.
inline FiberLinking fiber_linking(const Vec3& p1, const Vec3& p2, int samples, std::uint64_t seed = 0) {
    const std::array<QuaternionCurve, 2> fibers{fiber_curve(p1, samples), fiber_curve(p2, samples)};
    const Quaternion pole = choose_pole(fibers, seed);
    return {p1, p2, pole, gauss_linking(project(fibers[0], pole), project(fibers[1], pole))};
}

inline Vec3 random_unit_vector(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0, 1);
    for (;;) {
        Vec3 v{n(rng), n(rng), n(rng)};
        if (v.norm() > 1e-6) return (1 / v.norm()) * v;
    }
}

inline Quaternion random_unit_quaternion(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0, 1);
    for (;;) {
        Quaternion q{n(rng), n(rng), n(rng), n(rng)};
        if (q.norm() > 1e-6) return q.normalized();
    }
}

// ---------------------------------------------------------------------------
// Ball model of SO(3): the closed ball of radius pi with antipodal boundary
// points identified.

inline constexpr double kBoundaryBand = 1e-9;

class BallPoint {
public:
    BallPoint(double x, double y, double z) : v_{x, y, z} {
        const double n = v_.norm();
        if (n > kPi + 1e-12) throw std::invalid_argument("BallPoint: outside the closed ball of radius pi");
        if (n >= kPi - kBoundaryBand) {
            // First nonzero coordinate positive picks one representative of each antipodal pair.
            for (double c : {v_.x, v_.y, v_.z}) {
                if (std::abs(c) > 1e-12) {
                    if (c < 0) v_ = -v_;
                    break;
                }
            }
        }
    }

    [[nodiscard]] const Vec3& vec() const { return v_; }
    [[nodiscard]] bool on_boundary() const { return v_.norm() >= kPi - kBoundaryBand; }
    friend bool operator==(const BallPoint&, const BallPoint&) = default;

private:
    Vec3 v_;
};

/// Rotation about the direction of b by the angle |b|.
inline Rotation3 ball_to_rotation(const BallPoint& b) {
    const double angle = b.vec().norm();
    if (angle < 1e-15) return Rotation3::identity();
    return axis_angle(b.vec(), angle);
}

enum class LoopName { Gamma, Alpha, Beta };

inline std::string to_string(LoopName n) {
    switch (n) {
        case LoopName::Gamma: return "gamma";
        case LoopName::Alpha: return "alpha";
        case LoopName::Beta: return "beta";
    }
    return {};
}

inline void require_unit_interval(double t, const char* who) {
    if (!(t >= 0 && t <= 1)) throw std::invalid_argument(std::string(who) + ": parameter outside [0, 1]");
}

/// gamma(t) = [0, 0, pi cos pi t]; alpha/beta(t) = [0, -/+ pi sin pi t, pi cos pi t].
inline BallPoint loop_point(LoopName name, double t) {
    require_unit_interval(t, "loop_point");
    const double s = kPi * std::sin(kPi * t), c = kPi * std::cos(kPi * t);
    switch (name) {
        case LoopName::Gamma: return {0, 0, c};
        case LoopName::Alpha: return {0, -s, c};
        case LoopName::Beta: return {0, s, c};
    }
    throw std::invalid_argument("loop_point: unknown loop");
}

enum class HomotopySide { Alpha, Beta };

/// H(s, t) = [0, -/+ pi s sin pi t, pi cos pi t]; H(0, .) = gamma, H(1, .) = alpha or beta.
inline BallPoint homotopy_H(HomotopySide side, double s, double t) {
    require_unit_interval(s, "homotopy_H");
    require_unit_interval(t, "homotopy_H");
    const double sign = side == HomotopySide::Alpha ? -1 : 1;
    return {0, sign * kPi * s * std::sin(kPi * t), kPi * std::cos(kPi * t)};
}

/// The explicit matrix formulas for gamma, alpha and beta at any real t.
inline Rotation3 matrix_formula(LoopName name, double t) {
    Rotation3 r;
    switch (name) {
        case LoopName::Gamma: {
            const double c = std::cos(kPi * t), s = std::sin(kPi * t);
            r.m = {{{c, s, 0}, {-s, c, 0}, {0, 0, 1}}};
            break;
        }
        case LoopName::Alpha: {
            const double c = std::cos(2 * kPi * t), s = std::sin(2 * kPi * t);
            r.m = {{{-1, 0, 0}, {0, -c, -s}, {0, -s, c}}};
            break;
        }
        case LoopName::Beta: {
            const double c = std::cos(2 * kPi * t), s = std::sin(2 * kPi * t);
            r.m = {{{-1, 0, 0}, {0, -c, s}, {0, s, c}}};
            break;
        }
    }
    return r;
}

inline Rotation3 matrix_path(LoopName name, double t) {
    require_unit_interval(t, "matrix_path");
    return matrix_formula(name, t);
}

struct MatrixPathFinding {
    LoopName loop;
    double max_deviation = 0;          // max over samples of |matrix_path - ball_to_rotation(loop_point)|
    bool agrees = false;               // max_deviation < 1e-9
    bool closed_on_unit_interval = false;
    std::string note;
};

/// Compares each explicit matrix path with the axis-angle image of its ball loop.
inline std::vector<MatrixPathFinding> matrix_path_findings(int samples = 1024) {
    std::vector<MatrixPathFinding> out;
    for (LoopName n : {LoopName::Gamma, LoopName::Alpha, LoopName::Beta}) {
        MatrixPathFinding f;
        f.loop = n;
        for (int s = 0; s <= samples; ++s) {
            const double t = static_cast<double>(s) / samples;
            f.max_deviation = std::max(f.max_deviation,
                                       max_abs_diff(matrix_path(n, t), ball_to_rotation(loop_point(n, t))));
        }
        f.agrees = f.max_deviation < kUnitTolerance;
        f.closed_on_unit_interval = max_abs_diff(matrix_path(n, 0), matrix_path(n, 1)) < kUnitTolerance;
        if (n == LoopName::Gamma && !f.agrees)
            f.note = "explicit gamma matrix is the rotation by -pi t about z: it runs from the identity to "
                     "diag(-1,-1,1) on [0,1] and closes only over [0,2]; the ball loop maps to the rotation "
                     "by pi cos(pi t) about z";
        out.push_back(std::move(f));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lifting loops through S^3 -> SO(3).

/// steps + 1 samples of f on [t0, t1].
inline std::vector<Rotation3> sample_path(const std::function<Rotation3(double)>& f, int steps, double t0 = 0,
                                          double t1 = 1) {
    if (steps < 1) throw std::invalid_argument("sample_path: steps must be >= 1");
    std::vector<Rotation3> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    for (int s = 0; s <= steps; ++s) out.push_back(f(t0 + (t1 - t0) * s / steps));
    return out;
}

/// Loop a followed by loop b; b must start where a ends.
inline std::vector<Rotation3> concatenate(const std::vector<Rotation3>& a, const std::vector<Rotation3>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("concatenate: empty path");
    if (max_abs_diff(a.back(), b.front()) > kUnitTolerance)
        throw std::invalid_argument("concatenate: paths do not meet");
    std::vector<Rotation3> out = a;
    out.insert(out.end(), b.begin() + 1, b.end());
    return out;
}

inline constexpr int kMinLiftSteps = 256;
inline constexpr double kMaxLiftJump = 0.2;

struct LiftResult {
    std::vector<Quaternion> path;
    int monodromy = 1;  // -1: the lift ends at minus its start
};

inline LiftResult lift_loop(std::span<const Rotation3> loop) {
    if (loop.size() < static_cast<std::size_t>(kMinLiftSteps) + 1)
        throw std::invalid_argument("lift_loop: need at least 256 steps");
    if (max_abs_diff(loop.front(), loop.back()) > kUnitTolerance)
        throw std::invalid_argument("lift_loop: path is not closed");
    LiftResult out;
    out.path.reserve(loop.size());
    out.path.push_back(quat_from_rot(loop[0]));
    for (std::size_t i = 1; i < loop.size(); ++i) {
        if (rotation_angle(loop[i - 1].transpose() * loop[i]) > kMaxLiftJump)
            throw std::invalid_argument("lift_loop: consecutive rotations differ by more than 0.2 rad at step " +
                                        std::to_string(i));
        Quaternion q = quat_from_rot(loop[i]);
        if (q.dot(out.path.back()) < 0) q = -q;
        out.path.push_back(q);
    }
    out.monodromy = out.path.back().dot(out.path.front()) > 0 ? 1 : -1;
    return out;
}

// Named loops used by the CLI and the acceptance suite.
inline std::vector<Rotation3> ball_loop(LoopName name, int steps) {
    return sample_path([name](double t) { return ball_to_rotation(loop_point(name, t)); }, steps);
}

inline std::vector<Rotation3> homotopy_slice(HomotopySide side, double s, int steps) {
    return sample_path([side, s](double t) { return ball_to_rotation(homotopy_H(side, s, t)); }, steps);
}

/// The explicit gamma matrix over its full period [0, 2].
inline std::vector<Rotation3> gamma_matrix_period(int steps) {
    return sample_path([](double t) { return matrix_formula(LoopName::Gamma, t); }, steps, 0, 2);
}

// ---------------------------------------------------------------------------
// JSON curve interchange: arrays of [x, y, z] or [w, x, y, z].

inline nlohmann::json to_json(const SampledCurve& c) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& p : c.points) a.push_back({p.x, p.y, p.z});
    return a;
}

inline nlohmann::json to_json(const QuaternionCurve& c) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& q : c.points) a.push_back({q.w, q.x, q.y, q.z});
    return a;
}

inline nlohmann::json to_json(std::span<const Quaternion> path) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& q : path) a.push_back({q.w, q.x, q.y, q.z});
    return a;
}

/// Reads a closed curve; 4-vectors are treated as unit quaternions and
/// projected from `pole`.
inline SampledCurve curve_from_json(const nlohmann::json& j, const Quaternion& pole = {-1, 0, 0, 0}) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("curve JSON must be a non-empty array");
    SampledCurve c;
    for (const auto& p : j) {
        if (!p.is_array()) throw std::invalid_argument("curve points must be arrays");
        if (p.size() == 3) {
            c.points.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
        } else if (p.size() == 4) {
            c.points.push_back(stereographic(
                Quaternion{p[0].get<double>(), p[1].get<double>(), p[2].get<double>(), p[3].get<double>()}, pole));
        } else {
            throw std::invalid_argument("curve points must have 3 or 4 coordinates");
        }
    }
    if (!c.closure_ok()) c.points.push_back(c.points.front());
    return c;
}

}  // namespace stemcert::hopf
