#include "oracles.hpp"
#include "stemcert/hopf.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace stemcert::hopf;

namespace {

oracle::V3 ov(const Vec3& v) { return {v.x, v.y, v.z}; }

void expect_near(const Vec3& a, const oracle::V3& b, double tol) {
    EXPECT_NEAR(a.x, b.x, tol);
    EXPECT_NEAR(a.y, b.y, tol);
    EXPECT_NEAR(a.z, b.z, tol);
}

}  // namespace

TEST(Quaternion, HamiltonRelations) {
    const auto i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
    EXPECT_EQ(i * j, k);
    EXPECT_EQ(j * k, i);
    EXPECT_EQ(k * i, j);
    EXPECT_EQ(i * j * k, -Quaternion::one());
    EXPECT_EQ(j * i, -k);
}

TEST(HopfMap, BasePointsAndUnitCheck) {
    const Vec3 p = hopf_map(Quaternion::one());
    EXPECT_NEAR(p.x, 1, 1e-15);
    const Vec3 q = hopf_map(Quaternion::j());
    EXPECT_NEAR(q.x, -1, 1e-15);
    EXPECT_THROW(hopf_map({2, 0, 0, 0}), std::invalid_argument);
}

TEST(Rotation, MatchesVectorFormula) {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 1000; ++trial) {
        const Quaternion q = random_unit_quaternion(rng);
        const Vec3 v = random_unit_vector(rng);
        expect_near(rot_from_quat(q).apply(v), oracle::rotate(q.w, {q.x, q.y, q.z}, ov(v)), 1e-12);
    }
}

TEST(Rotation, AxisAngleAgreesWithQuaternion) {
    std::mt19937_64 rng(52);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int trial = 0; trial < 200; ++trial) {
        const Vec3 u = random_unit_vector(rng);
        const double a = angle(rng);
        const Quaternion q{std::cos(a / 2), std::sin(a / 2) * u.x, std::sin(a / 2) * u.y, std::sin(a / 2) * u.z};
        EXPECT_LT(max_abs_diff(axis_angle(u, a), rot_from_quat(q)), 1e-12);
    }
}

TEST(Property, DoubleCoverIsAHomomorphism) {
    std::mt19937_64 rng(53);
    double worst = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const Quaternion p = random_unit_quaternion(rng), q = random_unit_quaternion(rng);
        worst = std::max(worst, max_abs_diff(rot_from_quat(p * q), rot_from_quat(p) * rot_from_quat(q)));
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(Property, KernelIsPlusMinusOne) {
    std::mt19937_64 rng(54);
    EXPECT_LT(max_abs_diff(rot_from_quat(-Quaternion::one()), Rotation3::identity()), 1e-15);
    for (int trial = 0; trial < 1000; ++trial) {
        const Quaternion q = random_unit_quaternion(rng);
        ASSERT_EQ(rot_from_quat(q).m, rot_from_quat(-q).m);
        ASSERT_TRUE(is_rotation(rot_from_quat(q)));
        const Quaternion back = quat_from_rot(rot_from_quat(q));
        ASSERT_LT(std::min(distance(back, q), distance(back, -q)), 1e-12);
    }
}

TEST(Property, QuatFromRotNearHalfTurn) {
    for (double eps : {0.0, 1e-12, 1e-8, 1e-4}) {
        const Vec3 u = (1 / std::sqrt(3.0)) * Vec3{1, -1, 1};
        const Rotation3 r = axis_angle(u, kPi - eps);
        EXPECT_LT(max_abs_diff(rot_from_quat(quat_from_rot(r)), r), 1e-12) << eps;
    }
}

TEST(Property, HopfMapIsConstantOnFibers) {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 200; ++trial) {
        const Vec3 p = random_unit_vector(rng);
        const auto fiber = fiber_curve(p, 64);
        ASSERT_TRUE(distance(fiber.points.front(), fiber.points.back()) < 1e-12);
        for (const auto& q : fiber.points) {
            ASSERT_TRUE(q.is_unit());
            ASSERT_LT((hopf_map(q) - p).norm(), 1e-12);
        }
    }
}

TEST(Stereographic, RoundTripAndPole) {
    std::mt19937_64 rng(56);
    for (const auto& pole : pole_candidates())
        for (int trial = 0; trial < 50; ++trial) {
            const Quaternion q = random_unit_quaternion(rng);
            if (distance(q, pole) < 1e-2) continue;
            ASSERT_LT(distance(inverse_stereographic(stereographic(q, pole), pole), q), 1e-9);
        }
    EXPECT_THROW(stereographic({-1, 0, 0, 0}, {-1, 0, 0, 0}), PoleTooClose);
    EXPECT_EQ(pole_candidates().size(), 24u);
}

TEST(Stereographic, PoleAvoidsCurves) {
    // the fiber over (-1, 0, 0) passes through -1, so another pole is used
    const std::array<QuaternionCurve, 1> curves{fiber_curve({-1, 0, 0}, 64)};
    const Quaternion pole = choose_pole(curves, 7);
    bool on_curve = false;
    for (const auto& q : curves[0].points) on_curve = on_curve || distance(q, {-1, 0, 0, 0}) < 1e-3;
    if (on_curve) {
        EXPECT_NE(pole, (Quaternion{-1, 0, 0, 0}));
    }
    EXPECT_TRUE(pole_is_clear(pole, curves));
}

TEST(Linking, StandardHopfLinkOfCircles) {
    const auto a = circle({0, 0, 0}, {0, 0, 1}, 1, 256);
    const auto b = circle({1, 0, 0}, {0, 1, 0}, 1, 256);
    EXPECT_NEAR(std::abs(gauss_linking(a, b)), 1, 0.02);
    const auto far = circle({5, 0, 0}, {0, 1, 0}, 1, 256);
    EXPECT_NEAR(gauss_linking(a, far), 0, 0.02);
    EXPECT_NEAR(gauss_linking(a, b), gauss_linking(b, a), 1e-9);
}

TEST(Linking, Preconditions) {
    const auto a = circle({0, 0, 0}, {0, 0, 1}, 1, 256);
    EXPECT_THROW(gauss_linking(a, circle({0, 0, 0}, {0, 0, 1}, 1, 32)), std::invalid_argument);
    EXPECT_THROW(gauss_linking(a, a), std::invalid_argument);
    SampledCurve open = a;
    open.points.pop_back();
    EXPECT_THROW(gauss_linking(open, circle({1, 0, 0}, {0, 1, 0}, 1, 256)), std::invalid_argument);
}

TEST(Linking, RandomFibersAreLinkedOnce) {
    std::mt19937_64 rng(57);
    for (int trial = 0; trial < 10; ++trial) {
        const auto r = fiber_linking(random_unit_vector(rng), random_unit_vector(rng), 512, trial);
        EXPECT_NEAR(std::abs(r.linking), 1, 0.02);
    }
}

TEST(Ball, BoundaryIdentification) {
    const BallPoint a(0, 0, kPi), b(0, 0, -kPi);
    EXPECT_EQ(a, b);
    EXPECT_LT(max_abs_diff(ball_to_rotation(a), ball_to_rotation(b)), 1e-12);
    EXPECT_THROW(BallPoint(0, 0, 4), std::invalid_argument);
    EXPECT_THROW(loop_point(LoopName::Gamma, 1.5), std::invalid_argument);
}

TEST(Loops, HomotopyEndpoints) {
    for (double t : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        EXPECT_EQ(homotopy_H(HomotopySide::Alpha, 0, t), loop_point(LoopName::Gamma, t));
        EXPECT_EQ(homotopy_H(HomotopySide::Alpha, 1, t), loop_point(LoopName::Alpha, t));
        EXPECT_EQ(homotopy_H(HomotopySide::Beta, 1, t), loop_point(LoopName::Beta, t));
    }
}

TEST(Loops, MatrixPathFindings) {
    const auto findings = matrix_path_findings();
    ASSERT_EQ(findings.size(), 3u);
    EXPECT_FALSE(findings[0].agrees);  // gamma as displayed is a half turn of period 2
    EXPECT_FALSE(findings[0].closed_on_unit_interval);
    EXPECT_TRUE(findings[1].agrees);
    EXPECT_TRUE(findings[2].agrees);
    for (double t : {0.0, 0.3, 1.0}) EXPECT_TRUE(is_rotation(matrix_path(LoopName::Gamma, t)));
}

TEST(Lift, Monodromy) {
    EXPECT_EQ(lift_loop(ball_loop(LoopName::Gamma, 512)).monodromy, -1);
    const auto g = ball_loop(LoopName::Gamma, 512);
    EXPECT_EQ(lift_loop(concatenate(g, g)).monodromy, 1);
    EXPECT_EQ(lift_loop(gamma_matrix_period(512)).monodromy, -1);
    EXPECT_EQ(lift_loop(ball_loop(LoopName::Alpha, 512)).monodromy, -1);
    EXPECT_EQ(lift_loop(concatenate(ball_loop(LoopName::Alpha, 512), ball_loop(LoopName::Beta, 512))).monodromy, 1);
    EXPECT_EQ(lift_loop(sample_path([](double) { return Rotation3::identity(); }, 300)).monodromy, 1);
}

TEST(Lift, StableUnderRefinementAndHomotopy) {
    for (int steps : {256, 512, 1024, 2048, 4096}) {
        EXPECT_EQ(lift_loop(ball_loop(LoopName::Gamma, steps)).monodromy, -1) << steps;
        EXPECT_EQ(lift_loop(gamma_matrix_period(steps)).monodromy, -1) << steps;
    }
    for (int i = 0; i <= 10; ++i)
        for (auto side : {HomotopySide::Alpha, HomotopySide::Beta})
            EXPECT_EQ(lift_loop(homotopy_slice(side, i / 10.0, 512)).monodromy, -1) << i;
}

TEST(Lift, ContinuityOfTheLift) {
    const auto r = lift_loop(ball_loop(LoopName::Gamma, 1024));
    for (std::size_t i = 1; i < r.path.size(); ++i) ASSERT_LT(distance(r.path[i], r.path[i - 1]), 0.1);
    EXPECT_NEAR(distance(r.path.front(), -r.path.back()), 0, 1e-9);
}

TEST(Lift, Preconditions) {
    EXPECT_THROW(lift_loop(ball_loop(LoopName::Gamma, 100)), std::invalid_argument);
    const auto open = sample_path([](double t) { return axis_angle({0, 0, 1}, t); }, 512);
    EXPECT_THROW(lift_loop(open), std::invalid_argument);
    const auto jumpy = sample_path([](double t) { return axis_angle({0, 0, 1}, 2 * kPi * std::floor(4 * t) / 4); }, 512);
    EXPECT_THROW(lift_loop(jumpy), std::invalid_argument);
}

TEST(Serialization, CurveRoundTrip) {
    const auto a = circle({0, 0, 0}, {0, 0, 1}, 1, 128);
    const auto back = curve_from_json(to_json(a));
    ASSERT_EQ(back.points.size(), a.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) ASSERT_LT((back.points[i] - a.points[i]).norm(), 1e-15);
    EXPECT_THROW(curve_from_json(nlohmann::json::array()), std::invalid_argument);
    EXPECT_THROW(curve_from_json(nlohmann::json::array({{1, 2}})), std::invalid_argument);
}
