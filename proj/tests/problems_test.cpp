#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include <Eigen/Cholesky>
#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "pareto/errors.hpp"
#include "pareto/problems.hpp"

namespace pareto {
namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

ObjectiveBundle toy() { return make_problem(registered_problem("paper-toy")); }

TEST(ScalarizeValue, ToyAtOneThree) {
  EXPECT_DOUBLE_EQ(scalarize_value(toy(), vec({0.5, 0.5}), vec({1.0, 3.0})), 4.0);
}

TEST(ScalarizeValue, IdenticalObjectivesGiveThatObjective) {
  Objective f{[](const Vector& x) { return std::exp(x(0)) + x(1) * x(1); },
              [](const Vector& x) -> Vector { return vec({std::exp(x(0)), 2.0 * x(1)}); },
              [](const Vector& x) -> Matrix {
                Matrix h = Matrix::Zero(2, 2);
                h(0, 0) = std::exp(x(0));
                h(1, 1) = 2.0;
                return h;
              }};
  ObjectiveBundle same("same", 2, {f, f});
  const Vector x = vec({0.3, -1.2});
  for (double l1 : {0.1, 0.37, 0.9}) {
    EXPECT_NEAR(scalarize_value(same, vec({l1, 1.0 - l1}), x), f.value(x), 1e-14);
  }
}

TEST(ScalarizeValue, BoundaryWeightsAreRejected) {
  const auto b = toy();
  const Vector x = vec({1.0, 3.0});
  EXPECT_THROW(scalarize_value(b, vec({1.0, 0.0}), x), InvalidWeight);
  EXPECT_THROW(scalarize_value(b, vec({1.0 - 1e-12, 0.0}), x), InvalidWeight);
  EXPECT_THROW(scalarize_value(b, vec({0.5, 0.6}), x), InvalidWeight);
  EXPECT_THROW(scalarize_value(b, vec({-0.5, 1.5}), x), InvalidWeight);
  // Sum within the 1e-12 tolerance is accepted.
  EXPECT_NO_THROW(scalarize_value(b, vec({0.5 + 4e-13, 0.5}), x));
}

TEST(ScalarizeValue, DimensionMismatchIsInvalidArgument) {
  const auto b = toy();
  try {
    scalarize_value(b, vec({0.2, 0.3, 0.5}), vec({1.0, 3.0}));
    FAIL() << "expected InvalidArgument";
  } catch (const InvalidWeight&) {
    FAIL() << "size mismatch must not be reported as a bad weight";
  } catch (const InvalidArgument&) {
  }
  EXPECT_THROW(scalarize_grad(b, vec({0.5, 0.5}), vec({1.0, 2.0, 3.0})), InvalidArgument);
}

TEST(ScalarizeGrad, ToyStationaryPoint) {
  const Vector g = scalarize_grad(toy(), vec({0.5, 0.5}), vec({1.8, 2.2}));
  EXPECT_NEAR(g(0), 0.0, 1e-14);
  EXPECT_NEAR(g(1), 0.0, 1e-14);
}

TEST(ScalarizeGrad, ToyAtOneThree) {
  // grad f1(1,3) = (2*0 + 2*(-2), -2*(-2)) = (-4, 4); grad f2(1,3) = (2*(-2), 2*0 - 2*(-2)) = (-4, 4).
  const Vector g = scalarize_grad(toy(), vec({0.5, 0.5}), vec({1.0, 3.0}));
  EXPECT_NEAR(g(0), -4.0, 1e-14);
  EXPECT_NEAR(g(1), 4.0, 1e-14);
}

TEST(ScalarizeGrad, CommonMinimizerHasZeroGradient) {
  const Vector a = vec({0.7, -2.0, 1.5});
  const auto b = make_anchor_problem({a, a, a});
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    EXPECT_LT(scalarize_grad(b, oracle::random_weights(3, rng), a).norm(), 1e-15);
  }
}

TEST(ScalarizeHess, ToyClosedForm) {
  const auto b = toy();
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10; ++t) {
    const Vector lambda = oracle::random_weights(2, rng);
    const Matrix h = scalarize_hess(b, lambda, oracle::random_point(2, rng, 5.0));
    EXPECT_NEAR(h(0, 0), 2.0 * lambda(0) + 2.0, 1e-14);
    EXPECT_NEAR(h(0, 1), -2.0, 1e-14);
    EXPECT_NEAR(h(1, 0), -2.0, 1e-14);
    EXPECT_NEAR(h(1, 1), 2.0 * lambda(1) + 2.0, 1e-14);
  }
}

TEST(ScalarizeHess, ToyMidpointSpectrum) {
  const Matrix h = scalarize_hess(toy(), vec({0.5, 0.5}), vec({0.0, 0.0}));
  EXPECT_DOUBLE_EQ(h(0, 0), 3.0);
  EXPECT_DOUBLE_EQ(h(1, 1), 3.0);
  const auto eig = oracle::sym2_eigenvalues(h(0, 0), h(0, 1), h(1, 1));
  EXPECT_NEAR(eig[0], 1.0, 1e-14);
  EXPECT_NEAR(eig[1], 5.0, 1e-14);
}

TEST(ScalarizeHess, IdentityBundle) {
  const auto b = make_anchor_problem({vec({1.0, 2.0}), vec({-1.0, 0.0})});
  EXPECT_TRUE(scalarize_hess(b, vec({0.3, 0.7}), vec({5.0, 5.0})).isApprox(Matrix::Identity(2, 2)));
}

TEST(MakeProblem, ToyValues) {
  const Vector f = toy().values(vec({1.0, 3.0}));
  EXPECT_DOUBLE_EQ(f(0), 4.0);
  EXPECT_DOUBLE_EQ(f(1), 4.0);
  EXPECT_EQ(toy().n(), 2);
  EXPECT_EQ(toy().m(), 2);
}

TEST(MakeProblem, DegenerateSpectrumGivesIdentity) {
  const auto b = make_problem({ProblemKind::RandomQuadratic, 4, 2, 1.0, 1.0, 7});
  for (Index i = 0; i < 2; ++i) {
    const Matrix h = b.hessian(i, Vector::Zero(4));
    EXPECT_LT((h - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(MakeProblem, RandomQuadraticSpectrumEndpoints) {
  const auto b = make_problem({ProblemKind::RandomQuadratic, 8, 3, 1.0, 100.0, 42});
  std::mt19937_64 rng(5);
  for (Index i = 0; i < 3; ++i) {
    const Matrix h = b.hessian(i, Vector::Zero(8));
    for (int s = 0; s < 200; ++s) {
      Vector y = oracle::random_point(8, rng);
      y.normalize();
      const double q = y.dot(h * y);
      EXPECT_GE(q, 1.0 - 1e-9);
      EXPECT_LE(q, 100.0 + 1e-9);
    }
    // The extreme eigenvalues are exactly c and L, so some Rayleigh quotient
    // reaches each end: check via a power iteration on h and on 101 I - h.
    Vector v = Vector::Ones(8);
    for (int it = 0; it < 2000; ++it) v = (h * v).normalized();
    EXPECT_NEAR(v.dot(h * v), 100.0, 1e-6);
    Vector u = Vector::Ones(8);
    const Matrix flipped = 101.0 * Matrix::Identity(8, 8) - h;
    for (int it = 0; it < 2000; ++it) u = (flipped * u).normalized();
    EXPECT_NEAR(u.dot(h * u), 1.0, 1e-6);
  }
}

TEST(MakeProblem, Errors) {
  EXPECT_THROW(make_problem({ProblemKind::RandomQuadratic, 4, 2, 5.0, 1.0, 0}), InvalidArgument);
  EXPECT_THROW(make_problem({ProblemKind::QuadraticLogistic, 0, 2, 1.0, 2.0, 0}), InvalidArgument);
  EXPECT_THROW(make_problem({ProblemKind::RandomQuadratic, 4, 1, 1.0, 2.0, 0}), InvalidArgument);
  EXPECT_THROW(parse_problem_kind("rosenbrock"), InvalidArgument);
  EXPECT_THROW(registered_problem("nope"), InvalidArgument);
}

TEST(MakeProblem, SeedsAreReproducible) {
  const ProblemSpec spec{ProblemKind::QuadraticLogistic, 5, 3, 1.0, 10.0, 99};
  const auto a = make_problem(spec);
  const auto b = make_problem(spec);
  const Vector x = Vector::LinSpaced(5, -1.0, 1.0);
  EXPECT_EQ(a.values(x), b.values(x));
  auto other = spec;
  other.seed = 100;
  EXPECT_NE(make_problem(other).values(x), a.values(x));
}

TEST(ConvexityBoundsTest, Toy) {
  const auto cb = convexity_bounds(toy());
  EXPECT_NEAR(cb.c, 3.0 - std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(cb.L, 3.0 + std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(cb.omega, 6.854101966249685, 1e-12);
  EXPECT_FALSE(cb.estimated);
  // Both constant Hessians have exactly this spectrum.
  const auto e1 = oracle::sym2_eigenvalues(4.0, -2.0, 2.0);
  const auto e2 = oracle::sym2_eigenvalues(2.0, -2.0, 4.0);
  EXPECT_NEAR(e1[0], cb.c, 1e-14);
  EXPECT_NEAR(e2[1], cb.L, 1e-14);
}

TEST(ConvexityBoundsTest, IdentityAndGenerated) {
  const auto id = convexity_bounds(make_anchor_problem({vec({0.0}), vec({1.0})}));
  EXPECT_EQ(id.c, 1.0);
  EXPECT_EQ(id.L, 1.0);
  EXPECT_EQ(id.omega, 1.0);
  const auto rq = convexity_bounds(make_problem({ProblemKind::RandomQuadratic, 6, 2, 1.0, 100.0, 1}));
  EXPECT_DOUBLE_EQ(rq.omega, 100.0);
}

TEST(ConvexityBoundsTest, EstimatedForUndeclaredBundle) {
  auto quad = [](double s) {
    return Objective{[s](const Vector& x) { return 0.5 * s * x.squaredNorm() + x(0) * x(0); },
                     [s](const Vector& x) -> Vector {
                       Vector g = s * x;
                       g(0) += 2.0 * x(0);
                       return g;
                     },
                     [s](const Vector&) -> Matrix {
                       Matrix h = s * Matrix::Identity(2, 2);
                       h(0, 0) += 2.0;
                       return h;
                     }};
  };
  ObjectiveBundle user("user", 2, {quad(1.0), quad(3.0)});
  const auto cb = convexity_bounds(user);
  EXPECT_TRUE(cb.estimated);
  EXPECT_NEAR(cb.c, 1.0, 1e-12);
  EXPECT_NEAR(cb.L, 5.0, 1e-12);
  EXPECT_NEAR(cb.omega, 5.0, 1e-12);
}

TEST(ProblemSpecJson, RoundTripAndErrors) {
  const ProblemSpec spec{ProblemKind::QuadraticLogistic, 6, 2, 0.5, 20.0, 123456789012345ULL};
  const nlohmann::json j = spec;
  EXPECT_EQ(j.at("kind"), "quadratic-logistic");
  for (const char* key : {"kind", "n", "m", "c", "L", "seed"}) EXPECT_TRUE(j.contains(key)) << key;
  const auto back = j.get<ProblemSpec>();
  EXPECT_EQ(back.kind, spec.kind);
  EXPECT_EQ(back.n, spec.n);
  EXPECT_EQ(back.m, spec.m);
  EXPECT_EQ(back.c, spec.c);
  EXPECT_EQ(back.L, spec.L);
  EXPECT_EQ(back.seed, spec.seed);

  EXPECT_THROW(nlohmann::json({{"n", 3}}).get<ProblemSpec>(), InvalidArgument);
  EXPECT_THROW(nlohmann::json({{"kind", "bogus"}}).get<ProblemSpec>(), InvalidArgument);
  const auto toy_spec = nlohmann::json({{"kind", "paper-toy"}}).get<ProblemSpec>();
  EXPECT_EQ(toy_spec.n, 2);
  EXPECT_EQ(toy_spec.m, 2);
}

TEST(ObjectiveBundleTest, ConstructionContract) {
  Objective f{[](const Vector& x) { return x.squaredNorm(); },
              [](const Vector& x) -> Vector { return 2.0 * x; },
              [](const Vector& x) -> Matrix { return 2.0 * Matrix::Identity(x.size(), x.size()); }};
  EXPECT_THROW(ObjectiveBundle("one", 2, {f}), InvalidArgument);
  EXPECT_THROW(ObjectiveBundle("zero-dim", 0, {f, f}), InvalidArgument);
  Objective broken = f;
  broken.hessian = nullptr;
  EXPECT_THROW(ObjectiveBundle("broken", 2, {f, broken}), InvalidArgument);
  EXPECT_THROW(ConvexityBounds::from(0.0, 1.0), InvalidArgument);
  EXPECT_THROW(ConvexityBounds::from(2.0, 1.0), InvalidArgument);
}

// Analytic derivatives against central differences, tested per built-in bundle.
class BuiltinBundle : public ::testing::TestWithParam<int> {
 protected:
  ObjectiveBundle bundle() const { return oracle::builtin_bundles().at(static_cast<std::size_t>(GetParam())); }
};

TEST_P(BuiltinBundle, GradientMatchesFiniteDifferences) {
  const auto b = bundle();
  std::mt19937_64 rng(20);
  for (int t = 0; t < 20; ++t) {
    const Vector x = oracle::random_point(b.n(), rng);
    const double h = 1e-6 * (1.0 + x.norm());
    for (Index i = 0; i < b.m(); ++i) {
      const Vector g = b.gradient(i, x);
      const Vector fd = oracle::fd_gradient([&](const Vector& y) { return b.value(i, y); }, x, h);
      EXPECT_LE((fd - g).norm() / std::max(1.0, g.norm()), 1e-6) << b.name() << " objective " << i;
    }
  }
}

TEST_P(BuiltinBundle, HessianMatchesFiniteDifferences) {
  const auto b = bundle();
  std::mt19937_64 rng(21);
  for (int t = 0; t < 20; ++t) {
    const Vector x = oracle::random_point(b.n(), rng);
    const double h = 1e-6 * (1.0 + x.norm());
    for (Index i = 0; i < b.m(); ++i) {
      const Matrix H = b.hessian(i, x);
      const Matrix fd = oracle::fd_jacobian([&](const Vector& y) { return b.gradient(i, y); }, x, h);
      EXPECT_LE((fd - H).norm() / std::max(1.0, H.norm()), 1e-5) << b.name() << " objective " << i;
      EXPECT_LT((H - H.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST_P(BuiltinBundle, ScalarizedHessianIsSpdWithinBounds) {
  const auto b = bundle();
  const auto cb = convexity_bounds(b);
  std::mt19937_64 rng(22);
  for (int t = 0; t < 100; ++t) {
    const Vector lambda = oracle::random_weights(b.m(), rng);
    const Vector x = oracle::random_point(b.n(), rng, 2.0);
    const Matrix h = scalarize_hess(b, lambda, x);
    Eigen::LLT<Matrix> llt(h);
    EXPECT_EQ(llt.info(), Eigen::Success);
    for (int s = 0; s < 5; ++s) {
      Vector y = oracle::random_point(b.n(), rng);
      y.normalize();
      const double q = y.dot(h * y);
      EXPECT_GE(q, cb.c - 1e-9);
      EXPECT_LE(q, cb.L + 1e-9);
    }
  }
}

TEST_P(BuiltinBundle, GradientIsAffineInWeights) {
  const auto b = bundle();
  std::mt19937_64 rng(23);
  for (int t = 0; t < 20; ++t) {
    const Vector l1 = oracle::random_weights(b.m(), rng);
    const Vector l2 = oracle::random_weights(b.m(), rng);
    const Vector x = oracle::random_point(b.n(), rng);
    const double alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    Vector mix = alpha * l1 + (1.0 - alpha) * l2;
    mix /= mix.sum();
    const Vector lhs = scalarize_grad(b, mix, x);
    const Vector rhs = alpha * scalarize_grad(b, l1, x) + (1.0 - alpha) * scalarize_grad(b, l2, x);
    EXPECT_LE((lhs - rhs).norm(), 1e-13 * (1.0 + rhs.norm()));
  }
}

TEST_P(BuiltinBundle, ConcurrentEvaluationMatchesSequential) {
  const auto b = bundle();
  std::mt19937_64 rng(24);
  std::vector<Vector> xs;
  for (int t = 0; t < 64; ++t) xs.push_back(oracle::random_point(b.n(), rng));
  const Vector lambda = Vector::Constant(b.m(), 1.0 / static_cast<double>(b.m()));
  std::vector<Vector> expected;
  for (const auto& x : xs) expected.push_back(scalarize_grad(b, lambda, x));

  std::vector<std::vector<Vector>> got(4);
  {
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < got.size(); ++w) {
      threads.emplace_back([&, w] {
        for (const auto& x : xs) got[w].push_back(scalarize_grad(b, lambda, x));
      });
    }
  }
  for (const auto& g : got) {
    for (std::size_t k = 0; k < xs.size(); ++k) EXPECT_EQ(g[k], expected[k]);
  }
}

INSTANTIATE_TEST_SUITE_P(All, BuiltinBundle, ::testing::Range(0, 4));

}  // namespace
}  // namespace pareto
