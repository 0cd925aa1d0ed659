#include "pareto/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <nlohmann/json.hpp>

#include "pareto/errors.hpp"

namespace pareto {

ConvexityBounds ConvexityBounds::from(double c, double L, bool estimated) {
  if (!(c > 0.0) || !(L >= c) || !std::isfinite(L)) {
    throw InvalidArgument("convexity bounds require 0 < c <= L");
  }
  return ConvexityBounds{c, L, L / c, estimated};
}

ObjectiveBundle::ObjectiveBundle(std::string name, Index n, std::vector<Objective> objectives,
                                 std::optional<ConvexityBounds> declared)
    : name_(std::move(name)), n_(n), objectives_(std::move(objectives)), declared_(declared) {
  if (n_ < 1) throw InvalidArgument("bundle dimension n must be >= 1");
  if (objectives_.size() < 2) throw InvalidArgument("bundle needs at least two objectives");
  for (const auto& obj : objectives_) {
    if (!obj.value || !obj.gradient || !obj.hessian) {
      throw InvalidArgument("objective '" + name_ + "' is missing an evaluator");
    }
  }
}

void ObjectiveBundle::check_point(const Vector& x) const {
  if (x.size() != n_) {
    throw InvalidArgument("point has " + std::to_string(x.size()) + " components, bundle '" +
                          name_ + "' expects " + std::to_string(n_));
  }
}

const Objective& ObjectiveBundle::objective(Index i) const {
  if (i < 0 || i >= m()) throw InvalidArgument("objective index out of range");
  return objectives_[static_cast<std::size_t>(i)];
}

double ObjectiveBundle::value(Index i, const Vector& x) const {
  check_point(x);
  return objective(i).value(x);
}

Vector ObjectiveBundle::gradient(Index i, const Vector& x) const {
  check_point(x);
  return objective(i).gradient(x);
}

Matrix ObjectiveBundle::hessian(Index i, const Vector& x) const {
  check_point(x);
  return objective(i).hessian(x);
}

Vector ObjectiveBundle::values(const Vector& x) const {
  check_point(x);
  Vector out(m());
  for (Index i = 0; i < m(); ++i) out(i) = objectives_[static_cast<std::size_t>(i)].value(x);
  return out;
}

void check_weights(const Vector& lambda, Index m) {
  if (lambda.size() != m) {
    throw InvalidArgument("weight vector has " + std::to_string(lambda.size()) +
                          " components, expected " + std::to_string(m));
  }
  for (Index i = 0; i < m; ++i) {
    if (!(lambda(i) > 0.0 && lambda(i) < 1.0)) {
      throw InvalidWeight("weight components must lie strictly inside (0,1)");
    }
  }
  if (std::abs(lambda.sum() - 1.0) > kSimplexTolerance) {
    throw InvalidWeight("weights must sum to 1");
  }
}

double scalarize_value(const ObjectiveBundle& bundle, const Vector& lambda, const Vector& x) {
  check_weights(lambda, bundle.m());
  double total = 0.0;
  for (Index i = 0; i < bundle.m(); ++i) total += lambda(i) * bundle.value(i, x);
  return total;
}

Vector scalarize_grad(const ObjectiveBundle& bundle, const Vector& lambda, const Vector& x) {
  check_weights(lambda, bundle.m());
  Vector g = Vector::Zero(bundle.n());
  for (Index i = 0; i < bundle.m(); ++i) g.noalias() += lambda(i) * bundle.gradient(i, x);
  return g;
}

Matrix scalarize_hess(const ObjectiveBundle& bundle, const Vector& lambda, const Vector& x) {
  check_weights(lambda, bundle.m());
  Matrix h = Matrix::Zero(bundle.n(), bundle.n());
  for (Index i = 0; i < bundle.m(); ++i) h.noalias() += lambda(i) * bundle.hessian(i, x);
  return h;
}

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::PaperToy:
      return "paper-toy";
    case ProblemKind::RandomQuadratic:
      return "random-quadratic";
    case ProblemKind::QuadraticLogistic:
      return "quadratic-logistic";
  }
  return "unknown";
}

ProblemKind parse_problem_kind(std::string_view text) {
  if (text == "paper-toy") return ProblemKind::PaperToy;
  if (text == "random-quadratic") return ProblemKind::RandomQuadratic;
  if (text == "quadratic-logistic") return ProblemKind::QuadraticLogistic;
  throw InvalidArgument("unknown problem kind '" + std::string(text) + "'");
}

void ProblemSpec::validate() const {
  if (kind == ProblemKind::PaperToy) return;
  if (n < 1) throw InvalidArgument("problem spec requires n >= 1");
  if (m < 2) throw InvalidArgument("problem spec requires m >= 2");
  if (!(c > 0.0)) throw InvalidArgument("problem spec requires c > 0");
  if (c > L) throw InvalidArgument("problem spec requires c <= L");
}

void to_json(nlohmann::json& j, const ProblemSpec& spec) {
  j = nlohmann::json{{"kind", to_string(spec.kind)}, {"n", spec.n}, {"m", spec.m},
                     {"c", spec.c},                  {"L", spec.L}, {"seed", spec.seed}};
}

void from_json(const nlohmann::json& j, ProblemSpec& spec) {
  if (!j.is_object()) throw InvalidArgument("problem spec must be a JSON object");
  if (!j.contains("kind")) throw InvalidArgument("problem spec is missing 'kind'");
  spec = ProblemSpec{};
  spec.kind = parse_problem_kind(j.at("kind").get<std::string>());
  if (spec.kind == ProblemKind::PaperToy) {
    spec.n = 2;
    spec.m = 2;
  }
  if (j.contains("n")) spec.n = j.at("n").get<Index>();
  if (j.contains("m")) spec.m = j.at("m").get<Index>();
  if (j.contains("c")) spec.c = j.at("c").get<double>();
  if (j.contains("L")) spec.L = j.at("L").get<double>();
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
}

namespace {

ObjectiveBundle paper_toy() {
  Objective f1{
      [](const Vector& x) {
        const double a = x(0) - 1.0;
        const double b = x(0) - x(1);
        return a * a + b * b;
      },
      [](const Vector& x) {
        Vector g(2);
        g << 2.0 * (x(0) - 1.0) + 2.0 * (x(0) - x(1)), -2.0 * (x(0) - x(1));
        return g;
      },
      [](const Vector&) {
        Matrix h(2, 2);
        h << 4.0, -2.0, -2.0, 2.0;
        return h;
      }};
  Objective f2{
      [](const Vector& x) {
        const double a = x(1) - 3.0;
        const double b = x(0) - x(1);
        return a * a + b * b;
      },
      [](const Vector& x) {
        Vector g(2);
        g << 2.0 * (x(0) - x(1)), 2.0 * (x(1) - 3.0) - 2.0 * (x(0) - x(1));
        return g;
      },
      [](const Vector&) {
        Matrix h(2, 2);
        h << 2.0, -2.0, -2.0, 4.0;
        return h;
      }};
  // Both constant Hessians have spectrum {3 - sqrt 5, 3 + sqrt 5}.
  const double root5 = std::sqrt(5.0);
  return ObjectiveBundle("paper-toy", 2, {std::move(f1), std::move(f2)},
                         ConvexityBounds::from(3.0 - root5, 3.0 + root5));
}

struct QuadraticTerm {
  Matrix A;
  Vector b;
};

struct LogisticTerm {
  QuadraticTerm quad;
  Matrix W;  // one direction w_ij per column
};

Matrix random_orthogonal(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(n, n);
}

QuadraticTerm random_quadratic_term(const ProblemSpec& spec, std::mt19937_64& rng) {
  const Index n = spec.n;
  Vector spectrum(n);
  if (n == 1) {
    spectrum(0) = spec.c;
  } else {
    for (Index k = 0; k < n; ++k) {
      spectrum(k) = spec.c + (spec.L - spec.c) * static_cast<double>(k) / static_cast<double>(n - 1);
    }
    spectrum(n - 1) = spec.L;
  }
  const Matrix q = random_orthogonal(n, rng);
  QuadraticTerm term;
  term.A = q.transpose() * spectrum.asDiagonal() * q;
  term.A = 0.5 * (term.A + term.A.transpose());
  std::normal_distribution<double> normal(0.0, 1.0);
  term.b.resize(n);
  for (Index k = 0; k < n; ++k) term.b(k) = normal(rng) / std::sqrt(static_cast<double>(n));
  return term;
}

Objective quadratic_objective(std::shared_ptr<const QuadraticTerm> t) {
  return Objective{[t](const Vector& x) { return 0.5 * x.dot(t->A * x) - t->b.dot(x); },
                   [t](const Vector& x) -> Vector { return t->A * x - t->b; },
                   [t](const Vector&) -> Matrix { return t->A; }};
}

double softplus(double s) { return s > 0.0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s)); }

double sigmoid(double s) {
  if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
  const double e = std::exp(s);
  return e / (1.0 + e);
}

Objective logistic_objective(std::shared_ptr<const LogisticTerm> t) {
  return Objective{
      [t](const Vector& x) {
        const Vector s = t->W.transpose() * x;
        double total = 0.5 * x.dot(t->quad.A * x) - t->quad.b.dot(x);
        for (Index j = 0; j < s.size(); ++j) total += softplus(s(j));
        return total;
      },
      [t](const Vector& x) -> Vector {
        const Vector s = t->W.transpose() * x;
        Vector sig(s.size());
        for (Index j = 0; j < s.size(); ++j) sig(j) = sigmoid(s(j));
        return t->quad.A * x - t->quad.b + t->W * sig;
      },
      [t](const Vector& x) -> Matrix {
        const Vector s = t->W.transpose() * x;
        Vector curv(s.size());
        for (Index j = 0; j < s.size(); ++j) {
          const double p = sigmoid(s(j));
          curv(j) = p * (1.0 - p);
        }
        Matrix h = t->quad.A;
        h.noalias() += t->W * curv.asDiagonal() * t->W.transpose();
        return h;
      }};
}

ObjectiveBundle random_quadratic(const ProblemSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::vector<Objective> objectives;
  for (Index i = 0; i < spec.m; ++i) {
    objectives.push_back(
        quadratic_objective(std::make_shared<const QuadraticTerm>(random_quadratic_term(spec, rng))));
  }
  return ObjectiveBundle("random-quadratic", spec.n, std::move(objectives),
                         ConvexityBounds::from(spec.c, spec.L));
}

// Logistic directions have norm ~ kLogisticScale so the softplus curvature is
// comparable to the quadratic part.
constexpr double kLogisticScale = 1.5;

ObjectiveBundle quadratic_logistic(const ProblemSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = kLogisticScale / std::sqrt(static_cast<double>(spec.n));
  std::vector<Objective> objectives;
  double extra = 0.0;
  for (Index i = 0; i < spec.m; ++i) {
    LogisticTerm term;
    term.quad = random_quadratic_term(spec, rng);
    term.W.resize(spec.n, spec.n);
    for (Index j = 0; j < spec.n; ++j)
      for (Index k = 0; k < spec.n; ++k) term.W(k, j) = scale * normal(rng);
    extra = std::max(extra, 0.25 * term.W.squaredNorm());
    objectives.push_back(logistic_objective(std::make_shared<const LogisticTerm>(std::move(term))));
  }
  return ObjectiveBundle("quadratic-logistic", spec.n, std::move(objectives),
                         ConvexityBounds::from(spec.c, spec.L + extra));
}

}  // namespace

ObjectiveBundle make_problem(const ProblemSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case ProblemKind::PaperToy:
      return paper_toy();
    case ProblemKind::RandomQuadratic:
      return random_quadratic(spec);
    case ProblemKind::QuadraticLogistic:
      return quadratic_logistic(spec);
  }
  throw InvalidArgument("unknown problem kind");
}

ObjectiveBundle make_anchor_problem(const std::vector<Vector>& anchors) {
  if (anchors.size() < 2) throw InvalidArgument("anchor problem needs at least two anchors");
  const Index n = anchors.front().size();
  std::vector<Objective> objectives;
  for (const Vector& a : anchors) {
    if (a.size() != n) throw InvalidArgument("anchors must share one dimension");
    auto anchor = std::make_shared<const Vector>(a);
    objectives.push_back(Objective{
        [anchor](const Vector& x) { return 0.5 * (x - *anchor).squaredNorm(); },
        [anchor](const Vector& x) -> Vector { return x - *anchor; },
        [n](const Vector&) -> Matrix { return Matrix::Identity(n, n); }});
  }
  return ObjectiveBundle("anchors", n, std::move(objectives), ConvexityBounds::from(1.0, 1.0));
}

ConvexityBounds convexity_bounds(const ObjectiveBundle& bundle, int samples, std::uint64_t seed) {
  if (bundle.declared_bounds()) return *bundle.declared_bounds();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  Vector x(bundle.n());
  for (int s = 0; s < std::max(samples, 1); ++s) {
    for (Index k = 0; k < bundle.n(); ++k) x(k) = 2.0 * normal(rng);
    for (Index i = 0; i < bundle.m(); ++i) {
      const Matrix h = bundle.hessian(i, x);
      Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (h + h.transpose()), Eigen::EigenvaluesOnly);
      lo = std::min(lo, eig.eigenvalues().minCoeff());
      hi = std::max(hi, eig.eigenvalues().maxCoeff());
    }
  }
  // A sampled non-positive eigenvalue means the bundle is not strongly convex;
  // keep a tiny positive c so downstream step sizes stay defined.
  lo = std::max(lo, std::numeric_limits<double>::min());
  hi = std::max(hi, lo);
  return ConvexityBounds{lo, hi, hi / lo, true};
}

std::vector<std::string> registered_problems() {
  return {"paper-toy", "random-quadratic", "quadratic-logistic"};
}

ProblemSpec registered_problem(std::string_view name) {
  if (name == "paper-toy") return ProblemSpec{ProblemKind::PaperToy, 2, 2, 1.0, 1.0, 0};
  if (name == "random-quadratic") return ProblemSpec{ProblemKind::RandomQuadratic, 8, 3, 1.0, 100.0, 42};
  if (name == "quadratic-logistic") return ProblemSpec{ProblemKind::QuadraticLogistic, 6, 2, 1.0, 10.0, 7};
  throw InvalidArgument("unknown problem '" + std::string(name) + "'");
}

}  // namespace pareto
