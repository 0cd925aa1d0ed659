#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pareto/types.hpp"

namespace pareto {

/// Uniform Hessian eigenvalue bounds c <= eig(hess f_i(x)) <= L, and the
/// affine-covariant Lipschitz constant omega = L / c they imply.
struct ConvexityBounds {
  double c = 1.0;
  double L = 1.0;
  double omega = 1.0;
  bool estimated = false;

  /// Throws InvalidArgument unless 0 < c <= L.
  static ConvexityBounds from(double c, double L, bool estimated = false);
};

/// One objective with analytic first and second derivatives.
struct Objective {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  std::function<Matrix(const Vector&)> hessian;
};

/// m >= 2 twice-differentiable strongly convex objectives on R^n.
///
/// Immutable after construction. Evaluators must not mutate captured state;
/// every member function is safe to call concurrently.
class ObjectiveBundle {
 public:
  ObjectiveBundle(std::string name, Index n, std::vector<Objective> objectives,
                  std::optional<ConvexityBounds> declared = std::nullopt);

  const std::string& name() const { return name_; }
  Index n() const { return n_; }
  Index m() const { return static_cast<Index>(objectives_.size()); }
  const std::optional<ConvexityBounds>& declared_bounds() const { return declared_; }

  double value(Index i, const Vector& x) const;
  Vector gradient(Index i, const Vector& x) const;
  Matrix hessian(Index i, const Vector& x) const;

  /// f(x) as an m-vector.
  Vector values(const Vector& x) const;

 private:
  void check_point(const Vector& x) const;
  const Objective& objective(Index i) const;

  std::string name_;
  Index n_;
  std::vector<Objective> objectives_;
  std::optional<ConvexityBounds> declared_;
};

// Open simplex tolerance on the weight sum.
inline constexpr double kSimplexTolerance = 1e-12;

/// Throws InvalidArgument on a size mismatch and InvalidWeight unless every
/// component is strictly inside (0, 1) and the sum is 1 within kSimplexTolerance.
void check_weights(const Vector& lambda, Index m);

/// sum_i lambda_i f_i(x)
double scalarize_value(const ObjectiveBundle& bundle, const Vector& lambda, const Vector& x);
/// sum_i lambda_i grad f_i(x); its norm is the stationarity residual.
Vector scalarize_grad(const ObjectiveBundle& bundle, const Vector& lambda, const Vector& x);
/// sum_i lambda_i hess f_i(x), symmetric positive definite.
Matrix scalarize_hess(const ObjectiveBundle& bundle, const Vector& lambda, const Vector& x);

enum class ProblemKind { PaperToy, RandomQuadratic, QuadraticLogistic };

std::string to_string(ProblemKind kind);
/// Accepts "paper-toy", "random-quadratic", "quadratic-logistic".
ProblemKind parse_problem_kind(std::string_view text);

struct ProblemSpec {
  ProblemKind kind = ProblemKind::PaperToy;
  Index n = 2;
  Index m = 2;
  double c = 1.0;
  double L = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

void to_json(nlohmann::json& j, const ProblemSpec& spec);
void from_json(const nlohmann::json& j, ProblemSpec& spec);

/// Builds the bundle for a spec.
///
/// paper-toy: f(x) = [(x1-1)^2 + (x1-x2)^2, (x2-3)^2 + (x1-x2)^2]; n and m in
/// the spec are ignored.
///
/// random-quadratic: f_i(x) = 1/2 x'A_i x - b_i'x with A_i = Q_i' diag(c..L) Q_i,
/// Q_i a seeded orthogonal matrix and the diagonal evenly spaced from c to L.
///
/// quadratic-logistic: the random quadratic plus sum_j log(1 + exp(w_ij'x))
/// over n seeded directions; declared L grows by 1/4 max_i sum_j |w_ij|^2.
ObjectiveBundle make_problem(const ProblemSpec& spec);

/// f_i(x) = 1/2 |x - a_i|^2. Identity Hessians, solution path sum_i lambda_i a_i.
ObjectiveBundle make_anchor_problem(const std::vector<Vector>& anchors);

/// Declared bounds when the bundle has them; otherwise extreme Hessian
/// eigenvalues over `samples` seeded points, flagged as estimated.
ConvexityBounds convexity_bounds(const ObjectiveBundle& bundle, int samples = 32,
                                 std::uint64_t seed = 0);

/// Names accepted by registered_problem().
std::vector<std::string> registered_problems();
/// Throws InvalidArgument for an unknown name.
ProblemSpec registered_problem(std::string_view name);

}  // namespace pareto
