#include "pareto/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <vector>

#include "pareto/errors.hpp"

namespace pareto {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  // Try the shortest precision that reads back exactly.
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace {

nlohmann::json vector_json(const Vector& v) {
  std::vector<double> out(static_cast<std::size_t>(v.size()));
  for (Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = v(i);
  return out;
}

// JSON has no infinity; encode non-finite values as null.
nlohmann::json number_json(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

nlohmann::json to_json(const CostCounters& c) {
  return {{"grad_evals", c.grad_evals},       {"hess_evals", c.hess_evals},
          {"linear_solves", c.linear_solves}, {"gd_iters", c.gd_iters},
          {"newton_iters", c.newton_iters},   {"wall_time", c.wall_time}};
}

nlohmann::json to_json(const SolveTrace& t) {
  return {{"iterations", t.iterations},
          {"residual_history", t.residual_history},
          {"counters", to_json(t.counters)},
          {"converged", t.converged},
          {"fallback_used", t.fallback_used}};
}

nlohmann::json to_json(const StepBoundReport& r) {
  return {{"omega", r.omega},         {"eta", r.eta},
          {"bound", number_json(r.bound)}, {"d", r.d},
          {"satisfied", r.satisfied}, {"sampled_pairs", r.sampled_pairs},
          {"note", r.note}};
}

nlohmann::json to_json(const ParetoFront& front) {
  nlohmann::json points = nlohmann::json::array();
  for (const FrontPoint& p : front.points) {
    points.push_back({{"lambda", vector_json(p.lambda)},
                      {"x", vector_json(p.x)},
                      {"residual", p.residual},
                      {"objective_values", vector_json(p.objective_values)},
                      {"segment_start", p.segment_start},
                      {"trace", to_json(p.trace)}});
  }
  return {{"method", to_string(front.method)},
          {"epsilon", front.epsilon},
          {"d", front.d},
          {"initial_solves", front.initial_solves},
          {"synthetic_steps", front.synthetic_steps},
          {"aborted", front.aborted},
          {"degenerate_segments", front.degenerate_segments},
          {"all_converged", front.all_converged()},
          {"total_counters", to_json(front.total_counters)},
          {"points", std::move(points)}};
}

void write_front_csv(std::ostream& out, const ParetoFront& front) {
  if (front.points.empty()) throw InvalidArgument("cannot write an empty front");
  const Index m = front.points.front().lambda.size();
  const Index n = front.points.front().x.size();
  for (Index i = 0; i < m; ++i) out << "lambda_" << (i + 1) << ',';
  for (Index i = 0; i < n; ++i) out << "x_" << (i + 1) << ',';
  for (Index i = 0; i < m; ++i) out << "f_" << (i + 1) << ',';
  out << "residual,corrector_iters\n";
  for (const FrontPoint& p : front.points) {
    for (Index i = 0; i < m; ++i) out << format_double(p.lambda(i)) << ',';
    for (Index i = 0; i < n; ++i) out << format_double(p.x(i)) << ',';
    for (Index i = 0; i < m; ++i) out << format_double(p.objective_values(i)) << ',';
    out << format_double(p.residual) << ',' << p.trace.iterations << '\n';
  }
}

nlohmann::json strip_timing(const nlohmann::json& doc) {
  if (doc.is_object()) {
    nlohmann::json out = nlohmann::json::object();
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      if (it.key() == "wall_time" || it.key() == "speedup") continue;
      out[it.key()] = strip_timing(it.value());
    }
    return out;
  }
  if (doc.is_array()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& item : doc) out.push_back(strip_timing(item));
    return out;
  }
  return doc;
}

}  // namespace pareto
