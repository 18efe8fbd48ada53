//
// Copyright 2026 gsopt contributors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gsopt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Thrown when a gradient is requested at a point where the analytic
/// formula is ill-defined (exact ties in max/abs arguments).
struct NondifferentiablePointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised by bundle construction when a *sampled* point lands on the
/// nondifferentiable set; the solver maps it to its measure-zero stop.
struct NondifferentiableSampleError : NondifferentiablePointError {
  using NondifferentiablePointError::NondifferentiablePointError;
};

/// A nonsmooth objective with analytic gradient and catalog metadata.
///
/// f and grad are deterministic pure functions. grad is only defined on the
/// full-measure set where f is differentiable; `nondiff` flags the points
/// where the analytic formula breaks down (exact tie detection, zero
/// tolerance). A problem whose nondifferentiable set is never crossed by
/// the tests may leave `nondiff` empty.
struct Problem {
  std::string name;
  int n = 0;
  bool convex = false;
  double f_star = 0.0;  ///< known (local) minimum value
  Vector x0;            ///< default start point
  std::string notes;    ///< provenance of f_star / x0
  std::function<double(const Vector&)> f;
  std::function<Vector(const Vector&)> grad;
  std::function<bool(const Vector&)> nondiff;

  bool is_differentiable(const Vector& x) const { return !nondiff || !nondiff(x); }
};

/// f(x) with a dimension check.
double evaluate(const Problem& p, const Vector& x);

/// Analytic gradient with dimension and differentiability checks.
/// Throws NondifferentiablePointError when `nondiff` flags x.
Vector gradient(const Problem& p, const Vector& x);

/// Catalog of the built-in nonsmooth test problems.
class ProblemRegistry {
public:
  struct Entry {
    std::string name;
    bool scalable = false;
    int fixed_n = 0;              ///< dimension when !scalable
    int min_n = 2;                ///< smallest supported n when scalable
    std::vector<int> supported_n; ///< nonempty: only these n have a known f_star
    bool convex = false;
    std::string summary;
    std::string provenance;       ///< where f_star and x0 come from
    std::function<Problem(int)> make;
  };

  static const ProblemRegistry& builtin();

  const Entry* find(std::string_view name) const;
  const std::vector<Entry>& entries() const { return entries_; }

  /// Constructs a problem by name. For scalable entries n is required; for
  /// fixed-dimension entries n may be omitted or must match.
  Problem get(const std::string& name, std::optional<int> n = {}) const;

  /// problems.json payload: name, n-range, convexity, f_star, provenance.
  std::string catalog_json() const;

  void add(Entry e);

private:
  std::vector<Entry> entries_;
};

}  // namespace gsopt
