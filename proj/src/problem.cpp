//
// Copyright 2026 gsopt contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "gsopt/problem.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace gsopt {

double evaluate(const Problem& p, const Vector& x) {
  if (x.size() != p.n)
    throw std::invalid_argument(
        fmt::format("{}: point has dimension {}, expected {}", p.name, x.size(), p.n));
  return p.f(x);
}

Vector gradient(const Problem& p, const Vector& x) {
  if (x.size() != p.n)
    throw std::invalid_argument(
        fmt::format("{}: point has dimension {}, expected {}", p.name, x.size(), p.n));
  if (!p.is_differentiable(x))
    throw NondifferentiablePointError(
        fmt::format("{}: analytic gradient undefined at the given point", p.name));
  return p.grad(x);
}

void ProblemRegistry::add(Entry e) { entries_.push_back(std::move(e)); }

const ProblemRegistry::Entry* ProblemRegistry::find(std::string_view name) const {
  const auto it = std::find_if(entries_.begin(), entries_.end(),
                               [&](const Entry& e) { return e.name == name; });
  return it == entries_.end() ? nullptr : &*it;
}

Problem ProblemRegistry::get(const std::string& name, std::optional<int> n) const {
  const Entry* e = find(name);
  if (!e) throw std::invalid_argument(fmt::format("unknown problem '{}'", name));
  if (!e->scalable) {
    if (n && *n != e->fixed_n)
      throw std::invalid_argument(
          fmt::format("problem '{}' has fixed dimension {}", name, e->fixed_n));
    return e->make(e->fixed_n);
  }
  if (!n)
    throw std::invalid_argument(fmt::format("problem '{}' is scalable; dimension required", name));
  if (*n < e->min_n)
    throw std::invalid_argument(
        fmt::format("problem '{}' requires n >= {}", name, e->min_n));
  if (!e->supported_n.empty() &&
      std::find(e->supported_n.begin(), e->supported_n.end(), *n) == e->supported_n.end()) {
    std::string ns;
    for (int k : e->supported_n) ns += fmt::format("{} ", k);
    throw std::invalid_argument(fmt::format(
        "problem '{}' has a certified minimum value only for n in {{ {}}}", name, ns));
  }
  return e->make(*n);
}

std::string ProblemRegistry::catalog_json() const {
  std::string out = "[\n";
  bool first = true;
  for (const Entry& e : entries_) {
    if (!first) out += ",\n";
    first = false;
    std::string nrange;
    if (e.scalable) {
      if (e.supported_n.empty()) {
        nrange = fmt::format("\"n>={}\"", e.min_n);
      } else {
        nrange = "[";
        for (size_t i = 0; i < e.supported_n.size(); ++i)
          nrange += fmt::format("{}{}", i ? "," : "", e.supported_n[i]);
        nrange += "]";
      }
    } else {
      nrange = fmt::format("{}", e.fixed_n);
    }
    std::string fstar;
    if (e.scalable) {
      fstar = "\"depends on n\"";
    } else {
      fstar = fmt::format("{:.17g}", e.make(e.fixed_n).f_star);
    }
    out += fmt::format(
        "  {{\"name\": \"{}\", \"n\": {}, \"convex\": {}, \"f_star\": {}, "
        "\"summary\": \"{}\", \"provenance\": \"{}\"}}",
        e.name, nrange, e.convex ? "true" : "false", fstar, e.summary, e.provenance);
  }
  out += "\n]\n";
  return out;
}

}  // namespace gsopt
