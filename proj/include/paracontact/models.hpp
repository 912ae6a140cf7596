// Builtin model catalog: para-Sasakian upper half-space charts, embedded
// hypersurfaces of flat product ambients and negative controls.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "paracontact/hypersurface.hpp"
#include "paracontact/model.hpp"

namespace paracontact {

using ModelSource = std::variant<ManifoldModel, HypersurfaceBundle>;

struct Fixture {
  std::string name;
  std::string description;
  ModelSource source;
  bool negative_control = false;

  bool is_bundle() const { return std::holds_alternative<HypersurfaceBundle>(source); }
};

/// Upper half-space of dimension n with g = y^-2(sum dx^2 + sign dy^2),
/// xi = y d/dy, eta = dy/y and phi = -sign(I - eta(x)xi); eps = sign.
ManifoldModel upper_half_space(int n, int sign);

std::vector<Fixture> builtin_models();
/// Exact name or alias (E1 = E1-3, E2 = E2-3).
std::optional<Fixture> find_builtin(std::string_view name);

}  // namespace paracontact
