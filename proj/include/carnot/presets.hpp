#pragma once

#include "carnot/gaussgreen.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace carnot::presets {

/// Shipped algebras, constructed once and shared; safe to reference for the
/// program lifetime.
const StratifiedAlgebra& algebra(const std::string& name);
std::vector<std::string> algebra_names();

/// Algebra from an inline spec: {"step":2, "layer_dims":[2,1],
/// "brackets":[{"i":1,"j":2,"coeffs":{"3":2.0}}]} with 1-based indices.
StratifiedAlgebra algebra_from_json(const nlohmann::json& j);

DomainSpec domain(const StratifiedAlgebra& a, const nlohmann::json& spec);
std::vector<std::string> domain_names();

HorizontalField field(const StratifiedAlgebra& a, const nlohmann::json& spec);
std::vector<std::string> field_names();

ScalarField scalar(const StratifiedAlgebra& a, const nlohmann::json& spec);
std::vector<std::string> scalar_names();

GreenFunction green(const StratifiedAlgebra& a, const std::string& name);
std::vector<std::string> green_names();

/// Human-readable description of any registered preset name.
std::string describe(const std::string& name);

} // namespace carnot::presets
