#pragma once

#include <string>
#include <vector>

#include "vlt/grid.hpp"

namespace vlt {

enum class TransformKind { L, T, I, J, Ts, star };

std::string to_string(TransformKind kind);
TransformKind parse_transform_kind(const std::string& name);

/// Transform data sampled at every grid vertex. The star transform has two
/// components, every other kind one.
///
/// Consumers only read the samples within r2 + 2h of the origin; values
/// farther out are reconstructed from the strip structure of the data.
struct TransformField {
    TransformKind kind = TransformKind::L;
    std::vector<ScalarField> components;

    TransformField() = default;
    TransformField(TransformKind k, ScalarField values) : kind(k), components{std::move(values)} {}
    TransformField(TransformKind k, ScalarField a, ScalarField b) : kind(k), components{std::move(a), std::move(b)} {}

    const Grid2D& grid() const { return components.at(0).grid(); }
    int ncomp() const { return static_cast<int>(components.size()); }
    const ScalarField& values() const { return components.at(0); }
    ScalarField& values() { return components.at(0); }
};

}  // namespace vlt
