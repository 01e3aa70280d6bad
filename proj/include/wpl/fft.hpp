#pragma once

#include "wpl/grid.hpp"

namespace wpl {

enum class Axis { both, x_only, y_only };
enum class Direction { forward, inverse };

/// Unitary DFT (1/sqrt(N) in both directions, so norms are representation
/// independent). `forward` maps position -> momentum along the requested
/// axes; the field's representation tag is checked and updated. Partial
/// transforms produce the mixed representations used by the magnetic
/// propagation algorithm.
///
/// Throws std::invalid_argument when the tag is inconsistent with the
/// requested axis/direction (e.g. forward x-transform of a field already in
/// momentum space along x).
void transform_inplace(ComplexField& field, Axis axis, Direction dir);

ComplexField transform(const ComplexField& field, Axis axis, Direction dir);

}  // namespace wpl
