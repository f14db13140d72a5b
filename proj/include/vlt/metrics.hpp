#pragma once

#include "vlt/grid.hpp"

namespace vlt {

/// Error norms of a field against a reference over the samples with
/// |x| < radius. Relative norms divide by the same norm of the reference;
/// a zero reference gives 0 for a zero error and infinity otherwise.
struct ErrorNorms {
    double abs_l1 = 0.0;
    double abs_l2 = 0.0;
    double abs_linf = 0.0;
    double rel_l1 = 0.0;
    double rel_l2 = 0.0;
    double rel_linf = 0.0;
};

ErrorNorms error_norms(const ScalarField& value, const ScalarField& reference, double radius);

/// Relative L2 error over |x| < radius.
double relative_l2(const ScalarField& value, const ScalarField& reference, double radius);

/// Relative L2 error of both components together.
double relative_l2(const VectorField& value, const VectorField& reference, double radius);

/// Largest |value| over the whole grid.
double max_abs(const ScalarField& value);

}  // namespace vlt
