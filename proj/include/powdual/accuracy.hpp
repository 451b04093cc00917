#pragma once

#include "powdual/errors.hpp"

namespace powdual {

/// Accuracy settings for series/asymptotic special-function kernels.
/// Passed by value; all evaluators are pure.
struct FunctionAccuracy {
    double target_rel_err = 1e-12;
    int max_terms = 500;

    void validate() const {
        if (!(target_rel_err > 0.0) || target_rel_err > 1e-6)
            throw DomainError("FunctionAccuracy: target_rel_err must lie in (0, 1e-6]");
        if (max_terms < 50)
            throw DomainError("FunctionAccuracy: max_terms must be >= 50");
    }
};

}  // namespace powdual
