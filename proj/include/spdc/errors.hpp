#ifndef SPDC_ERRORS_HPP
#define SPDC_ERRORS_HPP

#include <stdexcept>

namespace spdc {

// Post-hoc numerical diagnostics: integrator norm drift, step-size failures,
// solver cross-check disagreement. Distinct from std::invalid_argument, which
// is reserved for contract violations on inputs.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace spdc

#endif
