#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace sbar {

using cplx = std::complex<double>;

// bad inputs: malformed grids, contracts, filter specs, length mismatches
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// evaluation outside a function's domain (strip of regularity, |eta| > 1, t < 0)
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// the numerics broke down: zero of Phi, log winding, non-finite price
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularInput : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};

struct BranchFailure : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};

// parallel kernels keep a serial path as the reference implementation
enum class Exec { Serial, Parallel };

} // namespace sbar
