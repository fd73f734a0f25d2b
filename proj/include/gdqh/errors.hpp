#pragma once

#include <stdexcept>
#include <string>

namespace gdqh {

/// Argument outside the mathematical domain of an operation (q not in (0,1),
/// alpha <= -1, |x| >= 1 for e_q, ...). The message names the violated
/// precondition.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A lower parameter of a basic hypergeometric series hits (b;q)_k = 0
/// before the series terminates.
class pole_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A non-terminating series or product did not meet its tail tolerance
/// within the term cap, or lies outside its convergence region.
class divergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested representation is not defined at the given arguments.
/// The definition sum is always valid and is the suggested fallback.
class representation_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The exact (rational) backend was asked for something only a float
/// backend can do, e.g. a real power with a non-integral exponent.
class exact_backend_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A quadrature integrand produced a non-finite value.
class evaluation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Lattice or series truncation did not converge to the requested tolerance.
class truncation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gdqh
