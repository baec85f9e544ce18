#ifndef BETAFRECHET_ERRORS_HPP
#define BETAFRECHET_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bf {

// Thrown when an argument is outside a function's domain.
using domain_error = std::domain_error;

// A series or iteration failed to settle within its budget. Carries the
// partial result so callers can decide whether it is still usable.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double partial, std::size_t terms)
        : std::runtime_error(what), partial_value(partial), terms_used(terms) {}
    double partial_value;
    std::size_t terms_used;
};

// A requested moment (or cumulant ratio) does not exist for the parameters.
class existence_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// An integral is provably divergent for the given indices.
class divergence_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A result saturated the floating-point range (distinct from a domain error).
class overflow_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad observations or unreadable input.
class data_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A matrix required to be invertible was numerically singular.
class singular_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace bf

#endif
