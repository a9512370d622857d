#ifndef RADSHOCK_ERRORS_HPP
#define RADSHOCK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace radshock {

// Error taxonomy mirrored by the CLI exit codes:
//   validation_error -> 2 (inputs outside the regime the solver accepts)
//   numerical_error  -> 3 (a computation that should work did not converge)
//   io_error         -> 4
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when f(0)^2 - 2 a^2 <= 0: the glued wave cannot be C2 at the
// sonic point, so no smooth profile is constructed at this amplitude.
class no_smooth_profile : public validation_error {
public:
    no_smooth_profile(double f0, double amplitude, const std::string& msg)
        : validation_error(msg), f0(f0), amplitude(amplitude) {}
    double f0;
    double amplitude;
};

} // namespace radshock

#endif
