#ifndef ARCDELTA_ERRORS_HPP
#define ARCDELTA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace arcdelta {

enum class Errc {
  bad_argument,        // precondition violated (sizes, signs, ranges)
  closed_loop,         // circular arc opening angle >= 2*pi
  vanishing_speed,     // parametric input with |d/du| ~ 0
  self_intersection,   // injectivity check failed at sampling resolution
  tube_too_wide,       // |t| * max|kappa| >= 1/2
  essential_spectrum,  // spectral parameter E >= 0
  no_such_level,       // fewer than j bound states at this beta
  non_monotone,        // sampled secular function changed sign more than once
  bracket_failed,      // root not bracketed by the a-priori interval
  too_close_to_arc,    // evaluation point within h/2 of a quadrature node
  margin_exceeded,     // 6 log(beta)/beta >= l0 for this curve
  io_error,            // unwritable output path and friends
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace arcdelta

#endif
