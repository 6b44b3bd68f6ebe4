#include "arcdelta/errors.hpp"

namespace arcdelta {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::bad_argument: return "BadArgument";
    case Errc::closed_loop: return "ClosedLoop";
    case Errc::vanishing_speed: return "VanishingSpeed";
    case Errc::self_intersection: return "SelfIntersection";
    case Errc::tube_too_wide: return "TubeTooWide";
    case Errc::essential_spectrum: return "EssentialSpectrum";
    case Errc::no_such_level: return "NoSuchLevel";
    case Errc::non_monotone: return "NonMonotoneDetected";
    case Errc::bracket_failed: return "BracketFailed";
    case Errc::too_close_to_arc: return "TooCloseToArc";
    case Errc::margin_exceeded: return "MarginExceeded";
    case Errc::io_error: return "IoError";
  }
  return "UnknownError";
}

}  // namespace arcdelta
