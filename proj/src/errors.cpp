#include "wedgecot/errors.hpp"

namespace wedgecot
{
std::string_view to_string(ErrorKind kind)
{
    switch (kind)
    {
        case ErrorKind::domain: return "domain_error";
        case ErrorKind::below_threshold: return "below_threshold";
        case ErrorKind::ion_too_close: return "ion_too_close_to_surface";
        case ErrorKind::degenerate_incidence: return "degenerate_incidence";
        case ErrorKind::apex_singularity: return "apex_singularity";
        case ErrorKind::zero_length_orbit: return "zero_length_orbit";
        case ErrorKind::convergence: return "convergence_error";
        case ErrorKind::io: return "io_error";
    }
    return "unknown_error";
}

bool is_validation_error(ErrorKind kind)
{
    switch (kind)
    {
        case ErrorKind::domain:
        case ErrorKind::below_threshold:
        case ErrorKind::ion_too_close:
        case ErrorKind::degenerate_incidence:
            return true;
        default:
            return false;
    }
}

}  // namespace wedgecot
