#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wedgecot
{
//! Failure categories. The CLI maps each onto an exit code.
enum class ErrorKind
{
    domain,                  //!< input outside an operation's domain
    below_threshold,         //!< photon energy at or below the binding energy
    ion_too_close,           //!< ion inside the beta_min guard band
    degenerate_incidence,    //!< ray parallel to the surface it reflects off
    apex_singularity,        //!< ray passes through the wedge apex
    zero_length_orbit,       //!< orbit with L = 0
    convergence,             //!< quadrature or root refinement failed
    io,                      //!< destination not writable
};

std::string_view to_string(ErrorKind kind);

//! True for input-validation failures, false for numeric/runtime ones.
bool is_validation_error(ErrorKind kind);

class Error : public std::runtime_error
{
  public:
    Error(ErrorKind kind, std::string const& what)
        : std::runtime_error(what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string const& what)
{
    throw Error(kind, what);
}

}  // namespace wedgecot
