#pragma once

#include <string>
#include <vector>

#include "constants.hpp"

namespace wedgecot
{
struct CheckResult
{
    std::string name;
    double achieved{0};   //!< worst error observed
    double tolerance{0};
    bool passed{false};
};

//! Oracle self-checks behind `wedge-cot verify`: quadratures against their
//! closed forms, closed-form cross sections against the orbit sum, and the
//! numeric orbit finder against the analytic catalog.
std::vector<CheckResult> run_oracle_checks(PhysicalConstants const& consts = {});

}  // namespace wedgecot
