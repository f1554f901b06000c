#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace escortdyn {

struct CriterionResult {
    int id = 0;
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

// Runs the built-in acceptance suite. Every tolerance is multiplied by
// `tolerance_scale`; a scale of 0 is the hook used to check that failures are
// reported.
std::vector<CriterionResult> run_acceptance(double tolerance_scale = 1.0);

// One line per criterion; returns true iff every criterion passed.
bool print_acceptance_report(std::ostream& out, const std::vector<CriterionResult>& results);

}  // namespace escortdyn
