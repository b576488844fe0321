#pragma once

// Invariant suites behind `meanking verify`: each suite re-derives the
// defining properties of one module at a chosen dimension and tolerance and
// reports them as check records. The suites recompute everything from
// scratch; nothing is cached between checks, so a pass is always a fresh
// derivation.

#include "meanking/finitefield.hpp"
#include "meanking/report.hpp"

#include <string>
#include <vector>

namespace meanking {

/// The individual suite names, in execution order ("all" is not listed).
const std::vector<std::string>& verify_suite_names();

/// Run one suite ("mub", "collective", "geometry", "entangle", "protocol")
/// or "all". Unknown names are an invalid argument.
std::vector<CheckRecord> run_suite(PrimeDim d, const std::string& suite, double tol);

}  // namespace meanking
