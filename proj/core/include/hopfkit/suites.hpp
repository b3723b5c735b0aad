#pragma once

#include <string>

#include "hopfkit/based.hpp"
#include "hopfkit/families.hpp"
#include "hopfkit/io.hpp"
#include "hopfkit/orbits.hpp"

namespace hopfkit {

/// Named check bundles over a family reference. Suite names:
///   dihedral-dual, taft-dual, liu-dual, qplane-dual, bfam-dual,
///   orbits, cosplit, w-filtration, crux.
/// The *-dual suites take their parameters from the family reference
/// (e.g. suite "taft-dual" with ref "taft:4,2,zeta4"). Checks may run
/// concurrently up to `jobs` threads; report assembly is deterministic.
/// Throws field_error for unknown suites or unsupported references.
Report run_suite(const std::string& suite, const std::string& ref, long degree,
                 unsigned long seed, long jobs);

Report dihedral_dual_suite(long degree, long jobs);
Report taft_dual_suite(long n, long t, const Scalar& q, long degree, long jobs);
Report liu_dual_suite(long n, long w, const Scalar& q, long degree, long jobs);
Report qplane_dual_suite(long ell, long n, const Scalar& q, long degree, long jobs);
Report bfam_dual_suite(long n, const std::vector<long>& p, const Scalar& q, long degree,
                       long jobs);
Report orbits_suite(const std::string& ref, long degree, unsigned long seed);
Report cosplit_suite(const std::string& ref, long degree);
Report wfiltration_suite(const std::string& ref, long degree);
Report crux_suite(const std::string& ref, long degree, long jobs);

}  // namespace hopfkit
