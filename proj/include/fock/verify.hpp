#pragma once

// The closed-form oracle suite: one pass/fail result per acceptance
// criterion, shared by `fockcarleson verify` and the acceptance test.

#include <functional>
#include <string>
#include <vector>

#include "fock/core.hpp"
#include "fock/lattice.hpp"

namespace fock {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  std::function<CriterionResult()> run;
};

struct SuiteMember {
  std::string name;
  Measure mu;
  bool compact = false;  // bounded support
};

/// empty, dirac at 0, three atoms, Gaussian density, Lebesgue, and the comb
/// of atoms at the centers of make_lattice(1, 4) with masses 1/k^2.
std::vector<SuiteMember> standard_suite();

/// The same comb with unit masses.
Measure unit_comb();

std::vector<Criterion> acceptance_criteria();

/// Runs every criterion; exceptions become failures carrying the message.
std::vector<CriterionResult> run_acceptance();

/// "[PASS] 3 berezin closed forms: ..." style line.
std::string format_result(const CriterionResult& r);

}  // namespace fock
