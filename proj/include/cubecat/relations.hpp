#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubecat/frobenius.hpp"

namespace cubecat {

/// Outcome of comparing the two sides of a relation on a full basis.
/// observed: +1 (LHS = RHS), -1 (LHS = -RHS), 0 (both sides vanish),
/// 2 (neither, or inconsistent across realizations).
struct RelationResult {
  std::string name;
  std::string family;
  int observed = 2;
  /// Required sign; nullopt accepts either +1 or -1.
  std::optional<int> expected;
  /// Number of concrete configurations that realized this relation.
  int instances = 0;

  bool ok() const;
};

struct RelationReport {
  std::string system;
  std::vector<RelationResult> relations;

  bool all_ok() const;
  int count_observed(int sign) const;
  std::string to_json() const;
};

/// Evaluates the relation catalogue on full tensor bases (t kept symbolic).
/// Even systems: two-saddle faces of every connected two-crossing planar
/// configuration (grouped by saddle signature), cancellation, the Cob list and
/// distant commutations.  Exterior systems: the Cob list and commutations with
/// their graded signs.
RelationReport check_relations(const FrobeniusSystem& sys);

/// True when every relation holds with some sign (used for sign-tuple counts).
bool relations_hold_up_to_sign(const FrobeniusSystem& sys);

}  // namespace cubecat
