#pragma once

// Interference checks for clause introduction: RAT, PR, SR and weak
// substitution redundancy (WSR). Each accepted check yields a certificate
// recording how every relevant clause was discharged.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wsr/formula.hpp"
#include "wsr/propagation.hpp"
#include "wsr/substitution.hpp"

namespace wsr {

enum class ConditionKind {
  Trivialized,    // the witness trivializes D
  EntailedByNegC, // ~C ⊨ D|σ, i.e. C ∨ D|σ is tautological
  Rup,            // C ∨ D|σ is a RUP clause
  Failed,
};

struct ConditionResult {
  ConditionKind kind = ConditionKind::Failed;
  std::vector<ClauseId> premises; // nonempty exactly for Rup

  bool passed() const { return kind != ConditionKind::Failed; }
};

const char *to_string(ConditionKind k);

// The clause C ∨ D|σ whose RUP status decides condition (c); nullopt when
// σ trivializes D or the disjunction is tautological.
std::optional<Clause> condition_target(const Clause &c, const Substitution &s, const Clause &d);

// Decides the per-clause condition for D against the introduced clause C:
// trivialized, entailed by ~C, or C ∨ D|σ RUP under `filter`. When `d_id`
// names an admitted database clause that already subsumes C ∨ D|σ, the RUP
// certificate is {d_id} without propagating.
ConditionResult check_condition(Propagator &prop, const Clause &c, const Substitution &s,
                                const Clause &d, std::optional<ClauseId> d_id = std::nullopt,
                                ClauseFilter filter = {});
ConditionResult check_condition(const ClauseDb &db, const Clause &c, const Substitution &s,
                                const Clause &d);

enum class WitnessKind { Literal, Cube, Substitution };

struct CheckedClause {
  std::optional<ClauseId> id; // nullopt: the introduced clause itself
  ConditionResult result;
};

struct RedundancyCertificate {
  WitnessKind kind = WitnessKind::Substitution;
  Substitution witness; // RAT/PR witnesses in their substitution form
  // For an identity witness only the introduced clause is listed: every
  // other clause D satisfies C ∨ D ⊇ D.
  std::vector<CheckedClause> conditions;
  std::vector<ClauseId> modulo;
};

enum class Rejection {
  None,
  WitnessLiteralAbsent, // RAT: l ∉ C
  WitnessDisjoint,      // PR: Q ∩ C = ∅
  NotTrivialized,       // SR: σ does not trivialize C
  ConditionFailed,
  DeltaNotSubformula,
  WitnessForm, // witness shape not admitted by the checking mode
};

const char *to_string(Rejection r);

struct RedundancyVerdict {
  Rejection rejection = Rejection::None;
  // Set for ConditionFailed: the failing clause (nullopt means C itself)
  // and the clause that failed its RUP check.
  std::optional<ClauseId> failed_clause;
  std::optional<Clause> failed_target;
  RedundancyCertificate certificate;
  std::uint64_t propagations = 0;

  bool accepted() const { return rejection == Rejection::None; }
  std::string describe(const ClauseDb &db) const;
};

struct RedundancyOptions {
  // Identity witnesses go straight to a single RUP check (equivalent by the
  // RUP/WSR correspondence). Disable to run the full per-clause definition.
  bool identity_fast_path = true;
  // Worker threads for independent per-clause checks.
  unsigned jobs = 1;
};

RedundancyVerdict check_rat(const ClauseDb &db, const Clause &c, Lit l, const RedundancyOptions &opt = {});
RedundancyVerdict check_pr(const ClauseDb &db, const Clause &c, const Cube &q, const RedundancyOptions &opt = {});
RedundancyVerdict check_sr(const ClauseDb &db, const Clause &c, const Substitution &s,
                           const RedundancyOptions &opt = {});
RedundancyVerdict check_wsr(const ClauseDb &db, const Clause &c, const Substitution &s,
                            std::span<const ClauseId> delta, const RedundancyOptions &opt = {});

// Literal PR definition: every clause of F|Q* (minus those satisfied by ~C)
// reduced by ~C* is RUP over the materialized F|~C*. Slow; used to validate
// the assumption-based check_pr.
bool check_pr_materialized(const Formula &f, const Clause &c, const Cube &q);

// Re-validates every Rup entry of a certificate using only its recorded
// premises, and every other entry from its definition.
bool replay_certificate(const ClauseDb &db, const Clause &c, const RedundancyCertificate &cert);

} // namespace wsr
