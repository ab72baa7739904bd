#pragma once

// Mutation logic over cubic rules (σ ≔ Q): model semantics, a verifier for
// the RES / SUB / TAUT / INTRO / ELIM calculus, and a translator from
// accepted WSR proofs into DAG-shaped mutation proofs.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wsr/checker.hpp"
#include "wsr/formula.hpp"
#include "wsr/proofio.hpp"
#include "wsr/substitution.hpp"

namespace wsr {

struct MutationRule {
  Substitution effect;
  Cube trigger;

  friend bool operator==(const MutationRule &, const MutationRule &) = default;
};

// An immutable rule sequence; extending shares the existing rules.
class Prefix {
public:
  Prefix() = default;

  std::size_t size() const { return rules_ ? rules_->size() : 0; }
  bool empty() const { return size() == 0; }
  const MutationRule &operator[](std::size_t i) const { return (*rules_)[i]; }
  const MutationRule &back() const { return rules_->back(); }

  Prefix extended(MutationRule rule) const;
  // All rules but the last.
  Prefix parent() const;

  friend bool operator==(const Prefix &a, const Prefix &b);

private:
  std::shared_ptr<const std::vector<MutationRule>> rules_;
};

struct MutationClause {
  Prefix prefix;
  Clause clause;

  friend bool operator==(const MutationClause &, const MutationClause &) = default;
};

std::string to_string(const MutationClause &mc);

Assignment apply_rule_to_model(const Assignment &i, const MutationRule &r);
bool eval_mutation_clause(const Assignment &i, const MutationClause &mc);

enum class StepRule { Res, Sub, Taut, Intro, Elim };

const char *to_string(StepRule r);

struct MutationStep {
  std::uint64_t id = 1; // ids are positive; 0 terminates premise lists
  StepRule rule = StepRule::Sub;
  std::vector<std::uint64_t> premises;
  MutationClause conclusion;
  std::optional<Lit> pivot; // RES only
};

struct MutationProof {
  std::vector<MutationStep> steps;
  std::uint64_t conclusion = 0; // designated conclusion step id
};

enum class Violation {
  None,
  ForwardReference,  // premise id not smaller than the step id
  UnknownPremise,    // premise id never defined
  DuplicateId,       // step ids not strictly increasing
  WrongPremiseCount,
  PrefixMismatch,
  PivotMissing,
  ConclusionMismatch,
  NotSubsumed,
  NotInPremises,     // leaf SUB without a subsuming premise-formula clause
  NotTrivialized,    // TAUT whose effect does not trivialize the clause
  TriggerMismatch,   // TAUT trigger differs from the clause complement
  MissingLeftPremise,
  MissingStarPremise,
  UnexpectedPremise,
  TrivializedElim,
  MissingConclusion, // designated conclusion id not defined
};

const char *to_string(Violation v);

struct StepVerdict {
  Violation violation = Violation::None;
  std::string message;

  bool ok() const { return violation == Violation::None; }
};

struct MutationVerdict {
  Violation violation = Violation::None;
  std::optional<std::uint64_t> failed_step;
  std::string message;
  std::optional<MutationClause> conclusion;

  bool ok() const { return violation == Violation::None; }
};

// Checks one step against earlier steps of `proof` (looked up by id) and the
// premise formula. `index` is the step's position in proof.steps.
StepVerdict verify_step(const MutationProof &proof, std::size_t index, const Formula &premises);
MutationVerdict verify_proof(const MutationProof &proof, const Formula &premises);

// Translates a forward check run with retained certificates.
MutationProof translate_proof(const Formula &f, const Proof &proof, const ForwardResult &checked);
// Checks `proof` in wsr mode, then translates; throws ProofError on rejection.
MutationProof translate_proof(const Formula &f, const Proof &proof);

std::string serialize_mutation_proof(const MutationProof &proof);
MutationProof parse_mutation_proof(std::string_view text);

} // namespace wsr
