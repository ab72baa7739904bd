#pragma once

// Forward and backward checking of WSR proofs, with unsatisfiable-core and
// trimmed-proof extraction during the backward pass.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wsr/formula.hpp"
#include "wsr/proofio.hpp"
#include "wsr/redundancy.hpp"

namespace wsr {

// Which redundancy notion an introduction must satisfy. Identity witnesses
// are RUP steps in every mode. Outside Wsr mode, modulo blocks are applied
// as deletions after the introduction.
enum class Mode {
  Rup, // witnesses rejected
  Rat, // witness must set one literal of C to true; an identity witness
       // that is not RUP falls back to RAT on the first literal
  Pr,  // witness must be a cube
  Sr,
  Wsr,
};

// How the backward pass marks clauses for an interference step.
enum class Strategy {
  WsrDelta,   // newly needed clauses become the step's modulo set
  SrFixpoint, // newly needed clauses are checked themselves, until fixpoint
};

const char *to_string(Mode m);
const char *to_string(Strategy s);
std::optional<Mode> parse_mode(std::string_view name);
std::optional<Strategy> parse_strategy(std::string_view name);

struct CheckOptions {
  Mode mode = Mode::Wsr;
  Strategy strategy = Strategy::WsrDelta;
  // Backward pass: try each RUP over the marked clauses before the full db.
  bool marked_first = true;
  // Keep per-step certificates (needed for translation).
  bool retain_certificates = false;
  bool identity_fast_path = true;
  unsigned jobs = 1;
  // Backward pass: record the marked ids after every validated step.
  bool record_marking = false;
  // Forward pass: observer for every accepted introduction, called with the
  // accumulated formula before the step and the matched modulo ids.
  std::function<void(const ClauseDb &, const Introduction &, std::span<const ClauseId>)> on_accept;
};

struct Warning {
  std::size_t instruction = 0;
  std::string message;
};

struct CheckStats {
  std::uint64_t rup_checks = 0; // propagation queries
  std::size_t instructions = 0;
  std::size_t introductions = 0;
  std::size_t checked = 0; // introductions actually validated
  std::size_t skipped = 0; // backward: unmarked introductions
  std::size_t marked = 0;  // backward: clauses ever marked
  std::size_t core_size = 0;
  std::size_t trimmed_length = 0;
  double seconds = 0;
};

// One processed instruction of a forward pass.
struct StepRecord {
  std::size_t instruction = 0;
  std::optional<ClauseId> introduced;
  std::vector<ClauseId> removed; // deleted clause or matched modulo ids
  std::optional<RedundancyCertificate> certificate;
};

struct Rejected {
  std::size_t instruction = 0;
  std::string reason;
  std::optional<Clause> target; // the clause that failed its RUP check
};

struct ForwardResult {
  bool accepted = false;
  bool refutation = false;
  std::optional<Rejected> rejection;
  std::size_t input_clauses = 0; // ids below this are input clauses
  ClauseDb db;                   // final accumulated formula
  std::vector<StepRecord> records;
  std::vector<Warning> warnings;
  CheckStats stats;
};

ForwardResult check_forward(const Formula &f, const Proof &proof, const CheckOptions &options = {});

struct MarkingSnapshot {
  std::size_t instruction = 0;
  std::vector<ClauseId> marked; // ascending
};

struct BackwardResult {
  bool accepted = false;
  bool refutation = false;
  std::optional<Rejected> rejection;
  Formula core;  // marked input clauses, input order
  Proof trimmed; // validated steps in proof order
  std::vector<ClauseId> core_ids;
  std::vector<MarkingSnapshot> marking;
  std::vector<Warning> warnings;
  CheckStats stats;
};

// Requires the proof to introduce the empty clause (or the input to contain
// it); instructions after the first empty clause are ignored.
BackwardResult check_backward(const Formula &f, const Proof &proof, const CheckOptions &options = {});

std::string format_stats(const CheckStats &stats);

} // namespace wsr
