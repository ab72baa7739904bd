#pragma once

// Text formats: DIMACS CNF and the WSR proof format.
//
// WSR proof grammar (whitespace separated tokens; `c` starts a comment line):
//
//   deletion := 'd' lit* '0'
//   intro    := lit* '0' [witness] modulo*
//   witness  := 's' cube-lit* '0' (lit lit)* '0'
//   modulo   := 'm' lit* '0'
//
// Cube literals map their variable to Top (positive) or Bot (negative); a
// pair `a b` maps a to b. A variable may be mapped at most once. A missing
// witness is the identity, which makes the introduction a RUP step. Modulo
// blocks name clauses of the accumulated formula by content.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wsr/formula.hpp"
#include "wsr/substitution.hpp"

namespace wsr {

struct Deletion {
  Clause clause;

  friend bool operator==(const Deletion &, const Deletion &) = default;
};

// `w: C, σ \ Δ` introduces C and removes the clauses of Δ.
struct Introduction {
  Clause clause;
  Substitution witness;
  std::vector<Clause> modulo;

  friend bool operator==(const Introduction &, const Introduction &) = default;
};

using ProofInstruction = std::variant<Deletion, Introduction>;
using Proof = std::vector<ProofInstruction>;

struct DimacsFormula {
  Formula formula;
  std::uint32_t num_vars = 0;
  std::size_t declared_clauses = 0;
};

DimacsFormula parse_dimacs(std::string_view text);
Proof parse_wsr_proof(std::string_view text);

// DPR-style lines: `lits 0` is a RUP step, and a line whose literal list
// repeats its first literal carries the cube witness starting at the
// repetition (`l1 .. lk l1 w2 .. wm 0`). `d lits 0` deletes.
Proof parse_dpr_proof(std::string_view text);

std::string serialize_dimacs(const Formula &f, std::uint32_t num_vars);
std::string serialize_dimacs(const Formula &f);
std::string serialize_instruction(const ProofInstruction &instruction);
std::string serialize_proof(const Proof &proof);
// Cores are DIMACS; trimmed proofs use the WSR proof format.
inline std::string serialize_core(const Formula &core, std::uint32_t num_vars) {
  return serialize_dimacs(core, num_vars);
}
inline std::string serialize_trimmed(const Proof &trimmed) { return serialize_proof(trimmed); }

// Witness tokens after 's' (without the 's'): `cube-lit* 0 (lit lit)* 0`.
std::string serialize_witness(const Substitution &s);
// Parses exactly one witness body as produced by serialize_witness.
Substitution parse_witness(std::string_view text);

std::size_t count_introductions(const Proof &proof);

std::string read_file(const std::string &path);
void write_file(const std::string &path, std::string_view contents);

} // namespace wsr
