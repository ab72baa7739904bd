#pragma once

// Pigeonhole formulas and their short refutations.

#include <cstdint>

#include "wsr/formula.hpp"
#include "wsr/proofio.hpp"
#include "wsr/substitution.hpp"

namespace wsr {

// Variable layout for n pigeons and n-1 holes; var(i, j) = (i-1)(n-1) + j.
class PhpIndex {
public:
  explicit PhpIndex(std::uint32_t pigeons);

  std::uint32_t pigeons() const { return n_; }
  std::uint32_t num_vars() const { return n_ * (n_ - 1); }
  Var var(std::uint32_t pigeon, std::uint32_t hole) const;
  Lit lit(std::uint32_t pigeon, std::uint32_t hole) const { return Lit::positive(var(pigeon, hole)); }

  // Clauses of the subproblem with k pigeons and k-1 holes (k <= n).
  Clause h(std::uint32_t i, std::uint32_t k) const; // pigeon i sits in a hole < k
  Clause p(std::uint32_t i, std::uint32_t j, std::uint32_t hole) const;
  Clause r(std::uint32_t i, std::uint32_t k) const; // pigeon i avoids hole k-1
  Clause l(std::uint32_t i, std::uint32_t j, std::uint32_t k) const;
  Cube q(std::uint32_t i, std::uint32_t j, std::uint32_t k) const;
  // Swaps pigeons i and k on holes 1..k-1.
  Substitution swap(std::uint32_t i, std::uint32_t k) const;
  Formula formula(std::uint32_t k) const;

private:
  std::uint32_t n_;
};

Formula php_formula(std::uint32_t n);
Substitution php_swap(std::uint32_t i, std::uint32_t n);
Proof php_wsr_proof(std::uint32_t n);
Proof php_pr_proof(std::uint32_t n);

} // namespace wsr
