#include "wsr/phpgen.hpp"

#include <stdexcept>
#include <string>

namespace wsr {

PhpIndex::PhpIndex(std::uint32_t pigeons) : n_(pigeons) {
  if (pigeons == 0)
    throw std::invalid_argument("pigeonhole instance needs at least one pigeon");
}

Var PhpIndex::var(std::uint32_t pigeon, std::uint32_t hole) const {
  if (pigeon < 1 || pigeon > n_ || hole < 1 || hole >= n_)
    throw std::out_of_range("no variable for pigeon " + std::to_string(pigeon) + ", hole " + std::to_string(hole));
  return Var{(pigeon - 1) * (n_ - 1) + hole};
}

Clause PhpIndex::h(std::uint32_t i, std::uint32_t k) const {
  std::vector<Lit> lits;
  for (std::uint32_t j = 1; j < k; ++j)
    lits.push_back(lit(i, j));
  return *Clause::from(lits);
}

Clause PhpIndex::p(std::uint32_t i, std::uint32_t j, std::uint32_t hole) const {
  std::vector<Lit> lits{~lit(i, hole), ~lit(j, hole)};
  return *Clause::from(lits);
}

Clause PhpIndex::r(std::uint32_t i, std::uint32_t k) const {
  std::vector<Lit> lits{~lit(i, k - 1)};
  return *Clause::from(lits);
}

Clause PhpIndex::l(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
  std::vector<Lit> lits{~lit(i, k - 1), ~lit(k, j)};
  return *Clause::from(lits);
}

Cube PhpIndex::q(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
  std::vector<Lit> lits{~lit(i, k - 1), ~lit(k, j), lit(i, j), lit(k, k - 1)};
  return *Cube::from(lits);
}

Substitution PhpIndex::swap(std::uint32_t i, std::uint32_t k) const {
  if (i < 1 || i >= k || k > n_)
    throw std::out_of_range("invalid pigeon swap " + std::to_string(i) + " <-> " + std::to_string(k));
  Substitution s;
  for (std::uint32_t j = 1; j < k; ++j) {
    s.assign(var(i, j), Atom::literal(lit(k, j)));
    s.assign(var(k, j), Atom::literal(lit(i, j)));
  }
  return s;
}

Formula PhpIndex::formula(std::uint32_t k) const {
  Formula f;
  for (std::uint32_t i = 1; i <= k; ++i)
    f.add(h(i, k));
  for (std::uint32_t i = 1; i <= k; ++i)
    for (std::uint32_t j = i + 1; j <= k; ++j)
      for (std::uint32_t hole = 1; hole < k; ++hole)
        f.add(p(i, j, hole));
  return f;
}

Formula php_formula(std::uint32_t n) { return PhpIndex(n).formula(n); }

Substitution php_swap(std::uint32_t i, std::uint32_t n) { return PhpIndex(n).swap(i, n); }

Proof php_wsr_proof(std::uint32_t n) {
  PhpIndex ix(n);
  Proof proof;
  for (std::uint32_t k = n; k >= 2; --k) {
    for (std::uint32_t i = 1; i < k; ++i)
      proof.push_back(Introduction{ix.r(i, k), ix.swap(i, k), {}});
    for (std::uint32_t i = 1; i < k; ++i) {
      std::vector<Clause> delta{ix.r(i == k - 1 ? 1 : i, k)};
      if (i == k - 1) {
        Formula lower = ix.formula(k - 1);
        for (const auto &c : ix.formula(k))
          if (!lower.contains(c))
            delta.push_back(c);
      }
      proof.push_back(Introduction{ix.h(i, k - 1), Substitution(), std::move(delta)});
    }
  }
  return proof;
}

Proof php_pr_proof(std::uint32_t n) {
  PhpIndex ix(n);
  Proof proof;
  for (std::uint32_t k = n; k >= 2; --k) {
    for (std::uint32_t i = 1; i < k; ++i)
      for (std::uint32_t j = 1; j + 1 < k; ++j)
        proof.push_back(Introduction{ix.l(i, j, k), from_cube(ix.q(i, j, k)), {}});
    for (std::uint32_t i = 1; i < k; ++i)
      proof.push_back(Introduction{ix.r(i, k), Substitution(), {}});
    for (std::uint32_t i = 1; i < k; ++i)
      proof.push_back(Introduction{ix.h(i, k - 1), Substitution(), {}});
    for (std::uint32_t i = 1; i < k; ++i)
      for (std::uint32_t j = 1; j + 1 < k; ++j)
        proof.push_back(Deletion{ix.l(i, j, k)});
    for (std::uint32_t i = 1; i < k; ++i)
      proof.push_back(Deletion{ix.r(i, k)});
    Formula lower = ix.formula(k - 1);
    for (const auto &c : ix.formula(k))
      if (!lower.contains(c))
        proof.push_back(Deletion{c});
  }
  return proof;
}

} // namespace wsr
