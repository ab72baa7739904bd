#pragma once

// Atomic substitutions: finite, complement-consistent maps from atoms to
// atoms, together with trivialization and reducts.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wsr/formula.hpp"

namespace wsr {

// Stores only the image of each variable's positive literal; the action on
// negative literals is derived, so sigma(~l) == ~sigma(l) holds by
// construction. Identity entries are never stored, and Top maps to Top.
class Substitution {
public:
  using Entry = std::pair<Var, Atom>;

  Substitution() = default; // identity

  // Sets the image of v (replacing any previous one). Mapping v to its own
  // positive literal removes the entry.
  void assign(Var v, Atom image);
  bool maps(Var v) const;

  Atom image(Var v) const;
  Atom apply(Lit l) const;

  bool is_identity() const { return entries_.empty(); }
  // Only constant images, i.e. the substitution of some cube.
  bool is_cube_like() const;
  std::span<const Entry> entries() const { return entries_; }

  friend bool operator==(const Substitution &, const Substitution &) = default;

private:
  std::vector<Entry> entries_; // sorted by variable
};

Atom apply_atom(const Substitution &s, const Atom &a);

// r with apply_atom(r, a) == apply_atom(s, apply_atom(t, a)).
Substitution compose(const Substitution &s, const Substitution &t);

// Some literal maps to Top, or two literals map to complementary atoms.
bool trivializes(const Substitution &s, const Clause &c);

// c|s, or nullopt when s trivializes c.
std::optional<Clause> reduct_clause(const Substitution &s, const Clause &c);
Formula reduct_formula(const Substitution &s, const Formula &f);

Substitution from_cube(const Cube &q);
// Inverse of from_cube; nullopt when some image is a literal.
std::optional<Cube> to_cube(const Substitution &s);

// The model i∘s: variable x takes the value of s(x) under i.
Assignment apply_to_model(const Assignment &i, const Substitution &s);

std::string to_string(const Substitution &s);

} // namespace wsr
