#pragma once

// Core propositional objects: variables, literals, atoms, clauses, cubes,
// formulas, the clause database of a checking session, and models.

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wsr/errors.hpp"

namespace wsr {

/*------------------------------------------------------------------------*/

struct Var {
  std::uint32_t index = 0; // >= 1 for real variables

  friend auto operator<=>(Var, Var) = default;
};

// A literal in DIMACS encoding: k is the positive literal of variable k,
// -k its negation. Ordered by variable, negative before positive.
class Lit {
public:
  constexpr Lit() = default;
  explicit Lit(std::int32_t dimacs);

  static Lit positive(Var v) { return Lit(static_cast<std::int32_t>(v.index)); }
  static Lit negative(Var v) { return Lit(-static_cast<std::int32_t>(v.index)); }

  Var var() const { return Var{static_cast<std::uint32_t>(code_ < 0 ? -code_ : code_)}; }
  bool is_negative() const { return code_ < 0; }
  std::int32_t dimacs() const { return code_; }

  Lit operator~() const {
    Lit l;
    l.code_ = -code_;
    return l;
  }

  // Dense index usable for per-literal tables: 2*var + (negative ? 0 : 1).
  std::uint32_t index() const { return 2 * var().index + (code_ < 0 ? 0u : 1u); }

  friend bool operator==(Lit a, Lit b) { return a.code_ == b.code_; }
  friend std::strong_ordering operator<=>(Lit a, Lit b) { return a.index() <=> b.index(); }

private:
  std::int32_t code_ = 0;
};

// A literal or one of the constants Top / Bot.
class Atom {
public:
  enum class Kind : std::uint8_t { Top, Bot, Literal };

  static Atom top() { return Atom(Kind::Top, Lit()); }
  static Atom bot() { return Atom(Kind::Bot, Lit()); }
  static Atom literal(Lit l) { return Atom(Kind::Literal, l); }
  static Atom constant(bool value) { return value ? top() : bot(); }

  Kind kind() const { return kind_; }
  bool is_top() const { return kind_ == Kind::Top; }
  bool is_bot() const { return kind_ == Kind::Bot; }
  bool is_literal() const { return kind_ == Kind::Literal; }
  Lit lit() const { return lit_; }

  Atom complement() const;

  friend bool operator==(const Atom &, const Atom &) = default;

private:
  Atom(Kind k, Lit l) : kind_(k), lit_(l) {}
  Kind kind_;
  Lit lit_;
};

std::string to_string(Lit l);
std::string to_string(const Atom &a);

/*------------------------------------------------------------------------*/

namespace detail {

// Sorted, duplicate-free, complement-free literal vector shared by clauses
// and cubes. canonicalize() returns false on a complementary pair.
bool canonicalize(std::vector<Lit> &lits);

} // namespace detail

class Cube;

// Disjunction of literals. Always canonical: sorted, no duplicates, no
// complementary pair.
class Clause {
public:
  Clause() = default;

  // Canonical clause, or nullopt when `lits` contains a complementary pair.
  static std::optional<Clause> from(std::span<const Lit> lits);
  static std::optional<Clause> from_dimacs(std::span<const std::int32_t> lits);
  // Throws std::invalid_argument on tautologies. Meant for literals in code.
  static Clause of(std::initializer_list<std::int32_t> lits);

  std::span<const Lit> lits() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  bool contains(Lit l) const;
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }

  friend bool operator==(const Clause &, const Clause &) = default;
  friend auto operator<=>(const Clause &a, const Clause &b) { return a.lits_ <=> b.lits_; }

private:
  explicit Clause(std::vector<Lit> lits) : lits_(std::move(lits)) {}
  std::vector<Lit> lits_;
  friend class Cube;
  friend Cube complement(const Clause &);
  friend Clause complement(const Cube &);
};

// Conjunction of literals, with the same canonical form as Clause.
class Cube {
public:
  Cube() = default;

  static std::optional<Cube> from(std::span<const Lit> lits);
  static Cube of(std::initializer_list<std::int32_t> lits);

  std::span<const Lit> lits() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  bool contains(Lit l) const;
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }

  friend bool operator==(const Cube &, const Cube &) = default;
  friend auto operator<=>(const Cube &a, const Cube &b) { return a.lits_ <=> b.lits_; }

private:
  explicit Cube(std::vector<Lit> lits) : lits_(std::move(lits)) {}
  std::vector<Lit> lits_;
  friend class Clause;
  friend Cube complement(const Clause &);
  friend Clause complement(const Cube &);
};

Cube complement(const Clause &c);
Clause complement(const Cube &q);

std::string to_string(const Clause &c);
std::string to_string(const Cube &q);

// Deduplicated canonical clause, or nullopt for a tautology.
std::optional<Clause> normalize_clause(std::span<const Lit> lits);

// (c \ {l}) ∪ (d \ {~l}), or nullopt when the resolvent is tautological.
// Throws PivotError unless l ∈ c and ~l ∈ d.
std::optional<Clause> resolve(const Clause &c, const Clause &d, Lit l);

// Every literal of c occurs in d.
bool subsumes(const Clause &c, const Clause &d);

// c ∪ d, or nullopt when tautological.
std::optional<Clause> disjoin(const Clause &c, const Clause &d);

// The cube and the clause share a literal, i.e. q ⊨ c.
bool intersects(const Cube &q, const Clause &c);

std::uint32_t max_var(const Clause &c);

struct ClauseHash {
  std::size_t operator()(const Clause &c) const noexcept;
};

/*------------------------------------------------------------------------*/

// A finite set of clauses. Iteration follows insertion order so serialized
// output preserves the source order; equality ignores order.
class Formula {
public:
  Formula() = default;
  Formula(std::initializer_list<Clause> clauses);

  // Returns false when the clause was already present.
  bool add(Clause c);
  bool contains(const Clause &c) const { return index_.count(c) != 0; }

  std::span<const Clause> clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }
  auto begin() const { return clauses_.begin(); }
  auto end() const { return clauses_.end(); }

  std::uint32_t max_var() const;
  std::vector<Var> variables() const;

  friend bool operator==(const Formula &a, const Formula &b);

private:
  std::vector<Clause> clauses_;
  std::unordered_set<Clause, ClauseHash> index_;
};

/*------------------------------------------------------------------------*/

struct ClauseId {
  std::uint32_t value = 0;

  friend auto operator<=>(ClauseId, ClauseId) = default;
};

// The accumulated formula of a checking session: an id-indexed multiset of
// clauses with activity flags. Ids are assigned densely from 0 and never
// reused. Keeps a content index (for content-addressed deletions) and
// per-literal occurrence lists of active clauses in ascending id order.
class ClauseDb {
public:
  ClauseDb() = default;
  explicit ClauseDb(const Formula &f);

  ClauseId add(Clause c, bool active = true);
  void activate(ClauseId id);
  void deactivate(ClauseId id);

  bool active(ClauseId id) const { return entries_[id.value].active; }
  const Clause &clause(ClauseId id) const { return entries_[id.value].clause; }
  std::size_t size() const { return entries_.size(); }
  std::size_t active_count() const { return active_count_; }
  std::uint32_t max_var() const { return max_var_; }

  // Lowest active id holding exactly this clause.
  std::optional<ClauseId> find_active(const Clause &c) const;
  // All active ids holding exactly this clause, ascending.
  std::vector<ClauseId> active_copies(const Clause &c) const;

  // Active clauses containing l, ascending id.
  std::span<const ClauseId> occurrences(Lit l) const;
  // Active unit / empty clause ids, ascending.
  std::span<const ClauseId> units() const { return units_; }
  std::span<const ClauseId> empties() const { return empties_; }

  std::vector<ClauseId> active_ids() const;

private:
  struct Entry {
    Clause clause;
    bool active = false;
  };

  void link(ClauseId id);
  void unlink(ClauseId id);

  std::vector<Entry> entries_;
  std::unordered_map<Clause, std::vector<ClauseId>, ClauseHash> content_;
  std::vector<std::vector<ClauseId>> occurs_;
  std::vector<ClauseId> units_;
  std::vector<ClauseId> empties_;
  std::size_t active_count_ = 0;
  std::uint32_t max_var_ = 0;
};

/*------------------------------------------------------------------------*/

// A total model over a finite universe of variables.
class Assignment {
public:
  Assignment() = default;
  // All variables of the universe start false.
  explicit Assignment(std::span<const Var> universe);

  std::span<const Var> universe() const { return universe_; }
  bool in_universe(Var v) const;

  void set(Var v, bool value);
  bool value(Var v) const;
  bool value(Lit l) const { return value(l.var()) != l.is_negative(); }
  bool value(const Atom &a) const;

  friend bool operator==(const Assignment &a, const Assignment &b);

private:
  std::vector<Var> universe_;
  std::vector<std::int8_t> values_; // indexed by var; -1 outside universe
};

bool eval(const Assignment &i, const Clause &c);
bool eval(const Assignment &i, const Cube &q);
bool eval(const Assignment &i, const Formula &f);

/*------------------------------------------------------------------------*/

// Brute-force semantic oracle over all models of a small universe.

struct OracleOptions {
  std::size_t max_vars = 20;
};

// Forward range over the 2^n assignments of a universe. Assignment k sets
// universe[b] to bit b of k.
class ModelRange {
public:
  class iterator {
  public:
    using value_type = Assignment;
    using difference_type = std::ptrdiff_t;

    const Assignment &operator*() const { return current_; }
    const Assignment *operator->() const { return &current_; }
    iterator &operator++();
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const iterator &a, const iterator &b) { return a.counter_ == b.counter_; }

  private:
    friend class ModelRange;
    iterator(const std::vector<Var> *universe, std::uint64_t counter);
    const std::vector<Var> *universe_ = nullptr;
    std::uint64_t counter_ = 0;
    Assignment current_;
  };

  ModelRange(std::vector<Var> universe, const OracleOptions &options = {});

  iterator begin() const { return iterator(&universe_, 0); }
  iterator end() const { return iterator(&universe_, std::uint64_t{1} << universe_.size()); }
  std::uint64_t size() const { return std::uint64_t{1} << universe_.size(); }

private:
  std::vector<Var> universe_;
};

ModelRange all_models(std::vector<Var> universe, const OracleOptions &options = {});

bool oracle_sat(const Formula &f, const OracleOptions &options = {});
bool oracle_entails(const Formula &f, const Clause &c, const OracleOptions &options = {});
bool oracle_sat_equiv(const Formula &f, const Formula &g, const OracleOptions &options = {});

} // namespace wsr

template <> struct std::hash<wsr::Clause> : wsr::ClauseHash {};
