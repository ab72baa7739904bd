#pragma once

// Unit propagation with reason tracking, RUP checks, premise extraction and
// subsumption-merge chain reconstruction.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wsr/formula.hpp"

namespace wsr {

// Restricts propagation to a subset of clause ids. A default-constructed
// filter admits every active clause.
class ClauseFilter {
public:
  ClauseFilter() = default;
  // `allowed[id]` nonzero admits clause id; ids beyond the vector are excluded.
  explicit ClauseFilter(const std::vector<char> &allowed) : allowed_(&allowed) {}

  bool admits(ClauseId id) const {
    return !allowed_ || (id.value < allowed_->size() && (*allowed_)[id.value]);
  }
  bool restricts() const { return allowed_ != nullptr; }

private:
  const std::vector<char> *allowed_ = nullptr;
};

struct TrailEntry {
  Lit lit;
  std::optional<ClauseId> reason; // nullopt for assumptions
};

struct Trail {
  std::vector<TrailEntry> entries;
  std::optional<ClauseId> conflict;
};

struct RupResult {
  bool rup = false;
  std::vector<ClauseId> premises; // reason cone of the conflict, ascending
};

// Subsumption followed by self-subsuming resolutions: E0 ⊆ A0 and
// A(i) = resolve(A(i-1), E(i), pivot(i)) with E(i) \ {~pivot(i)} ⊆ A(i-1).
struct Chain {
  std::vector<ClauseId> premises; // E0..En
  std::vector<Lit> pivots;        // pivot i (1..n) stored at index i-1
  std::vector<Clause> derived;    // A0..An
};

// A reusable propagation context over a read-only clause database.
//
// Propagation is a pure function of the active clauses, their ids and the
// query: after placing the assumptions, the smallest-id admitted clause that
// is falsified or unit is processed next, until a conflict or fixpoint.
// Per-clause false-literal counters replace watches, so no state survives
// between queries.
class Propagator {
public:
  explicit Propagator(const ClauseDb &db) : db_(&db) {}

  Trail propagate(const Cube &assumptions, ClauseFilter filter = {});
  RupResult is_rup(const Clause &c, ClauseFilter filter = {});

  // Ids reachable from the trail's conflict through reasons, ascending.
  std::vector<ClauseId> premises(const Trail &trail) const;

  std::uint64_t queries() const { return queries_; }
  const ClauseDb &db() const { return *db_; }

private:
  void reset();
  void assign(Trail &trail, Lit l, std::optional<ClauseId> reason);
  std::int8_t value(Lit l) const {
    std::int8_t v = values_[l.var().index];
    return l.is_negative() ? static_cast<std::int8_t>(-v) : v;
  }

  const ClauseDb *db_;
  std::vector<std::int8_t> values_; // by var: 1 true, -1 false, 0 unassigned
  std::vector<std::uint32_t> false_count_;
  std::vector<ClauseId> touched_;
  std::vector<Var> assigned_;
  std::uint64_t queries_ = 0;
};

RupResult is_rup(const ClauseDb &db, const Clause &c, ClauseFilter filter = {});

// Rebuilds the subsumption-merge chain behind a conflicting trail. Reasons
// are resolved in reverse chronological order; the final clause consists of
// assumption complements only. Throws ProofError on a conflict-free trail.
Chain extract_chain(const Trail &trail, const ClauseDb &db);

// Checks the chain invariants against the database contents.
bool valid_chain(const Chain &chain, const ClauseDb &db);

} // namespace wsr
