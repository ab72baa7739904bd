#include "wsr/propagation.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace wsr {

void Propagator::reset() {
  for (Var v : assigned_)
    values_[v.index] = 0;
  assigned_.clear();
  for (ClauseId id : touched_)
    false_count_[id.value] = 0;
  touched_.clear();
  if (values_.size() <= db_->max_var())
    values_.resize(db_->max_var() + 1, 0);
  if (false_count_.size() < db_->size())
    false_count_.resize(db_->size(), 0);
}

void Propagator::assign(Trail &trail, Lit l, std::optional<ClauseId> reason) {
  if (values_.size() <= l.var().index)
    values_.resize(l.var().index + 1, 0);
  values_[l.var().index] = l.is_negative() ? -1 : 1;
  assigned_.push_back(l.var());
  trail.entries.push_back({l, reason});
}

Trail Propagator::propagate(const Cube &assumptions, ClauseFilter filter) {
  ++queries_;
  reset();
  Trail trail;

  for (ClauseId id : db_->empties())
    if (filter.admits(id)) {
      trail.conflict = id;
      return trail;
    }

  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> pending;
  auto falsify = [&](Lit falsified) {
    for (ClauseId id : db_->occurrences(falsified)) {
      if (!filter.admits(id))
        continue;
      std::uint32_t &count = false_count_[id.value];
      if (count++ == 0)
        touched_.push_back(id);
      if (count + 1 >= db_->clause(id).size())
        pending.push(id.value);
    }
  };

  for (Lit l : assumptions)
    assign(trail, l, std::nullopt);
  for (const auto &e : trail.entries)
    falsify(~e.lit);
  for (ClauseId id : db_->units())
    if (filter.admits(id))
      pending.push(id.value);

  while (!pending.empty()) {
    ClauseId id{pending.top()};
    pending.pop();
    std::optional<Lit> open;
    bool satisfied = false, several = false;
    for (Lit k : db_->clause(id)) {
      std::int8_t v = value(k);
      if (v > 0) {
        satisfied = true;
        break;
      }
      if (v == 0) {
        several = open.has_value();
        open = k;
        if (several)
          break;
      }
    }
    if (satisfied || several)
      continue;
    if (!open) {
      trail.conflict = id;
      return trail;
    }
    assign(trail, *open, id);
    falsify(~*open);
  }
  return trail;
}

std::vector<ClauseId> Propagator::premises(const Trail &trail) const {
  std::vector<ClauseId> cone;
  if (!trail.conflict)
    return cone;

  std::vector<std::optional<ClauseId>> reason_of(values_.size());
  std::vector<char> seen(values_.size(), 0);
  for (const auto &e : trail.entries)
    reason_of[e.lit.var().index] = e.reason;

  std::vector<ClauseId> stack{*trail.conflict};
  std::vector<char> in_cone(db_->size(), 0);
  in_cone[trail.conflict->value] = 1;
  while (!stack.empty()) {
    ClauseId id = stack.back();
    stack.pop_back();
    cone.push_back(id);
    for (Lit l : db_->clause(id)) {
      auto v = l.var().index;
      if (v >= seen.size() || seen[v])
        continue;
      seen[v] = 1;
      auto r = reason_of[v];
      if (r && !in_cone[r->value]) {
        in_cone[r->value] = 1;
        stack.push_back(*r);
      }
    }
  }
  std::sort(cone.begin(), cone.end());
  return cone;
}

RupResult Propagator::is_rup(const Clause &c, ClauseFilter filter) {
  Trail trail = propagate(complement(c), filter);
  RupResult r;
  if (trail.conflict) {
    r.rup = true;
    r.premises = premises(trail);
  }
  return r;
}

RupResult is_rup(const ClauseDb &db, const Clause &c, ClauseFilter filter) {
  Propagator p(db);
  return p.is_rup(c, filter);
}

/*------------------------------------------------------------------------*/

Chain extract_chain(const Trail &trail, const ClauseDb &db) {
  if (!trail.conflict)
    throw ProofError("extract_chain: trail has no conflict");

  std::uint32_t top = 0;
  for (const auto &e : trail.entries)
    top = std::max(top, e.lit.var().index);
  for (Lit l : db.clause(*trail.conflict))
    top = std::max(top, l.var().index);

  std::vector<std::int64_t> position(top + 1, -1);
  for (std::size_t k = 0; k < trail.entries.size(); ++k)
    position[trail.entries[k].lit.var().index] = static_cast<std::int64_t>(k);

  // Collect the reason cone as trail positions, plus the literals of A0.
  std::vector<char> needed(trail.entries.size(), 0);
  std::vector<Lit> start;
  std::vector<ClauseId> stack{*trail.conflict};
  std::vector<char> visited_var(top + 1, 0);
  while (!stack.empty()) {
    ClauseId id = stack.back();
    stack.pop_back();
    for (Lit l : db.clause(id)) {
      auto v = l.var().index;
      if (visited_var[v])
        continue;
      visited_var[v] = 1;
      auto pos = position[v];
      if (pos < 0)
        continue; // cannot happen for a genuine conflict
      start.push_back(l);
      const auto &e = trail.entries[static_cast<std::size_t>(pos)];
      if (e.reason && !needed[static_cast<std::size_t>(pos)]) {
        needed[static_cast<std::size_t>(pos)] = 1;
        stack.push_back(*e.reason);
      }
    }
  }

  Chain chain;
  chain.premises.push_back(*trail.conflict);
  chain.derived.push_back(*Clause::from(start));
  for (std::size_t k = trail.entries.size(); k-- > 0;) {
    if (!needed[k])
      continue;
    const auto &e = trail.entries[k];
    Lit pivot = ~e.lit;
    const Clause &running = chain.derived.back();
    if (!running.contains(pivot))
      continue;
    auto next = resolve(running, db.clause(*e.reason), pivot);
    chain.premises.push_back(*e.reason);
    chain.pivots.push_back(pivot);
    chain.derived.push_back(std::move(*next));
  }
  return chain;
}

bool valid_chain(const Chain &chain, const ClauseDb &db) {
  if (chain.premises.empty() || chain.derived.size() != chain.premises.size() ||
      chain.pivots.size() + 1 != chain.premises.size())
    return false;
  if (!subsumes(db.clause(chain.premises[0]), chain.derived[0]))
    return false;
  for (std::size_t i = 1; i < chain.premises.size(); ++i) {
    const Clause &prev = chain.derived[i - 1];
    const Clause &e = db.clause(chain.premises[i]);
    Lit l = chain.pivots[i - 1];
    if (!prev.contains(l) || !e.contains(~l))
      return false;
    for (Lit k : e)
      if (k != ~l && !prev.contains(k))
        return false;
    auto r = resolve(prev, e, l);
    if (!r || *r != chain.derived[i])
      return false;
  }
  return true;
}

} // namespace wsr
