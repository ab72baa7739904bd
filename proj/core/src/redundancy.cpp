#include "wsr/redundancy.hpp"

#include <algorithm>
#include <thread>

namespace wsr {

const char *to_string(ConditionKind k) {
  switch (k) {
  case ConditionKind::Trivialized:
    return "trivialized";
  case ConditionKind::EntailedByNegC:
    return "entailed-by-negation";
  case ConditionKind::Rup:
    return "rup";
  case ConditionKind::Failed:
    return "failed";
  }
  return "?";
}

const char *to_string(Rejection r) {
  switch (r) {
  case Rejection::None:
    return "accepted";
  case Rejection::WitnessLiteralAbsent:
    return "witness literal not in clause";
  case Rejection::WitnessDisjoint:
    return "witness cube disjoint from clause";
  case Rejection::NotTrivialized:
    return "witness does not trivialize clause";
  case Rejection::ConditionFailed:
    return "redundancy condition failed";
  case Rejection::DeltaNotSubformula:
    return "modulo set is not a subformula";
  case Rejection::WitnessForm:
    return "witness not admitted in this mode";
  }
  return "?";
}

std::string RedundancyVerdict::describe(const ClauseDb &db) const {
  std::string s = to_string(rejection);
  if (rejection == Rejection::ConditionFailed) {
    s += failed_clause ? " for clause " + to_string(db.clause(*failed_clause)) : " for the introduced clause";
    if (failed_target)
      s += ": " + to_string(*failed_target) + " is not RUP";
  }
  return s;
}

std::optional<Clause> condition_target(const Clause &c, const Substitution &s, const Clause &d) {
  auto red = reduct_clause(s, d);
  if (!red)
    return std::nullopt;
  return disjoin(c, *red);
}

ConditionResult check_condition(Propagator &prop, const Clause &c, const Substitution &s, const Clause &d,
                                std::optional<ClauseId> d_id, ClauseFilter filter) {
  auto red = reduct_clause(s, d);
  if (!red)
    return {ConditionKind::Trivialized, {}};
  auto target = disjoin(c, *red);
  if (!target)
    return {ConditionKind::EntailedByNegC, {}};
  if (d_id && filter.admits(*d_id) && prop.db().active(*d_id) && subsumes(d, *target))
    return {ConditionKind::Rup, {*d_id}};
  auto r = prop.is_rup(*target, filter);
  if (!r.rup)
    return {ConditionKind::Failed, {}};
  return {ConditionKind::Rup, std::move(r.premises)};
}

ConditionResult check_condition(const ClauseDb &db, const Clause &c, const Substitution &s, const Clause &d) {
  Propagator prop(db);
  return check_condition(prop, c, s, d);
}

namespace {

// Runs the condition for every id in order and stops at the first failure.
// With several jobs the ids are split into contiguous chunks checked on
// separate propagators; the first failure in id order is still reported.
void run_conditions(const ClauseDb &db, const Clause &c, const Substitution &s, std::span<const ClauseId> ids,
                    const RedundancyOptions &opt, RedundancyVerdict &verdict) {
  std::vector<ConditionResult> results(ids.size());
  std::size_t first_failure = ids.size();

  unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(ids.size() / 64 + 1)));
  if (jobs == 1) {
    Propagator prop(db);
    for (std::size_t k = 0; k < ids.size(); ++k) {
      results[k] = check_condition(prop, c, s, db.clause(ids[k]), ids[k]);
      if (!results[k].passed()) {
        first_failure = k;
        break;
      }
    }
    verdict.propagations += prop.queries();
  } else {
    std::vector<std::uint64_t> queries(jobs, 0);
    std::vector<std::thread> workers;
    std::size_t chunk = (ids.size() + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
      std::size_t lo = j * chunk, hi = std::min(ids.size(), lo + chunk);
      workers.emplace_back([&, j, lo, hi] {
        Propagator prop(db);
        for (std::size_t k = lo; k < hi; ++k) {
          results[k] = check_condition(prop, c, s, db.clause(ids[k]), ids[k]);
          if (!results[k].passed())
            break;
        }
        queries[j] = prop.queries();
      });
    }
    for (auto &w : workers)
      w.join();
    for (auto q : queries)
      verdict.propagations += q;
    for (std::size_t k = 0; k < ids.size(); ++k)
      if (!results[k].passed()) {
        first_failure = k;
        break;
      }
  }

  std::size_t n = std::min(first_failure, ids.size());
  for (std::size_t k = 0; k < n; ++k)
    verdict.certificate.conditions.push_back({ids[k], std::move(results[k])});
  if (first_failure < ids.size()) {
    verdict.rejection = Rejection::ConditionFailed;
    verdict.failed_clause = ids[first_failure];
    verdict.failed_target = condition_target(c, s, db.clause(ids[first_failure]));
  }
}

std::vector<ClauseId> active_outside(const ClauseDb &db, std::span<const ClauseId> delta) {
  std::vector<ClauseId> excluded(delta.begin(), delta.end());
  std::sort(excluded.begin(), excluded.end());
  std::vector<ClauseId> ids;
  for (ClauseId id : db.active_ids())
    if (!std::binary_search(excluded.begin(), excluded.end(), id))
      ids.push_back(id);
  return ids;
}

// Condition on C itself; rejects the verdict when it fails.
bool check_self(const ClauseDb &db, const Clause &c, const Substitution &s, RedundancyVerdict &verdict) {
  Propagator prop(db);
  auto self = check_condition(prop, c, s, c);
  verdict.propagations += prop.queries();
  if (!self.passed()) {
    verdict.rejection = Rejection::ConditionFailed;
    verdict.failed_target = condition_target(c, s, c);
    return false;
  }
  verdict.certificate.conditions.push_back({std::nullopt, std::move(self)});
  return true;
}

} // namespace

RedundancyVerdict check_wsr(const ClauseDb &db, const Clause &c, const Substitution &s,
                            std::span<const ClauseId> delta, const RedundancyOptions &opt) {
  RedundancyVerdict verdict;
  verdict.certificate.kind = WitnessKind::Substitution;
  verdict.certificate.witness = s;
  for (ClauseId id : delta)
    if (id.value >= db.size() || !db.active(id)) {
      verdict.rejection = Rejection::DeltaNotSubformula;
      return verdict;
    }
  verdict.certificate.modulo.assign(delta.begin(), delta.end());

  if (!check_self(db, c, s, verdict))
    return verdict;
  if (s.is_identity() && opt.identity_fast_path)
    return verdict;

  auto ids = active_outside(db, delta);
  run_conditions(db, c, s, ids, opt, verdict);
  return verdict;
}

RedundancyVerdict check_sr(const ClauseDb &db, const Clause &c, const Substitution &s,
                           const RedundancyOptions &opt) {
  RedundancyVerdict verdict;
  verdict.certificate.kind = WitnessKind::Substitution;
  verdict.certificate.witness = s;
  if (!trivializes(s, c)) {
    verdict.rejection = Rejection::NotTrivialized;
    return verdict;
  }
  verdict.certificate.conditions.push_back({std::nullopt, {ConditionKind::Trivialized, {}}});
  auto ids = db.active_ids();
  run_conditions(db, c, s, ids, opt, verdict);
  return verdict;
}

RedundancyVerdict check_pr(const ClauseDb &db, const Clause &c, const Cube &q, const RedundancyOptions &opt) {
  RedundancyVerdict verdict;
  verdict.certificate.kind = WitnessKind::Cube;
  verdict.certificate.witness = from_cube(q);
  if (!intersects(q, c)) {
    verdict.rejection = Rejection::WitnessDisjoint;
    return verdict;
  }
  verdict.certificate.conditions.push_back({std::nullopt, {ConditionKind::Trivialized, {}}});
  auto ids = db.active_ids();
  run_conditions(db, c, verdict.certificate.witness, ids, opt, verdict);
  return verdict;
}

RedundancyVerdict check_rat(const ClauseDb &db, const Clause &c, Lit l, const RedundancyOptions &opt) {
  RedundancyVerdict verdict;
  verdict.certificate.kind = WitnessKind::Literal;
  Substitution s;
  s.assign(l.var(), Atom::constant(!l.is_negative()));
  verdict.certificate.witness = s;
  if (!c.contains(l)) {
    verdict.rejection = Rejection::WitnessLiteralAbsent;
    return verdict;
  }
  verdict.certificate.conditions.push_back({std::nullopt, {ConditionKind::Trivialized, {}}});
  // Only clauses containing ~l are affected by {l -> T}.
  auto occ = db.occurrences(~l);
  std::vector<ClauseId> ids(occ.begin(), occ.end());
  run_conditions(db, c, s, ids, opt, verdict);
  return verdict;
}

bool check_pr_materialized(const Formula &f, const Clause &c, const Cube &q) {
  if (!intersects(q, c))
    return false;
  Substitution blocked = from_cube(complement(c));
  ClauseDb reduced(reduct_formula(blocked, f));
  for (const auto &r : reduct_formula(from_cube(q), f)) {
    auto r_reduced = reduct_clause(blocked, r);
    if (!r_reduced)
      continue; // satisfied by ~C
    if (!is_rup(reduced, *r_reduced).rup)
      return false;
  }
  return true;
}

bool replay_certificate(const ClauseDb &db, const Clause &c, const RedundancyCertificate &cert) {
  Propagator prop(db);
  for (const auto &entry : cert.conditions) {
    const Clause &d = entry.id ? db.clause(*entry.id) : c;
    const auto &res = entry.result;
    switch (res.kind) {
    case ConditionKind::Trivialized:
      if (!trivializes(cert.witness, d))
        return false;
      break;
    case ConditionKind::EntailedByNegC: {
      auto red = reduct_clause(cert.witness, d);
      if (!red || disjoin(c, *red))
        return false;
      break;
    }
    case ConditionKind::Rup: {
      auto target = condition_target(c, cert.witness, d);
      if (!target || res.premises.empty())
        return false;
      std::vector<char> allowed(db.size(), 0);
      for (ClauseId p : res.premises)
        allowed[p.value] = 1;
      if (!prop.is_rup(*target, ClauseFilter(allowed)).rup)
        return false;
      break;
    }
    case ConditionKind::Failed:
      return false;
    }
  }
  return true;
}

} // namespace wsr
