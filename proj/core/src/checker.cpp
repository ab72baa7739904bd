#include "wsr/checker.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace wsr {

const char *to_string(Mode m) {
  switch (m) {
  case Mode::Rup:
    return "rup";
  case Mode::Rat:
    return "rat";
  case Mode::Pr:
    return "pr";
  case Mode::Sr:
    return "sr";
  case Mode::Wsr:
    return "wsr";
  }
  return "?";
}

const char *to_string(Strategy s) { return s == Strategy::WsrDelta ? "wsr" : "sr-fixpoint"; }

std::optional<Mode> parse_mode(std::string_view name) {
  for (Mode m : {Mode::Rup, Mode::Rat, Mode::Pr, Mode::Sr, Mode::Wsr})
    if (name == to_string(m))
      return m;
  return std::nullopt;
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  if (name == "wsr" || name == "wsr-delta")
    return Strategy::WsrDelta;
  if (name == "sr-fixpoint" || name == "sr")
    return Strategy::SrFixpoint;
  return std::nullopt;
}

std::string format_stats(const CheckStats &s) {
  std::ostringstream out;
  out << "instructions " << s.instructions << "\n"
      << "introductions " << s.introductions << "\n"
      << "checked " << s.checked << "\n"
      << "skipped " << s.skipped << "\n"
      << "rup_checks " << s.rup_checks << "\n"
      << "marked " << s.marked << "\n"
      << "core_size " << s.core_size << "\n"
      << "trimmed_length " << s.trimmed_length << "\n"
      << "seconds " << s.seconds << "\n";
  return out.str();
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Matches clauses by content against the active formula, lowest id first,
// never choosing the same id twice.
std::vector<ClauseId> match_active(const ClauseDb &db, std::span<const Clause> clauses, std::size_t instruction,
                                   const char *what, std::vector<Warning> &warnings) {
  std::vector<ClauseId> ids;
  for (const auto &c : clauses) {
    bool found = false;
    for (ClauseId id : db.active_copies(c))
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
        ids.push_back(id);
        found = true;
        break;
      }
    if (!found)
      warnings.push_back({instruction, std::string(what) + " " + to_string(c) + " is not in the formula"});
  }
  return ids;
}

// The literal l such that s == {var(l) -> Top}, if s has that shape.
std::optional<Lit> rat_literal(const Substitution &s) {
  auto q = to_cube(s);
  if (!q || q->size() != 1)
    return std::nullopt;
  return q->lits()[0];
}

RedundancyVerdict rejected(Rejection why) {
  RedundancyVerdict v;
  v.rejection = why;
  return v;
}

RedundancyVerdict validate_forward(const ClauseDb &db, const Introduction &intro, std::span<const ClauseId> delta,
                                   Mode mode, const RedundancyOptions &ropt) {
  const Clause &c = intro.clause;
  const Substitution &s = intro.witness;
  if (s.is_identity()) {
    auto v = check_wsr(db, c, s, mode == Mode::Wsr ? delta : std::span<const ClauseId>{}, ropt);
    if (!v.accepted() && mode == Mode::Rat && !c.empty()) {
      auto rat = check_rat(db, c, c.lits()[0], ropt);
      rat.propagations += v.propagations;
      return rat;
    }
    return v;
  }
  switch (mode) {
  case Mode::Rup:
    return rejected(Rejection::WitnessForm);
  case Mode::Rat: {
    auto l = rat_literal(s);
    if (!l)
      return rejected(Rejection::WitnessForm);
    return check_rat(db, c, *l, ropt);
  }
  case Mode::Pr: {
    auto q = to_cube(s);
    if (!q)
      return rejected(Rejection::WitnessForm);
    return check_pr(db, c, *q, ropt);
  }
  case Mode::Sr:
    return check_sr(db, c, s, ropt);
  case Mode::Wsr:
    return check_wsr(db, c, s, delta, ropt);
  }
  return rejected(Rejection::WitnessForm);
}

} // namespace

ForwardResult check_forward(const Formula &f, const Proof &proof, const CheckOptions &opt) {
  auto start = Clock::now();
  ForwardResult r;
  r.db = ClauseDb(f);
  r.input_clauses = r.db.size();
  r.refutation = !r.db.empties().empty();
  RedundancyOptions ropt{opt.identity_fast_path, opt.jobs};

  for (std::size_t k = 0; k < proof.size(); ++k) {
    ++r.stats.instructions;
    StepRecord rec;
    rec.instruction = k;
    if (const auto *del = std::get_if<Deletion>(&proof[k])) {
      rec.removed = match_active(r.db, std::span(&del->clause, 1), k, "deleted clause", r.warnings);
      for (ClauseId id : rec.removed)
        r.db.deactivate(id);
      r.records.push_back(std::move(rec));
      continue;
    }

    const auto &intro = std::get<Introduction>(proof[k]);
    ++r.stats.introductions;
    ++r.stats.checked;
    auto delta = match_active(r.db, intro.modulo, k, "modulo clause", r.warnings);
    auto verdict = validate_forward(r.db, intro, delta, opt.mode, ropt);
    r.stats.rup_checks += verdict.propagations;
    if (!verdict.accepted()) {
      r.rejection = Rejected{k, verdict.describe(r.db), verdict.failed_target};
      r.stats.seconds = since(start);
      return r;
    }
    if (opt.on_accept)
      opt.on_accept(r.db, intro, delta);
    rec.introduced = r.db.add(intro.clause);
    for (ClauseId id : delta)
      r.db.deactivate(id);
    rec.removed = std::move(delta);
    if (opt.retain_certificates)
      rec.certificate = std::move(verdict.certificate);
    r.records.push_back(std::move(rec));

    if (intro.clause.empty()) {
      r.refutation = true;
      if (k + 1 < proof.size())
        r.warnings.push_back({k, "ignoring " + std::to_string(proof.size() - k - 1) +
                                     " instructions after the empty clause"});
      break;
    }
  }
  r.accepted = true;
  r.stats.seconds = since(start);
  return r;
}

/*------------------------------------------------------------------------*/

namespace {

struct Event {
  std::size_t instruction = 0;
  bool introduction = false;
  ClauseId id;                   // introduced or deleted clause
  std::vector<ClauseId> removed; // modulo ids of an introduction
};

class BackwardPass {
public:
  BackwardPass(ClauseDb &db, std::vector<char> &marked, const CheckOptions &opt)
      : db_(db), marked_(marked), opt_(opt), prop_(db) {}

  // Validates the introduction of `c` (already deactivated and unmarked).
  // On success `newly` holds the clauses marked by this step, in marking order.
  std::optional<Rejected> validate(const Introduction &intro, std::size_t k, std::vector<ClauseId> &newly) {
    const Clause &c = intro.clause;
    Substitution s = intro.witness;
    snapshot_ = marked_;
    newly_ = &newly;

    if (s.is_identity()) {
      if (condition(c, s, c, std::nullopt, ClauseFilter(snapshot_)))
        return std::nullopt;
      if (opt_.mode != Mode::Rat || c.empty())
        return fail(k, c, s, c, "introduced clause is not RUP");
      s = Substitution();
      s.assign(c.lits()[0].var(), Atom::constant(!c.lits()[0].is_negative()));
    }

    std::optional<Lit> rat;
    switch (opt_.mode) {
    case Mode::Rup:
      return Rejected{k, to_string(Rejection::WitnessForm), std::nullopt};
    case Mode::Rat:
      rat = rat_literal(s);
      if (!rat)
        return Rejected{k, to_string(Rejection::WitnessForm), std::nullopt};
      if (!c.contains(*rat))
        return Rejected{k, to_string(Rejection::WitnessLiteralAbsent), std::nullopt};
      break;
    case Mode::Pr: {
      auto q = to_cube(s);
      if (!q)
        return Rejected{k, to_string(Rejection::WitnessForm), std::nullopt};
      if (!intersects(*q, c))
        return Rejected{k, to_string(Rejection::WitnessDisjoint), std::nullopt};
      break;
    }
    case Mode::Sr:
      if (!trivializes(s, c))
        return Rejected{k, to_string(Rejection::NotTrivialized), std::nullopt};
      break;
    case Mode::Wsr:
      if (!condition(c, s, c, std::nullopt, ClauseFilter(snapshot_)))
        return fail(k, c, s, c, "redundancy condition failed for the introduced clause");
      break;
    }

    // Conditions for the clauses marked before this step.
    std::vector<ClauseId> targets;
    if (rat) {
      for (ClauseId id : db_.occurrences(~*rat))
        if (snapshot_[id.value])
          targets.push_back(id);
    } else {
      for (std::uint32_t i = 0; i < snapshot_.size(); ++i)
        if (snapshot_[i])
          targets.push_back(ClauseId{i});
    }
    for (ClauseId id : targets)
      if (!condition(c, s, db_.clause(id), id, ClauseFilter(snapshot_)))
        return fail(k, c, s, db_.clause(id), "redundancy condition failed for " + to_string(db_.clause(id)));

    if (opt_.strategy == Strategy::SrFixpoint)
      for (std::size_t i = 0; i < newly.size(); ++i) {
        ClauseId id = newly[i];
        const Clause &d = db_.clause(id);
        if (rat && !d.contains(~*rat))
          continue;
        if (!condition(c, s, d, id, ClauseFilter(marked_)))
          return fail(k, c, s, d, "redundancy condition failed for " + to_string(d));
      }
    return std::nullopt;
  }

  std::uint64_t queries() const { return prop_.queries(); }

private:
  // Checks one condition, first over `restricted`, then over the full db,
  // and marks the premises used.
  bool condition(const Clause &c, const Substitution &s, const Clause &d, std::optional<ClauseId> d_id,
                 ClauseFilter restricted) {
    ConditionResult res;
    if (opt_.marked_first)
      res = check_condition(prop_, c, s, d, d_id, restricted);
    if (!res.passed())
      res = check_condition(prop_, c, s, d, d_id);
    if (!res.passed())
      return false;
    for (ClauseId p : res.premises)
      if (!marked_[p.value]) {
        marked_[p.value] = 1;
        newly_->push_back(p);
      }
    return true;
  }

  Rejected fail(std::size_t k, const Clause &c, const Substitution &s, const Clause &d, std::string why) {
    return Rejected{k, std::move(why), condition_target(c, s, d)};
  }

  ClauseDb &db_;
  std::vector<char> &marked_;
  const CheckOptions &opt_;
  Propagator prop_;
  std::vector<char> snapshot_;
  std::vector<ClauseId> *newly_ = nullptr;
};

} // namespace

BackwardResult check_backward(const Formula &f, const Proof &proof, const CheckOptions &opt) {
  auto start = Clock::now();
  BackwardResult r;
  ClauseDb db(f);
  const std::size_t inputs = db.size();

  if (!db.empties().empty()) {
    ClauseId id = db.empties()[0];
    r.accepted = r.refutation = true;
    r.core.add(db.clause(id));
    r.core_ids.push_back(id);
    r.stats.marked = r.stats.core_size = 1;
    r.stats.seconds = since(start);
    return r;
  }

  // Recording pass: replay the proof without validation.
  std::vector<Event> events;
  bool derived_empty = false;
  for (std::size_t k = 0; k < proof.size() && !derived_empty; ++k) {
    ++r.stats.instructions;
    if (const auto *del = std::get_if<Deletion>(&proof[k])) {
      auto ids = match_active(db, std::span(&del->clause, 1), k, "deleted clause", r.warnings);
      for (ClauseId id : ids) {
        db.deactivate(id);
        events.push_back({k, false, id, {}});
      }
      continue;
    }
    const auto &intro = std::get<Introduction>(proof[k]);
    ++r.stats.introductions;
    auto delta = match_active(db, intro.modulo, k, "modulo clause", r.warnings);
    ClauseId id = db.add(intro.clause);
    for (ClauseId d : delta)
      db.deactivate(d);
    events.push_back({k, true, id, std::move(delta)});
    if (intro.clause.empty()) {
      derived_empty = true;
      if (k + 1 < proof.size())
        r.warnings.push_back({k, "ignoring " + std::to_string(proof.size() - k - 1) +
                                     " instructions after the empty clause"});
    }
  }
  if (!derived_empty) {
    r.rejection = Rejected{proof.size(), "proof does not derive the empty clause", std::nullopt};
    r.stats.seconds = since(start);
    return r;
  }

  std::vector<char> marked(db.size(), 0);
  marked[events.back().id.value] = 1;
  std::size_t ever_marked = 1;
  BackwardPass pass(db, marked, opt);
  Proof trimmed_rev;

  for (std::size_t e = events.size(); e-- > 0;) {
    const Event &ev = events[e];
    if (!ev.introduction) {
      db.activate(ev.id);
      continue;
    }
    db.deactivate(ev.id);
    for (ClauseId d : ev.removed)
      db.activate(d);
    if (!marked[ev.id.value]) {
      ++r.stats.skipped;
      continue;
    }
    marked[ev.id.value] = 0;
    ++r.stats.checked;

    const auto &intro = std::get<Introduction>(proof[ev.instruction]);
    std::vector<ClauseId> newly;
    if (auto rej = pass.validate(intro, ev.instruction, newly)) {
      r.rejection = std::move(rej);
      r.stats.rup_checks = pass.queries();
      r.stats.seconds = since(start);
      return r;
    }
    ever_marked += newly.size();

    std::vector<Clause> fresh;
    fresh.reserve(newly.size());
    for (ClauseId id : newly)
      fresh.push_back(db.clause(id));
    if (opt.strategy == Strategy::WsrDelta) {
      trimmed_rev.push_back(Introduction{intro.clause, intro.witness, std::move(fresh)});
    } else {
      for (auto it = fresh.rbegin(); it != fresh.rend(); ++it)
        trimmed_rev.push_back(Deletion{std::move(*it)});
      trimmed_rev.push_back(Introduction{intro.clause, intro.witness, {}});
    }

    if (opt.record_marking) {
      MarkingSnapshot snap{ev.instruction, {}};
      for (std::uint32_t i = 0; i < marked.size(); ++i)
        if (marked[i])
          snap.marked.push_back(ClauseId{i});
      r.marking.push_back(std::move(snap));
    }
  }

  for (std::uint32_t i = 0; i < inputs; ++i)
    if (marked[i]) {
      r.core_ids.push_back(ClauseId{i});
      r.core.add(db.clause(ClauseId{i}));
    }
  r.trimmed.assign(std::make_move_iterator(trimmed_rev.rbegin()), std::make_move_iterator(trimmed_rev.rend()));
  r.accepted = r.refutation = true;
  r.stats.rup_checks = pass.queries();
  r.stats.marked = ever_marked;
  r.stats.core_size = r.core.size();
  r.stats.trimmed_length = r.trimmed.size();
  r.stats.seconds = since(start);
  return r;
}

} // namespace wsr
