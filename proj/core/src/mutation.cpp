#include "wsr/mutation.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "wsr/propagation.hpp"
#include "wsr/redundancy.hpp"

namespace wsr {

Prefix Prefix::extended(MutationRule rule) const {
  auto rules = rules_ ? std::make_shared<std::vector<MutationRule>>(*rules_)
                      : std::make_shared<std::vector<MutationRule>>();
  rules->push_back(std::move(rule));
  Prefix p;
  p.rules_ = std::move(rules);
  return p;
}

Prefix Prefix::parent() const {
  Prefix p;
  if (size() > 1)
    p.rules_ = std::make_shared<std::vector<MutationRule>>(rules_->begin(), rules_->end() - 1);
  return p;
}

bool operator==(const Prefix &a, const Prefix &b) {
  if (a.rules_ == b.rules_)
    return true;
  if (a.size() != b.size())
    return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i]))
      return false;
  return true;
}

namespace {

// `child` is `parent` followed by exactly one rule.
bool extends(const Prefix &child, const Prefix &parent) {
  if (child.size() != parent.size() + 1)
    return false;
  for (std::size_t i = 0; i < parent.size(); ++i)
    if (!(child[i] == parent[i]))
      return false;
  return true;
}

std::string prefix_text(const Prefix &p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i)
      out += ' ';
    out += "( s " + serialize_witness(p[i].effect) + " :";
    for (Lit l : p[i].trigger)
      out += " " + std::to_string(l.dimacs());
    out += " 0 )";
  }
  return out;
}

} // namespace

std::string to_string(const MutationClause &mc) {
  std::string out;
  for (std::size_t i = 0; i < mc.prefix.size(); ++i)
    out += "∇(" + to_string(mc.prefix[i].effect) + " := " + to_string(mc.prefix[i].trigger) + ") ";
  return out + to_string(mc.clause);
}

Assignment apply_rule_to_model(const Assignment &i, const MutationRule &r) {
  return eval(i, r.trigger) ? apply_to_model(i, r.effect) : i;
}

bool eval_mutation_clause(const Assignment &i, const MutationClause &mc) {
  Assignment cur = i;
  for (std::size_t k = 0; k < mc.prefix.size(); ++k)
    cur = apply_rule_to_model(cur, mc.prefix[k]);
  return eval(cur, mc.clause);
}

const char *to_string(StepRule r) {
  switch (r) {
  case StepRule::Res:
    return "RES";
  case StepRule::Sub:
    return "SUB";
  case StepRule::Taut:
    return "TAUT";
  case StepRule::Intro:
    return "INTRO";
  case StepRule::Elim:
    return "ELIM";
  }
  return "?";
}

const char *to_string(Violation v) {
  switch (v) {
  case Violation::None:
    return "none";
  case Violation::ForwardReference:
    return "premise refers forward";
  case Violation::UnknownPremise:
    return "unknown premise";
  case Violation::DuplicateId:
    return "step ids not increasing";
  case Violation::WrongPremiseCount:
    return "wrong number of premises";
  case Violation::PrefixMismatch:
    return "prefix mismatch";
  case Violation::PivotMissing:
    return "pivot missing";
  case Violation::ConclusionMismatch:
    return "conclusion mismatch";
  case Violation::NotSubsumed:
    return "premise does not subsume conclusion";
  case Violation::NotInPremises:
    return "leaf clause not subsumed by the premise formula";
  case Violation::NotTrivialized:
    return "effect does not trivialize the clause";
  case Violation::TriggerMismatch:
    return "trigger is not the clause complement";
  case Violation::MissingLeftPremise:
    return "missing unmutated premise";
  case Violation::MissingStarPremise:
    return "missing star premise";
  case Violation::UnexpectedPremise:
    return "unexpected premise";
  case Violation::TrivializedElim:
    return "effect trivializes the eliminated clause";
  case Violation::MissingConclusion:
    return "designated conclusion not found";
  }
  return "?";
}

/*------------------------------------------------------------------------*/

namespace {

StepVerdict violation(Violation v, std::string detail = {}) {
  std::string msg = to_string(v);
  if (!detail.empty())
    msg += ": " + detail;
  return {v, std::move(msg)};
}

const MutationStep *find_step(const MutationProof &proof, std::size_t before, std::uint64_t id) {
  auto end = proof.steps.begin() + static_cast<std::ptrdiff_t>(before);
  auto it = std::lower_bound(proof.steps.begin(), end, id,
                             [](const MutationStep &s, std::uint64_t x) { return s.id < x; });
  return it != end && it->id == id ? &*it : nullptr;
}

StepVerdict verify_intro(const MutationClause &out, const std::vector<const MutationClause *> &prem) {
  if (out.prefix.empty())
    return violation(Violation::PrefixMismatch, "conclusion has no rule to introduce");
  const MutationRule &rule = out.prefix.back();
  const Clause &c = out.clause;
  const bool left_needed = !subsumes(complement(rule.trigger), c);
  auto red = reduct_clause(rule.effect, c);
  std::optional<Clause> star;
  if (red)
    star = disjoin(complement(rule.trigger), *red);
  // star is nullopt exactly when Q ⊨ C|σ, i.e. when it is waived
  if (prem.size() > 2)
    return violation(Violation::WrongPremiseCount);
  bool have_left = false, have_star = false;
  for (const auto *p : prem) {
    if (!extends(out.prefix, p->prefix))
      return violation(Violation::PrefixMismatch);
    // One premise may play both roles when the star clause equals C.
    bool is_left = p->clause == c;
    bool is_star = star && p->clause == *star;
    if (!is_left && !is_star)
      return violation(Violation::UnexpectedPremise, to_string(p->clause));
    have_left = have_left || is_left;
    have_star = have_star || is_star;
  }
  if (left_needed && !have_left)
    return violation(Violation::MissingLeftPremise, to_string(c));
  if (star && !have_star)
    return violation(Violation::MissingStarPremise, to_string(*star));
  return {};
}

} // namespace

StepVerdict verify_step(const MutationProof &proof, std::size_t index, const Formula &premises) {
  const MutationStep &st = proof.steps.at(index);
  std::vector<const MutationClause *> prem;
  for (auto pid : st.premises) {
    if (pid >= st.id)
      return violation(Violation::ForwardReference, std::to_string(pid));
    const MutationStep *p = find_step(proof, index, pid);
    if (!p)
      return violation(Violation::UnknownPremise, std::to_string(pid));
    prem.push_back(&p->conclusion);
  }
  const MutationClause &out = st.conclusion;

  switch (st.rule) {
  case StepRule::Res: {
    if (prem.size() != 2)
      return violation(Violation::WrongPremiseCount);
    if (!st.pivot)
      return violation(Violation::PivotMissing, "no pivot given");
    if (!(prem[0]->prefix == out.prefix) || !(prem[1]->prefix == out.prefix))
      return violation(Violation::PrefixMismatch);
    Lit l = *st.pivot;
    if (!prem[0]->clause.contains(l) || !prem[1]->clause.contains(~l))
      return violation(Violation::PivotMissing, to_string(l));
    auto r = resolve(prem[0]->clause, prem[1]->clause, l);
    if (!r || *r != out.clause)
      return violation(Violation::ConclusionMismatch);
    return {};
  }
  case StepRule::Sub: {
    if (prem.empty()) {
      if (!out.prefix.empty())
        return violation(Violation::PrefixMismatch, "leaf step under a prefix");
      if (premises.contains(out.clause))
        return {};
      for (const auto &d : premises)
        if (subsumes(d, out.clause))
          return {};
      return violation(Violation::NotInPremises, to_string(out.clause));
    }
    if (prem.size() != 1)
      return violation(Violation::WrongPremiseCount);
    if (!(prem[0]->prefix == out.prefix))
      return violation(Violation::PrefixMismatch);
    if (!subsumes(prem[0]->clause, out.clause))
      return violation(Violation::NotSubsumed);
    return {};
  }
  case StepRule::Taut: {
    if (!prem.empty())
      return violation(Violation::WrongPremiseCount);
    if (out.prefix.empty())
      return violation(Violation::PrefixMismatch, "conclusion has no rule");
    const MutationRule &rule = out.prefix.back();
    if (rule.trigger != complement(out.clause))
      return violation(Violation::TriggerMismatch);
    if (!trivializes(rule.effect, out.clause))
      return violation(Violation::NotTrivialized);
    return {};
  }
  case StepRule::Intro:
    return verify_intro(out, prem);
  case StepRule::Elim: {
    if (prem.size() != 2)
      return violation(Violation::WrongPremiseCount);
    if (!(prem[0]->prefix == prem[1]->prefix) || !extends(prem[0]->prefix, out.prefix))
      return violation(Violation::PrefixMismatch);
    const MutationRule &rule = prem[0]->prefix.back();
    auto red = reduct_clause(rule.effect, prem[0]->clause);
    if (!red)
      return violation(Violation::TrivializedElim);
    if (prem[1]->clause != *red || out.clause != *red)
      return violation(Violation::ConclusionMismatch);
    return {};
  }
  }
  return violation(Violation::WrongPremiseCount);
}

MutationVerdict verify_proof(const MutationProof &proof, const Formula &premises) {
  MutationVerdict v;
  for (std::size_t i = 0; i < proof.steps.size(); ++i) {
    if (i > 0 && proof.steps[i].id <= proof.steps[i - 1].id) {
      v.violation = Violation::DuplicateId;
      v.failed_step = proof.steps[i].id;
      v.message = to_string(Violation::DuplicateId);
      return v;
    }
    auto sv = verify_step(proof, i, premises);
    if (!sv.ok()) {
      v.violation = sv.violation;
      v.failed_step = proof.steps[i].id;
      v.message = sv.message;
      return v;
    }
  }
  const MutationStep *c = find_step(proof, proof.steps.size(), proof.conclusion);
  if (!c) {
    v.violation = Violation::MissingConclusion;
    v.message = to_string(Violation::MissingConclusion);
    return v;
  }
  v.conclusion = c->conclusion;
  return v;
}

/*------------------------------------------------------------------------*/

namespace {

class Translator {
public:
  Translator(const Formula &f) : db_(f), prop_(db_) {}

  MutationProof run(const Proof &proof, const ForwardResult &checked) {
    if (!checked.accepted)
      throw ProofError("cannot translate a rejected proof");
    if (!db_.empties().empty()) {
      // The input already contains the empty clause.
      out_.conclusion = emit(StepRule::Sub, {}, Clause(), Prefix());
      return std::move(out_);
    }
    for (std::uint32_t i = 0; i < db_.size(); ++i)
      deriv_.push_back(emit(StepRule::Sub, {}, db_.clause(ClauseId{i}), Prefix()));

    std::optional<ClauseId> empty;
    for (const auto &rec : checked.records) {
      const auto &ins = proof.at(rec.instruction);
      if (std::holds_alternative<Deletion>(ins)) {
        for (ClauseId id : rec.removed)
          remove(id);
        continue;
      }
      const auto &intro = std::get<Introduction>(ins);
      if (!rec.certificate)
        throw ProofError("missing certificate for instruction " + std::to_string(rec.instruction));
      introduce(intro, *rec.certificate, rec);
      if (intro.clause.empty())
        empty = rec.introduced;
    }

    if (empty) {
      auto cur = *deriv_[empty->value];
      while (!prefix_.empty()) {
        prefix_ = prefix_.parent();
        cur = emit(StepRule::Elim, {cur, cur}, Clause(), prefix_);
      }
    }
    out_.conclusion = out_.steps.empty() ? 0 : out_.steps.back().id;
    return std::move(out_);
  }

private:
  std::uint64_t emit(StepRule rule, std::vector<std::uint64_t> premises, Clause c, const Prefix &prefix,
                     std::optional<Lit> pivot = std::nullopt) {
    MutationStep st;
    st.id = next_++;
    st.rule = rule;
    st.premises = std::move(premises);
    st.conclusion = {prefix, std::move(c)};
    st.pivot = pivot;
    out_.steps.push_back(std::move(st));
    return out_.steps.back().id;
  }

  void remove(ClauseId id) {
    db_.deactivate(id);
    deriv_[id.value].reset();
  }

  // Subsumption-merge chain for `target` from `premises` under the current prefix.
  std::uint64_t chain(const Clause &target, const std::vector<ClauseId> &premises) {
    std::vector<char> allowed(db_.size(), 0);
    for (ClauseId p : premises)
      allowed[p.value] = 1;
    Trail trail = prop_.propagate(complement(target), ClauseFilter(allowed));
    if (!trail.conflict)
      throw ProofError("recorded premises do not yield a conflict for " + to_string(target));
    Chain ch = extract_chain(trail, db_);
    auto derivation = [&](ClauseId id) {
      if (!deriv_[id.value])
        throw ProofError("premise " + to_string(db_.clause(id)) + " has no derivation");
      return *deriv_[id.value];
    };
    std::uint64_t cur = derivation(ch.premises[0]);
    if (ch.derived[0] != db_.clause(ch.premises[0]))
      cur = emit(StepRule::Sub, {cur}, ch.derived[0], prefix_);
    for (std::size_t i = 1; i < ch.premises.size(); ++i)
      cur = emit(StepRule::Res, {cur, derivation(ch.premises[i])}, ch.derived[i], prefix_, ch.pivots[i - 1]);
    if (ch.derived.back() != target)
      cur = emit(StepRule::Sub, {cur}, target, prefix_);
    return cur;
  }

  ConditionResult condition_for(const RedundancyCertificate &cert, const Clause &c, std::optional<ClauseId> id) {
    for (const auto &entry : cert.conditions)
      if (entry.id == id)
        return entry.result;
    // Not recorded (identity fast path or a RAT-style certificate): decide now.
    const Clause &d = id ? db_.clause(*id) : c;
    auto res = check_condition(prop_, c, cert.witness, d, id);
    if (!res.passed())
      throw ProofError("no redundancy condition holds for " + to_string(d));
    return res;
  }

  void introduce(const Introduction &intro, const RedundancyCertificate &cert, const StepRecord &rec) {
    const Clause &c = intro.clause;
    const Substitution &s = cert.witness;
    std::optional<std::uint64_t> derived;

    if (s.is_identity()) {
      auto res = condition_for(cert, c, std::nullopt);
      derived = chain(c, res.premises);
    } else {
      MutationRule rule{s, complement(c)};
      Prefix next = prefix_.extended(rule);
      std::vector<std::optional<std::uint64_t>> carried(deriv_.size());

      auto own = condition_for(cert, c, std::nullopt);
      switch (own.kind) {
      case ConditionKind::Trivialized:
        derived = emit(StepRule::Taut, {}, c, next);
        break;
      case ConditionKind::EntailedByNegC:
        derived = emit(StepRule::Intro, {}, c, next);
        break;
      case ConditionKind::Rup:
        derived = emit(StepRule::Intro, {chain(*condition_target(c, s, c), own.premises)}, c, next);
        break;
      case ConditionKind::Failed:
        throw ProofError("introduced clause has no passing condition");
      }

      for (ClauseId id : db_.active_ids()) {
        if (std::find(rec.removed.begin(), rec.removed.end(), id) != rec.removed.end())
          continue;
        const Clause &d = db_.clause(id);
        auto res = condition_for(cert, c, id);
        std::vector<std::uint64_t> premises{*deriv_[id.value]};
        if (res.kind == ConditionKind::Rup)
          premises.push_back(chain(*condition_target(c, s, d), res.premises));
        carried[id.value] = emit(StepRule::Intro, std::move(premises), d, next);
      }
      prefix_ = next;
      deriv_ = std::move(carried);
    }

    ClauseId id = db_.add(c);
    if (rec.introduced && *rec.introduced != id)
      throw ProofError("translation replay diverged from the checked proof");
    deriv_.resize(db_.size());
    deriv_[id.value] = derived;
    for (ClauseId d : rec.removed)
      remove(d);
  }

  ClauseDb db_;
  Propagator prop_;
  Prefix prefix_;
  std::vector<std::optional<std::uint64_t>> deriv_;
  MutationProof out_;
  std::uint64_t next_ = 1; // 0 terminates premise lists
};

} // namespace

MutationProof translate_proof(const Formula &f, const Proof &proof, const ForwardResult &checked) {
  return Translator(f).run(proof, checked);
}

MutationProof translate_proof(const Formula &f, const Proof &proof) {
  CheckOptions opt;
  opt.retain_certificates = true;
  auto checked = check_forward(f, proof, opt);
  if (!checked.accepted)
    throw ProofError("proof rejected at instruction " + std::to_string(checked.rejection->instruction) + ": " +
                     checked.rejection->reason);
  return translate_proof(f, proof, checked);
}

/*------------------------------------------------------------------------*/

std::string serialize_mutation_proof(const MutationProof &proof) {
  std::string out;
  for (const auto &st : proof.steps) {
    out += std::to_string(st.id) + " " + to_string(st.rule);
    for (auto p : st.premises)
      out += " " + std::to_string(p);
    out += " 0";
    if (st.pivot)
      out += " " + std::to_string(st.pivot->dimacs());
    out += " | " + prefix_text(st.conclusion.prefix) + " | ";
    for (Lit l : st.conclusion.clause)
      out += std::to_string(l.dimacs()) + " ";
    out += "0\n";
  }
  return out;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
      ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])))
      ++j;
    if (j > i)
      out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T> T number(std::string_view tok, std::size_t line) {
  T v{};
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError(line, "expected a number, got '" + std::string(tok) + "'");
  return v;
}

// Literals up to a terminating 0 starting at toks[pos]; advances pos.
std::vector<Lit> zero_terminated(const std::vector<std::string_view> &toks, std::size_t &pos, std::size_t line) {
  std::vector<Lit> lits;
  for (;;) {
    if (pos >= toks.size())
      throw ParseError(line, "missing terminating 0");
    auto v = number<std::int32_t>(toks[pos++], line);
    if (v == 0)
      return lits;
    lits.emplace_back(v);
  }
}

Prefix parse_prefix(std::string_view text, std::size_t line) {
  Prefix p;
  auto toks = split_ws(text);
  std::size_t pos = 0;
  while (pos < toks.size()) {
    if (toks[pos] != "(" || pos + 1 >= toks.size() || toks[pos + 1] != "s")
      throw ParseError(line, "expected '( s' opening a prefix rule");
    pos += 2;
    std::size_t colon = pos;
    while (colon < toks.size() && toks[colon] != ":")
      ++colon;
    if (colon == toks.size())
      throw ParseError(line, "missing ':' in prefix rule");
    std::string body;
    for (std::size_t k = pos; k < colon; ++k) {
      body += toks[k];
      body += ' ';
    }
    MutationRule rule;
    try {
      rule.effect = parse_witness(body);
    } catch (const ParseError &e) {
      throw ParseError(line, std::string("bad rule effect: ") + e.what());
    }
    pos = colon + 1;
    auto trig = Cube::from(zero_terminated(toks, pos, line));
    if (!trig)
      throw ParseError(line, "contradictory trigger");
    rule.trigger = std::move(*trig);
    if (pos >= toks.size() || toks[pos] != ")")
      throw ParseError(line, "expected ')' closing a prefix rule");
    ++pos;
    p = p.extended(std::move(rule));
  }
  return p;
}

} // namespace

MutationProof parse_mutation_proof(std::string_view text) {
  MutationProof proof;
  std::map<std::string, Prefix, std::less<>> prefixes;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    auto toks0 = split_ws(line);
    if (toks0.empty() || toks0[0][0] == 'c')
      continue;

    auto bar1 = line.find('|');
    auto bar2 = bar1 == std::string_view::npos ? bar1 : line.find('|', bar1 + 1);
    if (bar2 == std::string_view::npos)
      throw ParseError(line_no, "expected '<step> | <prefix> | <clause>'");

    MutationStep st;
    auto head = split_ws(line.substr(0, bar1));
    if (head.size() < 3)
      throw ParseError(line_no, "truncated step header");
    st.id = number<std::uint64_t>(head[0], line_no);
    if (st.id == 0)
      throw ParseError(line_no, "step ids start at 1");
    std::string_view rule = head[1];
    if (rule == "RES")
      st.rule = StepRule::Res;
    else if (rule == "SUB")
      st.rule = StepRule::Sub;
    else if (rule == "TAUT")
      st.rule = StepRule::Taut;
    else if (rule == "INTRO")
      st.rule = StepRule::Intro;
    else if (rule == "ELIM")
      st.rule = StepRule::Elim;
    else
      throw ParseError(line_no, "unknown rule '" + std::string(rule) + "'");
    std::size_t pos = 2;
    for (;;) {
      if (pos >= head.size())
        throw ParseError(line_no, "premise list lacks terminating 0");
      auto p = number<std::uint64_t>(head[pos++], line_no);
      if (p == 0)
        break;
      st.premises.push_back(p);
    }
    if (st.rule == StepRule::Res) {
      if (pos >= head.size())
        throw ParseError(line_no, "RES step lacks a pivot");
      auto l = number<std::int32_t>(head[pos++], line_no);
      if (l == 0)
        throw ParseError(line_no, "invalid pivot 0");
      st.pivot = Lit(l);
    }
    if (pos != head.size())
      throw ParseError(line_no, "trailing tokens in step header");

    std::string key(line.substr(bar1 + 1, bar2 - bar1 - 1));
    auto it = prefixes.find(key);
    if (it == prefixes.end())
      it = prefixes.emplace(key, parse_prefix(key, line_no)).first;
    st.conclusion.prefix = it->second;

    auto tail = split_ws(line.substr(bar2 + 1));
    std::size_t tpos = 0;
    std::vector<std::string_view> tail_vec(tail.begin(), tail.end());
    auto lits = zero_terminated(tail_vec, tpos, line_no);
    if (tpos != tail_vec.size())
      throw ParseError(line_no, "trailing tokens after clause");
    auto c = Clause::from(lits);
    if (!c)
      throw ParseError(line_no, "tautological clause");
    st.conclusion.clause = std::move(*c);
    proof.steps.push_back(std::move(st));
  }
  if (!proof.steps.empty())
    proof.conclusion = proof.steps.back().id;
  return proof;
}

} // namespace wsr
