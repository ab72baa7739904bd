#include <doctest.h>

#include "test_support.hpp"

#include "wsr/checker.hpp"
#include "wsr/phpgen.hpp"

using namespace wsrtest;

namespace {

CheckOptions with_mode(Mode m) {
  CheckOptions o;
  o.mode = m;
  return o;
}

CheckOptions with_strategy(Strategy s) {
  CheckOptions o;
  o.strategy = s;
  return o;
}

std::vector<std::uint32_t> id_values(const std::vector<ClauseId> &ids) {
  std::vector<std::uint32_t> v;
  for (ClauseId id : ids)
    v.push_back(id.value);
  return v;
}

std::vector<std::uint32_t> iota_upto(std::uint32_t n) {
  std::vector<std::uint32_t> v(n);
  for (std::uint32_t k = 0; k < n; ++k)
    v[k] = k;
  return v;
}

bool is_subset(const std::vector<ClauseId> &a, const std::vector<ClauseId> &b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace

TEST_CASE("mode and strategy names") {
  CHECK(parse_mode("pr") == Mode::Pr);
  CHECK_FALSE(parse_mode("drat").has_value());
  CHECK(parse_strategy("sr-fixpoint") == Strategy::SrFixpoint);
  CHECK(parse_strategy("wsr") == Strategy::WsrDelta);
  CHECK(std::string(to_string(Mode::Wsr)) == "wsr");
}

TEST_CASE("lemma example: accepted as WSR, rejected as SR") {
  auto ex = lemma_example();
  auto w = check_forward(ex.formula, ex.proof);
  CHECK(w.accepted);
  CHECK_FALSE(w.refutation);
  CHECK(w.db.active(*w.db.find_active(ex.c)));
  CHECK_FALSE(w.db.find_active(ex.l1).has_value());

  auto s = check_forward(ex.formula, ex.proof, with_mode(Mode::Sr));
  CHECK_FALSE(s.accepted);
  REQUIRE(s.rejection);
  CHECK(s.rejection->instruction == 2);
  CHECK(s.rejection->target == Clause::of({-1, 5, 7}));
}

TEST_CASE("core example: strategy cores") {
  auto ex = mus_example();
  auto w = check_backward(ex.formula, ex.proof, with_strategy(Strategy::WsrDelta));
  REQUIRE(w.accepted);
  CHECK(id_values(w.core_ids) == iota_upto(18));
  CHECK(w.core == ex.part(true, true, false));
  auto s = check_backward(ex.formula, ex.proof, with_strategy(Strategy::SrFixpoint));
  REQUIRE(s.accepted);
  CHECK(id_values(s.core_ids) == iota_upto(19));

  // The WSR step of the trimmed proof carries exactly Δ.
  const auto &first = std::get<Introduction>(w.trimmed.front());
  CHECK(first.clause == ex.c);
  std::vector<Clause> delta = first.modulo;
  std::sort(delta.begin(), delta.end());
  auto expected = ex.delta;
  std::sort(expected.begin(), expected.end());
  CHECK(delta == expected);

  // Trimmed proofs re-check against their cores.
  CHECK(check_forward(w.core, w.trimmed).refutation);
  CHECK(check_forward(s.core, s.trimmed).refutation);
  CHECK(check_forward(s.core, s.trimmed, with_mode(Mode::Sr)).refutation);
}

TEST_CASE("core example: marking before the WSR step is M plus C") {
  auto ex = mus_example();
  CheckOptions o;
  o.record_marking = true;
  auto r = check_backward(ex.formula, ex.proof, o);
  REQUIRE(r.accepted);
  REQUIRE(r.marking.size() >= 2);
  // Snapshots are in backward order; the one before the WSR step is second to last.
  const auto &before = r.marking[r.marking.size() - 2].marked;
  std::vector<ClauseId> m_ids;
  for (std::uint32_t k = 0; k < 13; ++k)
    m_ids.push_back(ClauseId{k});
  CHECK(is_subset(m_ids, before));
  CHECK(std::none_of(before.begin(), before.end(), [](ClauseId id) { return id.value >= 13 && id.value < 19; }));
}

TEST_CASE("pigeonhole proofs backward") {
  for (std::uint32_t n = 2; n <= 6; ++n) {
    auto f = php_formula(n);
    for (auto strat : {Strategy::WsrDelta, Strategy::SrFixpoint}) {
      auto r = check_backward(f, php_wsr_proof(n), with_strategy(strat));
      REQUIRE(r.accepted);
      CHECK(r.core_ids.size() == f.size());
      auto again = check_forward(r.core, r.trimmed);
      CHECK(again.refutation);
      if (n <= 4)
        CHECK_FALSE(oracle_sat(r.core));
    }
  }
}

TEST_CASE("input containing the empty clause") {
  Formula f{Clause::of({1}), Clause()};
  auto b = check_backward(f, {});
  CHECK(b.accepted);
  CHECK(b.core == Formula{Clause()});
  CHECK(check_backward(php_formula(1), php_wsr_proof(1)).accepted);
}

TEST_CASE("backward needs the empty clause") {
  auto ex = lemma_example();
  auto b = check_backward(ex.formula, ex.proof);
  CHECK_FALSE(b.accepted);
  REQUIRE(b.rejection);
}

TEST_CASE("unused instructions are skipped and leave the core smaller") {
  Formula f{Clause::of({1}), Clause::of({-1}), Clause::of({2, 3})};
  auto p = parse_wsr_proof("2 3 1 0\n0\n");
  auto b = check_backward(f, p);
  REQUIRE(b.accepted);
  CHECK(b.core.size() == 2);
  CHECK(b.stats.skipped == 1);
  CHECK(b.trimmed.size() == 1);
}

TEST_CASE("absent deletions and modulo clauses are warnings") {
  Formula f{Clause::of({1}), Clause::of({-1})};
  auto r = check_forward(f, parse_wsr_proof("d 5 0\n2 0 m 7 0\n0\n"));
  CHECK(r.accepted);
  CHECK(r.warnings.size() == 2);
}

TEST_CASE("rejections name the instruction") {
  Formula f{Clause::of({1, 2})};
  auto r = check_forward(f, parse_wsr_proof("1 0\n"));
  CHECK_FALSE(r.accepted);
  REQUIRE(r.rejection);
  CHECK(r.rejection->instruction == 0);
  CHECK(r.rejection->target == Clause::of({1}));
}

TEST_CASE("random refutations: agreement, strategies and soundness") {
  Rng rng(101);
  for (int k = 0; k < 60; ++k) {
    auto ref = k % 2 ? random_refutation(rng, 7, 24) : random_wsr_refutation(rng, 7, 24, 2);
    auto fw = check_forward(ref.formula, ref.proof);
    REQUIRE(fw.accepted);
    CHECK(fw.refutation);
    CHECK_FALSE(oracle_sat(ref.formula));

    CheckOptions a = with_strategy(Strategy::WsrDelta), b = with_strategy(Strategy::SrFixpoint);
    a.record_marking = b.record_marking = true;
    auto wd = check_backward(ref.formula, ref.proof, a);
    auto sf = check_backward(ref.formula, ref.proof, b);
    REQUIRE(wd.accepted);
    REQUIRE(sf.accepted);
    CHECK(is_subset(wd.core_ids, sf.core_ids));
    CHECK_FALSE(oracle_sat(wd.core));
    CHECK(check_forward(wd.core, wd.trimmed).refutation);
    CHECK(check_forward(sf.core, sf.trimmed).refutation);

    // Marking only shrinks by the clause being validated.
    for (std::size_t s = 1; s < wd.marking.size(); ++s) {
      const auto &prev = wd.marking[s - 1].marked, &cur = wd.marking[s].marked;
      std::vector<ClauseId> lost;
      std::set_difference(prev.begin(), prev.end(), cur.begin(), cur.end(), std::back_inserter(lost));
      CHECK(lost.size() <= 1);
    }
    if (k % 2) {
      CHECK(wd.core_ids == sf.core_ids);
      CHECK(check_forward(ref.formula, ref.proof, with_mode(Mode::Rup)).accepted);
    }
  }
}

TEST_CASE("strategy dominance per step on shared instruction streams") {
  Rng rng(103);
  int compared = 0;
  for (int k = 0; k < 40; ++k) {
    auto ref = random_wsr_refutation(rng, 6, 20, 3);
    CheckOptions a = with_strategy(Strategy::WsrDelta), b = with_strategy(Strategy::SrFixpoint);
    a.record_marking = b.record_marking = true;
    auto wd = check_backward(ref.formula, ref.proof, a);
    auto sf = check_backward(ref.formula, ref.proof, b);
    REQUIRE(wd.accepted);
    REQUIRE(sf.accepted);
    // Every step WsrDelta validates is validated by SrFixpoint as well.
    std::size_t j = 0;
    for (const auto &snap : wd.marking) {
      while (j < sf.marking.size() && sf.marking[j].instruction != snap.instruction)
        ++j;
      REQUIRE(j < sf.marking.size());
      CHECK(is_subset(snap.marked, sf.marking[j].marked));
      ++compared;
    }
  }
  CHECK(compared > 100);
}

TEST_CASE("the RUP mode matches identity-only WSR checking") {
  Rng rng(107);
  for (int k = 0; k < 40; ++k) {
    auto ref = random_refutation(rng, 6, 18);
    auto proof = ref.proof;
    if (k % 2 && proof.size() > 1)
      proof.erase(proof.begin() + static_cast<std::ptrdiff_t>(rng() % (proof.size() - 1)));
    CHECK(check_forward(ref.formula, proof, with_mode(Mode::Rup)).accepted ==
          check_forward(ref.formula, proof).accepted);
  }
  auto ex = lemma_example();
  CHECK_FALSE(check_forward(ex.formula, ex.proof, with_mode(Mode::Rup)).accepted);
}

TEST_CASE("mode ladder on pigeonhole PR proofs") {
  auto f = php_formula(4);
  auto p = php_pr_proof(4);
  CHECK_FALSE(check_forward(f, p, with_mode(Mode::Rup)).accepted);
  CHECK_FALSE(check_forward(f, p, with_mode(Mode::Rat)).accepted);
  CHECK(check_forward(f, p, with_mode(Mode::Pr)).accepted);
  CHECK(check_forward(f, p, with_mode(Mode::Sr)).accepted);
  CHECK(check_forward(f, p, with_mode(Mode::Wsr)).accepted);
  auto w = php_wsr_proof(4);
  CHECK_FALSE(check_forward(f, w, with_mode(Mode::Pr)).accepted);
  CHECK_FALSE(check_forward(f, w, with_mode(Mode::Sr)).accepted);
}

TEST_CASE("mode ladder on random RAT steps") {
  Rng rng(109);
  int accepted = 0;
  for (int k = 0; k < 400; ++k) {
    auto f = random_formula(rng, 5, 7, 2, 3);
    auto c = random_clause(rng, 5, 1, 3);
    Lit l = c.lits()[0];
    Substitution s;
    s.assign(l.var(), Atom::constant(!l.is_negative()));
    Proof p{Introduction{c, s, {}}};
    bool rat = check_forward(f, p, with_mode(Mode::Rat)).accepted;
    bool pr = check_forward(f, p, with_mode(Mode::Pr)).accepted;
    bool sr = check_forward(f, p, with_mode(Mode::Sr)).accepted;
    bool wsr = check_forward(f, p, with_mode(Mode::Wsr)).accepted;
    CHECK((!rat || pr));
    CHECK((!pr || sr));
    CHECK((!sr || wsr));
    accepted += rat;
  }
  CHECK(accepted > 30);
}

TEST_CASE("RAT fallback for identity witnesses") {
  // [1] is not RUP but is RAT on 1 (no clause contains -1).
  Formula f{Clause::of({1, 2}), Clause::of({2, 3})};
  auto p = parse_wsr_proof("1 0\n");
  CHECK(check_forward(f, p, with_mode(Mode::Rat)).accepted);
  CHECK_FALSE(check_forward(f, p, with_mode(Mode::Rup)).accepted);
}

TEST_CASE("parallel checking gives the same outcome") {
  CheckOptions par;
  par.jobs = 4;
  auto f = php_formula(7);
  auto a = check_forward(f, php_wsr_proof(7));
  auto b = check_forward(f, php_wsr_proof(7), par);
  CHECK(a.accepted == b.accepted);
  auto ex = lemma_example();
  par.mode = Mode::Sr;
  auto s = check_forward(ex.formula, ex.proof, par);
  CHECK(s.rejection->target == Clause::of({-1, 5, 7}));
}

TEST_CASE("observer sees every accepted introduction") {
  auto ex = lemma_example();
  CheckOptions o;
  std::size_t calls = 0, last_delta = 0;
  o.on_accept = [&](const ClauseDb &, const Introduction &, std::span<const ClauseId> delta) {
    ++calls;
    last_delta = delta.size();
  };
  check_forward(ex.formula, ex.proof, o);
  CHECK(calls == 3);
  CHECK(last_delta == 2);
}

TEST_CASE("statistics") {
  auto r = check_backward(php_formula(4), php_wsr_proof(4));
  CHECK(r.stats.core_size == 22);
  CHECK(r.stats.trimmed_length == r.trimmed.size());
  CHECK(r.stats.rup_checks > 0);
  auto text = format_stats(r.stats);
  CHECK(text.find("core_size 22") != std::string::npos);
}
