#include <doctest.h>

#include "test_support.hpp"

#include "wsr/propagation.hpp"

using namespace wsrtest;

namespace {

std::vector<Clause> clauses_of(const ClauseDb &db, std::span<const ClauseId> ids) {
  std::vector<Clause> out;
  for (ClauseId id : ids)
    out.push_back(db.clause(id));
  return out;
}

} // namespace

TEST_CASE("simple RUP") {
  ClauseDb db(Formula{Clause::of({1, 2}), Clause::of({-2, 3}), Clause::of({-3})});
  auto r = is_rup(db, Clause::of({1}));
  CHECK(r.rup);
  CHECK(r.premises.size() == 3);
  CHECK_FALSE(is_rup(db, Clause::of({2})).rup);
  CHECK_FALSE(is_rup(db, Clause::of({-1})).rup);
}

TEST_CASE("empty clause and units") {
  ClauseDb db(Formula{Clause::of({1})});
  CHECK(is_rup(db, Clause::of({1})).rup);
  CHECK_FALSE(is_rup(db, Clause()).rup);
  db.add(Clause::of({-1}));
  auto r = is_rup(db, Clause());
  CHECK(r.rup);
  CHECK(r.premises.size() == 2);
  ClauseDb e(Formula{Clause(), Clause::of({2})});
  CHECK(is_rup(e, Clause::of({3})).premises == std::vector<ClauseId>{ClauseId{0}});
}

TEST_CASE("agrees with the naive propagator on random instances") {
  Rng rng(1);
  for (int k = 0; k < 500; ++k) {
    auto f = random_formula(rng, 8, 14, 1, 3);
    ClauseDb db(f);
    Propagator p(db);
    auto c = random_clause(rng, 8, 0, 3);
    auto r = p.is_rup(c);
    REQUIRE(r.rup == naive_rup(f, c));
    if (!r.rup)
      continue;
    CHECK(std::is_sorted(r.premises.begin(), r.premises.end()));
    // The reason cone alone suffices.
    CHECK(naive_rup(clauses_of(db, r.premises), c));
    auto trail = p.propagate(complement(c));
    auto chain = extract_chain(trail, db);
    CHECK(valid_chain(chain, db));
    CHECK(subsumes(chain.derived.back(), c));
  }
}

TEST_CASE("results do not depend on earlier queries") {
  Rng rng(2);
  auto f = random_formula(rng, 7, 12, 1, 3);
  ClauseDb db(f);
  std::vector<Clause> queries;
  for (int k = 0; k < 40; ++k)
    queries.push_back(random_clause(rng, 7, 0, 3));
  Propagator shared(db);
  for (const auto &q : queries) {
    Propagator fresh(db);
    auto a = shared.is_rup(q);
    auto b = fresh.is_rup(q);
    CHECK(a.rup == b.rup);
    CHECK(a.premises == b.premises);
  }
}

TEST_CASE("filters restrict the usable clauses") {
  ClauseDb db(Formula{Clause::of({1, 2}), Clause::of({-2}), Clause::of({-1, 3})});
  std::vector<char> allowed{1, 0, 1};
  CHECK(is_rup(db, Clause::of({1})).rup);
  CHECK_FALSE(is_rup(db, Clause::of({1}), ClauseFilter(allowed)).rup);
  std::vector<char> none;
  CHECK_FALSE(is_rup(db, Clause::of({3}), ClauseFilter(none)).rup);
}

TEST_CASE("inactive clauses are ignored") {
  ClauseDb db(Formula{Clause::of({1}), Clause::of({-1, 2})});
  CHECK(is_rup(db, Clause::of({2})).rup);
  db.deactivate(ClauseId{0});
  CHECK_FALSE(is_rup(db, Clause::of({2})).rup);
}

TEST_CASE("the smallest-id pending clause propagates first") {
  // Both [-1 5] (id 3) and [-3 5] (id 1) can propagate 5; the lower id wins.
  ClauseDb db(Formula{Clause::of({-1, 3}), Clause::of({-3, 5}), Clause::of({-5, -6}), Clause::of({-1, 5}),
                      Clause::of({-1, 6})});
  Propagator p(db);
  auto trail = p.propagate(Cube::of({1}));
  REQUIRE(trail.conflict);
  CHECK(trail.entries[1].reason == ClauseId{0});
  CHECK(trail.entries[2].reason == ClauseId{1});
  auto prem = p.premises(trail);
  CHECK(std::find(prem.begin(), prem.end(), ClauseId{3}) == prem.end());
}

TEST_CASE("the M-clause condition of the core example avoids the gamma clause") {
  auto ex = mus_example();
  ClauseDb db(ex.formula);
  // C ∨ [c ¬x ¬z]|σ = [x ¬u c ¬z]
  auto r = is_rup(db, Clause::of({1, -2, 5, -9}));
  REQUIRE(r.rup);
  CHECK(std::find(r.premises.begin(), r.premises.end(), ClauseId{18}) == r.premises.end());
  CHECK(std::find(r.premises.begin(), r.premises.end(), ClauseId{17}) != r.premises.end());
}

TEST_CASE("extract_chain rejects a conflict-free trail") {
  ClauseDb db(Formula{Clause::of({1, 2})});
  Propagator p(db);
  CHECK_THROWS_AS(extract_chain(p.propagate(Cube::of({-1})), db), ProofError);
}

TEST_CASE("query counter") {
  ClauseDb db(Formula{Clause::of({1})});
  Propagator p(db);
  p.is_rup(Clause::of({1}));
  p.is_rup(Clause::of({2}));
  CHECK(p.queries() == 2);
}
