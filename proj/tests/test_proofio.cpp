#include <doctest.h>

#include "test_support.hpp"

#include "wsr/checker.hpp"
#include "wsr/phpgen.hpp"

using namespace wsrtest;

namespace {

const Introduction &intro(const Proof &p, std::size_t k) { return std::get<Introduction>(p.at(k)); }

} // namespace

TEST_CASE("DIMACS parsing") {
  auto d = parse_dimacs("c hello\np cnf 2 1\n1 -2 0\n");
  CHECK(d.num_vars == 2);
  CHECK(d.formula == Formula{Clause::of({1, -2})});
  CHECK(parse_dimacs("p cnf 3 2\n1 2\n 0 -3 0\n").formula.size() == 2);
  CHECK(parse_dimacs("p cnf 0 0\n").formula.empty());
}

TEST_CASE("DIMACS errors") {
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n1 -1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p dnf 2 1\n1 2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 x 0\n"), ParseError);
  try {
    parse_dimacs("p cnf 2 1\n\n1 -1 0\n");
    FAIL("no error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("WSR proof grammar") {
  auto p = parse_wsr_proof("0\n");
  REQUIRE(p.size() == 1);
  CHECK(intro(p, 0).clause.empty());
  CHECK(intro(p, 0).witness.is_identity());

  p = parse_wsr_proof("1 -2 0 s 1 3 0 0\n");
  Substitution s;
  s.assign(Var{1}, Atom::top());
  s.assign(Var{3}, Atom::top());
  CHECK(intro(p, 0) == Introduction{Clause::of({1, -2}), s, {}});

  p = parse_wsr_proof("5 0 s 5 0 6 7 7 6 0 m -1 6 2 0\n");
  auto ex = lemma_example();
  CHECK(intro(p, 0) == Introduction{ex.c, ex.sigma, {ex.l1}});

  p = parse_wsr_proof("c comment\nd 1 2 0\n-3 0 s -4 0 0 m 1 2 0 m 3 0\n");
  REQUIRE(p.size() == 2);
  CHECK(std::get<Deletion>(p[0]).clause == Clause::of({1, 2}));
  Substitution t;
  t.assign(Var{4}, Atom::bot());
  CHECK(intro(p, 1) == Introduction{Clause::of({-3}), t, {Clause::of({1, 2}), Clause::of({3})}});
  CHECK(parse_wsr_proof("").empty());
}

TEST_CASE("WSR proof errors") {
  CHECK_THROWS_AS(parse_wsr_proof("1 0 s 1 0 1 2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_wsr_proof("1 0 s 1 -1 0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_wsr_proof("1 0 s 0 2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_wsr_proof("1 -1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_wsr_proof("1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_wsr_proof("1 0 m 2 0 s 1 0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_wsr_proof("1 0 m 2 -2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_wsr_proof("d 1 0 s 1 0 0\n"), ParseError);
}

TEST_CASE("DPR-style lines") {
  auto p = parse_dpr_proof("1 2 1 -3 0\n4 0\nd 1 2 0\n");
  REQUIRE(p.size() == 3);
  CHECK(intro(p, 0).clause == Clause::of({1, 2}));
  CHECK(*to_cube(intro(p, 0).witness) == Cube::of({1, -3}));
  CHECK(intro(p, 1).witness.is_identity());
  CHECK(std::holds_alternative<Deletion>(p[2]));
}

TEST_CASE("witness text") {
  Substitution s;
  s.assign(Var{2}, Atom::bot());
  s.assign(Var{3}, Atom::literal(Lit(-5)));
  auto text = serialize_witness(s);
  CHECK(text == "-2 0 3 -5 0");
  CHECK(parse_witness(text) == s);
}

TEST_CASE("round trips") {
  for (std::uint32_t n = 1; n <= 6; ++n) {
    auto f = php_formula(n);
    CHECK(parse_dimacs(serialize_dimacs(f)).formula == f);
    auto p = php_wsr_proof(n);
    CHECK(parse_wsr_proof(serialize_proof(p)) == p);
    auto q = php_pr_proof(n);
    CHECK(parse_wsr_proof(serialize_proof(q)) == q);
  }
  auto ex = mus_example();
  CHECK(parse_wsr_proof(serialize_proof(ex.proof)) == ex.proof);
  auto lx = lemma_example();
  CHECK(parse_wsr_proof(serialize_proof(lx.proof)) == lx.proof);
  CHECK(serialize_proof({}).empty());

  Rng rng(7);
  for (int k = 0; k < 200; ++k) {
    Proof p;
    for (int j = 0; j < 5; ++j) {
      if (rng() % 4 == 0) {
        p.push_back(Deletion{random_clause(rng, 9, 0, 4)});
        continue;
      }
      std::vector<Clause> delta;
      for (std::size_t d = rng() % 3; d > 0; --d)
        delta.push_back(random_clause(rng, 9, 0, 3));
      p.push_back(Introduction{random_clause(rng, 9, 0, 4), random_substitution(rng, 9, 0.4), delta});
    }
    CHECK(parse_wsr_proof(serialize_proof(p)) == p);
  }
}

TEST_CASE("core of the example serializes all eighteen clauses") {
  auto ex = mus_example();
  auto r = check_backward(ex.formula, ex.proof);
  REQUIRE(r.accepted);
  auto text = serialize_core(r.core, 9);
  auto back = parse_dimacs(text);
  CHECK(back.formula.size() == 18);
  CHECK(back.declared_clauses == 18);
  CHECK(back.formula == ex.part(true, true, false));
  // Input order is preserved.
  CHECK(back.formula.clauses()[0] == ex.m[0]);
  CHECK(back.formula.clauses()[17] == ex.delta[4]);
}

TEST_CASE("counting introductions") {
  CHECK(count_introductions(parse_wsr_proof("1 0\nd 1 0\n0\n")) == 2);
}

TEST_CASE("files") {
  auto dir = scratch_dir("io");
  auto path = (dir / "x.txt").string();
  write_file(path, "abc");
  CHECK(read_file(path) == "abc");
  CHECK_THROWS(read_file((dir / "missing").string()));
  std::filesystem::remove_all(dir);
}
