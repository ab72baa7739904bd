#include "wsr/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace wsr {

Lit::Lit(std::int32_t dimacs) : code_(dimacs) {
  if (dimacs == 0 || dimacs == INT32_MIN)
    throw std::invalid_argument("literal must be a nonzero 32-bit integer");
}

Atom Atom::complement() const {
  switch (kind_) {
  case Kind::Top:
    return bot();
  case Kind::Bot:
    return top();
  case Kind::Literal:
    break;
  }
  return literal(~lit_);
}

std::string to_string(Lit l) { return std::to_string(l.dimacs()); }

std::string to_string(const Atom &a) {
  if (a.is_top())
    return "T";
  if (a.is_bot())
    return "F";
  return to_string(a.lit());
}

/*------------------------------------------------------------------------*/

namespace detail {

bool canonicalize(std::vector<Lit> &lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  // Complementary literals are adjacent in this order.
  for (std::size_t i = 1; i < lits.size(); ++i)
    if (lits[i - 1].var() == lits[i].var())
      return false;
  return true;
}

} // namespace detail

namespace {

bool sorted_contains(std::span<const Lit> lits, Lit l) {
  return std::binary_search(lits.begin(), lits.end(), l);
}

std::string join(std::span<const Lit> lits, char open, char close) {
  std::string s(1, open);
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i)
      s += ' ';
    s += to_string(lits[i]);
  }
  s += close;
  return s;
}

std::vector<Lit> from_ints(std::initializer_list<std::int32_t> ints) {
  std::vector<Lit> lits;
  lits.reserve(ints.size());
  for (auto i : ints)
    lits.emplace_back(i);
  return lits;
}

} // namespace

std::optional<Clause> Clause::from(std::span<const Lit> lits) {
  std::vector<Lit> v(lits.begin(), lits.end());
  if (!detail::canonicalize(v))
    return std::nullopt;
  return Clause(std::move(v));
}

std::optional<Clause> Clause::from_dimacs(std::span<const std::int32_t> lits) {
  std::vector<Lit> v;
  v.reserve(lits.size());
  for (auto i : lits)
    v.emplace_back(i);
  if (!detail::canonicalize(v))
    return std::nullopt;
  return Clause(std::move(v));
}

Clause Clause::of(std::initializer_list<std::int32_t> ints) {
  auto lits = from_ints(ints);
  if (!detail::canonicalize(lits))
    throw std::invalid_argument("tautological clause");
  return Clause(std::move(lits));
}

bool Clause::contains(Lit l) const { return sorted_contains(lits_, l); }

std::optional<Cube> Cube::from(std::span<const Lit> lits) {
  std::vector<Lit> v(lits.begin(), lits.end());
  if (!detail::canonicalize(v))
    return std::nullopt;
  return Cube(std::move(v));
}

Cube Cube::of(std::initializer_list<std::int32_t> ints) {
  auto lits = from_ints(ints);
  if (!detail::canonicalize(lits))
    throw std::invalid_argument("contradictory cube");
  return Cube(std::move(lits));
}

bool Cube::contains(Lit l) const { return sorted_contains(lits_, l); }

Cube complement(const Clause &c) {
  std::vector<Lit> v;
  v.reserve(c.size());
  for (Lit l : c)
    v.push_back(~l);
  std::sort(v.begin(), v.end());
  return Cube(std::move(v));
}

Clause complement(const Cube &q) {
  std::vector<Lit> v;
  v.reserve(q.size());
  for (Lit l : q)
    v.push_back(~l);
  std::sort(v.begin(), v.end());
  return Clause(std::move(v));
}

std::string to_string(const Clause &c) { return join(c.lits(), '[', ']'); }
std::string to_string(const Cube &q) { return join(q.lits(), '<', '>'); }

std::optional<Clause> normalize_clause(std::span<const Lit> lits) { return Clause::from(lits); }

std::optional<Clause> resolve(const Clause &c, const Clause &d, Lit l) {
  if (!c.contains(l) || !d.contains(~l))
    throw PivotError("resolve: " + to_string(l) + " is not a pivot of " + to_string(c) + " and " +
                     to_string(d));
  std::vector<Lit> lits;
  lits.reserve(c.size() + d.size());
  for (Lit k : c)
    if (k != l)
      lits.push_back(k);
  for (Lit k : d)
    if (k != ~l)
      lits.push_back(k);
  return Clause::from(lits);
}

bool subsumes(const Clause &c, const Clause &d) {
  return std::includes(d.begin(), d.end(), c.begin(), c.end());
}

std::optional<Clause> disjoin(const Clause &c, const Clause &d) {
  std::vector<Lit> lits;
  lits.reserve(c.size() + d.size());
  std::merge(c.begin(), c.end(), d.begin(), d.end(), std::back_inserter(lits));
  return Clause::from(lits);
}

bool intersects(const Cube &q, const Clause &c) {
  auto a = q.begin();
  auto b = c.begin();
  while (a != q.end() && b != c.end()) {
    if (*a == *b)
      return true;
    if (*a < *b)
      ++a;
    else
      ++b;
  }
  return false;
}

std::uint32_t max_var(const Clause &c) { return c.empty() ? 0 : c.lits().back().var().index; }

std::size_t ClauseHash::operator()(const Clause &c) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ull ^ c.size();
  for (Lit l : c)
    h = (h ^ static_cast<std::size_t>(static_cast<std::uint32_t>(l.dimacs()))) * 0x100000001b3ull;
  return h;
}

/*------------------------------------------------------------------------*/

Formula::Formula(std::initializer_list<Clause> clauses) {
  for (const auto &c : clauses)
    add(c);
}

bool Formula::add(Clause c) {
  if (!index_.insert(c).second)
    return false;
  clauses_.push_back(std::move(c));
  return true;
}

std::uint32_t Formula::max_var() const {
  std::uint32_t m = 0;
  for (const auto &c : clauses_)
    m = std::max(m, wsr::max_var(c));
  return m;
}

std::vector<Var> Formula::variables() const {
  std::vector<Var> vars;
  for (const auto &c : clauses_)
    for (Lit l : c)
      vars.push_back(l.var());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

bool operator==(const Formula &a, const Formula &b) {
  if (a.size() != b.size())
    return false;
  return std::all_of(a.begin(), a.end(), [&](const Clause &c) { return b.contains(c); });
}

/*------------------------------------------------------------------------*/

ClauseDb::ClauseDb(const Formula &f) {
  for (const auto &c : f)
    add(c);
}

ClauseId ClauseDb::add(Clause c, bool active) {
  ClauseId id{static_cast<std::uint32_t>(entries_.size())};
  max_var_ = std::max(max_var_, wsr::max_var(c));
  content_[c].push_back(id);
  entries_.push_back({std::move(c), false});
  if (active)
    activate(id);
  return id;
}

namespace {

void sorted_insert(std::vector<ClauseId> &v, ClauseId id) {
  if (v.empty() || v.back() < id)
    v.push_back(id);
  else
    v.insert(std::lower_bound(v.begin(), v.end(), id), id);
}

void sorted_erase(std::vector<ClauseId> &v, ClauseId id) {
  auto it = std::lower_bound(v.begin(), v.end(), id);
  if (it != v.end() && *it == id)
    v.erase(it);
}

} // namespace

void ClauseDb::link(ClauseId id) {
  const Clause &c = entries_[id.value].clause;
  if (c.empty())
    sorted_insert(empties_, id);
  else if (c.size() == 1)
    sorted_insert(units_, id);
  for (Lit l : c) {
    if (occurs_.size() <= l.index())
      occurs_.resize(l.index() + 2);
    sorted_insert(occurs_[l.index()], id);
  }
}

void ClauseDb::unlink(ClauseId id) {
  const Clause &c = entries_[id.value].clause;
  if (c.empty())
    sorted_erase(empties_, id);
  else if (c.size() == 1)
    sorted_erase(units_, id);
  for (Lit l : c)
    sorted_erase(occurs_[l.index()], id);
}

void ClauseDb::activate(ClauseId id) {
  auto &e = entries_.at(id.value);
  if (e.active)
    return;
  e.active = true;
  ++active_count_;
  link(id);
}

void ClauseDb::deactivate(ClauseId id) {
  auto &e = entries_.at(id.value);
  if (!e.active)
    return;
  e.active = false;
  --active_count_;
  unlink(id);
}

std::optional<ClauseId> ClauseDb::find_active(const Clause &c) const {
  auto it = content_.find(c);
  if (it == content_.end())
    return std::nullopt;
  for (ClauseId id : it->second)
    if (entries_[id.value].active)
      return id;
  return std::nullopt;
}

std::vector<ClauseId> ClauseDb::active_copies(const Clause &c) const {
  std::vector<ClauseId> ids;
  auto it = content_.find(c);
  if (it == content_.end())
    return ids;
  for (ClauseId id : it->second)
    if (entries_[id.value].active)
      ids.push_back(id);
  return ids;
}

std::span<const ClauseId> ClauseDb::occurrences(Lit l) const {
  if (l.index() >= occurs_.size())
    return {};
  return occurs_[l.index()];
}

std::vector<ClauseId> ClauseDb::active_ids() const {
  std::vector<ClauseId> ids;
  ids.reserve(active_count_);
  for (std::uint32_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].active)
      ids.push_back(ClauseId{i});
  return ids;
}

/*------------------------------------------------------------------------*/

Assignment::Assignment(std::span<const Var> universe) : universe_(universe.begin(), universe.end()) {
  std::sort(universe_.begin(), universe_.end());
  universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());
  std::uint32_t top = universe_.empty() ? 0 : universe_.back().index;
  values_.assign(top + 1, -1);
  for (Var v : universe_)
    values_[v.index] = 0;
}

bool Assignment::in_universe(Var v) const { return v.index < values_.size() && values_[v.index] >= 0; }

void Assignment::set(Var v, bool value) {
  if (!in_universe(v))
    throw UniverseError("variable " + std::to_string(v.index) + " outside the model's universe");
  values_[v.index] = value ? 1 : 0;
}

bool Assignment::value(Var v) const {
  if (!in_universe(v))
    throw UniverseError("variable " + std::to_string(v.index) + " outside the model's universe");
  return values_[v.index] == 1;
}

bool Assignment::value(const Atom &a) const {
  if (a.is_top())
    return true;
  if (a.is_bot())
    return false;
  return value(a.lit());
}

bool operator==(const Assignment &a, const Assignment &b) {
  return a.universe_ == b.universe_ && a.values_ == b.values_;
}

bool eval(const Assignment &i, const Clause &c) {
  bool sat = false;
  // Every variable is checked so out-of-universe literals always raise.
  for (Lit l : c)
    sat = i.value(l) || sat;
  return sat;
}

bool eval(const Assignment &i, const Cube &q) {
  bool sat = true;
  for (Lit l : q)
    sat = i.value(l) && sat;
  return sat;
}

bool eval(const Assignment &i, const Formula &f) {
  bool sat = true;
  for (const auto &c : f)
    sat = eval(i, c) && sat;
  return sat;
}

/*------------------------------------------------------------------------*/

ModelRange::iterator::iterator(const std::vector<Var> *universe, std::uint64_t counter)
    : universe_(universe), counter_(counter), current_(*universe) {
  if (counter_ < (std::uint64_t{1} << universe_->size()))
    for (std::size_t b = 0; b < universe_->size(); ++b)
      current_.set((*universe_)[b], (counter_ >> b) & 1);
}

ModelRange::iterator &ModelRange::iterator::operator++() {
  ++counter_;
  if (counter_ < (std::uint64_t{1} << universe_->size())) {
    // Only the bits that flipped need updating.
    std::uint64_t changed = counter_ ^ (counter_ - 1);
    for (std::size_t b = 0; b < universe_->size() && (changed >> b); ++b)
      if ((changed >> b) & 1)
        current_.set((*universe_)[b], (counter_ >> b) & 1);
  }
  return *this;
}

ModelRange::ModelRange(std::vector<Var> universe, const OracleOptions &options)
    : universe_(std::move(universe)) {
  std::sort(universe_.begin(), universe_.end());
  universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());
  if (universe_.size() > options.max_vars || universe_.size() > 62)
    throw OracleCapError("model enumeration over " + std::to_string(universe_.size()) +
                         " variables exceeds the cap of " + std::to_string(options.max_vars));
}

ModelRange all_models(std::vector<Var> universe, const OracleOptions &options) {
  return ModelRange(std::move(universe), options);
}

namespace {

std::vector<Var> union_vars(const Formula &f, const Clause *c, const Formula *g) {
  auto vars = f.variables();
  if (c)
    for (Lit l : *c)
      vars.push_back(l.var());
  if (g)
    for (Var v : g->variables())
      vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

} // namespace

bool oracle_sat(const Formula &f, const OracleOptions &options) {
  for (const auto &i : all_models(f.variables(), options))
    if (eval(i, f))
      return true;
  return false;
}

bool oracle_entails(const Formula &f, const Clause &c, const OracleOptions &options) {
  for (const auto &i : all_models(union_vars(f, &c, nullptr), options))
    if (eval(i, f) && !eval(i, c))
      return false;
  return true;
}

bool oracle_sat_equiv(const Formula &f, const Formula &g, const OracleOptions &options) {
  ModelRange joint(union_vars(f, nullptr, &g), options); // enforces the cap on the union
  bool f_sat = false;
  bool g_sat = false;
  for (const auto &i : joint) {
    f_sat = f_sat || eval(i, f);
    g_sat = g_sat || eval(i, g);
    if (f_sat && g_sat)
      break;
  }
  return f_sat == g_sat;
}

} // namespace wsr
