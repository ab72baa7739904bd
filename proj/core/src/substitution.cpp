#include "wsr/substitution.hpp"

#include <algorithm>

namespace wsr {

namespace {

bool is_self(Var v, const Atom &a) { return a.is_literal() && a.lit() == Lit::positive(v); }

const Substitution::Entry *find_entry(std::span<const Substitution::Entry> entries, Var v) {
  auto it = std::lower_bound(entries.begin(), entries.end(), v,
                             [](const Substitution::Entry &e, Var x) { return e.first < x; });
  return it != entries.end() && it->first == v ? &*it : nullptr;
}

} // namespace

void Substitution::assign(Var v, Atom image) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                             [](const Entry &e, Var x) { return e.first < x; });
  bool present = it != entries_.end() && it->first == v;
  if (is_self(v, image)) {
    if (present)
      entries_.erase(it);
    return;
  }
  if (present)
    it->second = image;
  else
    entries_.insert(it, {v, image});
}

bool Substitution::maps(Var v) const {
  return find_entry(entries_, v) != nullptr;
}

Atom Substitution::image(Var v) const {
  if (const auto *e = find_entry(entries_, v))
    return e->second;
  return Atom::literal(Lit::positive(v));
}

Atom Substitution::apply(Lit l) const {
  Atom a = image(l.var());
  return l.is_negative() ? a.complement() : a;
}

bool Substitution::is_cube_like() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Entry &e) { return !e.second.is_literal(); });
}

Atom apply_atom(const Substitution &s, const Atom &a) {
  if (!a.is_literal())
    return a;
  return s.apply(a.lit());
}

Substitution compose(const Substitution &s, const Substitution &t) {
  Substitution r;
  for (const auto &[v, img] : t.entries())
    r.assign(v, apply_atom(s, img));
  for (const auto &[v, img] : s.entries())
    if (!t.maps(v))
      r.assign(v, img);
  return r;
}

namespace {

// Images of the clause's literals with Bot dropped; nullopt if some literal
// maps to Top.
std::optional<std::vector<Lit>> literal_images(const Substitution &s, const Clause &c) {
  std::vector<Lit> images;
  images.reserve(c.size());
  for (Lit l : c) {
    Atom a = s.apply(l);
    if (a.is_top())
      return std::nullopt;
    if (a.is_literal())
      images.push_back(a.lit());
  }
  return images;
}

} // namespace

bool trivializes(const Substitution &s, const Clause &c) { return !reduct_clause(s, c).has_value(); }

std::optional<Clause> reduct_clause(const Substitution &s, const Clause &c) {
  if (s.is_identity())
    return c;
  auto images = literal_images(s, c);
  if (!images)
    return std::nullopt;
  return Clause::from(*images);
}

Formula reduct_formula(const Substitution &s, const Formula &f) {
  Formula r;
  for (const auto &c : f)
    if (auto d = reduct_clause(s, c))
      r.add(std::move(*d));
  return r;
}

Substitution from_cube(const Cube &q) {
  Substitution s;
  for (Lit l : q)
    s.assign(l.var(), Atom::constant(!l.is_negative()));
  return s;
}

std::optional<Cube> to_cube(const Substitution &s) {
  std::vector<Lit> lits;
  for (const auto &[v, img] : s.entries()) {
    if (img.is_literal())
      return std::nullopt;
    lits.push_back(img.is_top() ? Lit::positive(v) : Lit::negative(v));
  }
  return Cube::from(lits);
}

Assignment apply_to_model(const Assignment &i, const Substitution &s) {
  Assignment r = i;
  for (Var v : i.universe())
    r.set(v, i.value(s.image(v)));
  return r;
}

std::string to_string(const Substitution &s) {
  std::string out = "{";
  bool first = true;
  for (const auto &[v, img] : s.entries()) {
    if (!first)
      out += ", ";
    first = false;
    out += std::to_string(v.index) + "->" + to_string(img);
  }
  return out + "}";
}

} // namespace wsr
