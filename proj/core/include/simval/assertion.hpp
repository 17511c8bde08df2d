#ifndef SIMVAL_ASSERTION_HPP
#define SIMVAL_ASSERTION_HPP

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "simval/variable.hpp"

namespace simval {

// Interval constraint on one numeric variable. Endpoints are 64-bit floats
// compared exactly; the set algebra only copies endpoints, it never computes
// new ones. Integer intervals are the exception: they are canonicalized to
// closed integral bounds on construction (exact integer steps), which makes
// emptiness and adjacency decidable without tolerance.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_open = false;

  friend bool operator==(const Interval&, const Interval&) = default;
};

// Allowed-label subset for an enumeration/boolean variable; sorted, unique.
using LabelSet = std::vector<std::string>;

// Constraint on a single variable.
using AtomConstraint = std::variant<Interval, LabelSet>;

// Conjunction of per-variable atoms. Variables absent from the map are
// unconstrained (full declared domain). Inside an AssertionSet every box is
// kept normalized: atoms clamped to the declared domain, no empty atom, no
// atom equal to the full domain.
using Box = std::map<std::string, AtomConstraint>;

// An exact set of valuations over an alphabet, stored as a finite union of
// boxes. Closed under union, intersection and complement relative to the
// declared-domain universe; membership, inclusion and emptiness are decided
// exactly. Equality of sets is semantic (mutual inclusion), never syntactic.
//
// All values are immutable after construction and every operation is a pure
// function, so instances may be shared freely across threads.
class AssertionSet {
public:
  AssertionSet() = default;  // the empty set over the empty alphabet

  static AssertionSet empty(Alphabet alphabet);
  static AssertionSet universe(Alphabet alphabet);
  static AssertionSet from_boxes(Alphabet alphabet, std::vector<Box> boxes);
  static AssertionSet single_atom(Alphabet alphabet, const std::string& variable,
                                  AtomConstraint atom);

  const Alphabet& alphabet() const { return alphabet_; }

  // Normalized union-of-boxes representation: boxes are canonically ordered,
  // none is empty, none is subsumed by another.
  const std::vector<Box>& boxes() const { return boxes_; }

  // Exact membership. The valuation must cover the alphabet exactly
  // (MissingVariable / UnknownVariable) and stay inside declared domains
  // (DomainViolation).
  bool contains(const Valuation& v) const;

  // Membership for a valuation given as values aligned with alphabet().vars()
  // order. Values are assumed kind-correct and inside declared domains.
  bool contains_aligned(std::span<const Value> values) const;

  AssertionSet unite(const AssertionSet& other) const;      // AlphabetMismatch
  AssertionSet intersect(const AssertionSet& other) const;  // AlphabetMismatch

  // Complement relative to the declared-domain universe. Intersections and
  // complements can blow up combinatorially; eager pruning, subsumption, and
  // adjacency merging keep it tame, but the worst case stays bounded only by
  // the product over input boxes of 2*|alphabet|. Fine at configuration
  // scale; do not feed it thousands of boxes.
  AssertionSet complement() const;

  bool is_empty() const { return boxes_.empty(); }
  bool is_universe() const;
  bool is_subset_of(const AssertionSet& other) const;  // AlphabetMismatch
  bool equals(const AssertionSet& other) const;        // semantic equality

  // Existential projection: drops the atoms of variables outside `keep` from
  // every box. Lossy by construction.
  AssertionSet project(const std::set<std::string>& keep) const;  // UnknownVariable

  // Inverse projection: re-homes the set over a super-alphabet, leaving the
  // new variables unconstrained.
  AssertionSet extend(const Alphabet& wider) const;  // NotASuperAlphabet

  // True when the set accepts any value for every variable in `vars`, i.e.
  // the set does not constrain them.
  bool is_receptive(const std::set<std::string>& vars) const;  // UnknownVariable

  // Variables the set actually constrains (complement of the largest
  // receptive subset).
  std::set<std::string> constrained_variables() const;

  // One concrete valuation inside the set (first box, interval midpoints,
  // first label; unconstrained variables take the domain midpoint / first
  // declared label). nullopt when the set is empty.
  std::optional<Valuation> sample_point() const;

private:
  AssertionSet(Alphabet alphabet, std::vector<Box> boxes);

  Alphabet alphabet_;
  std::vector<Box> boxes_;
};

// Atom against declared domain: clamps to the domain, canonicalizes integer
// intervals, returns nullopt when the result is empty and no atom at all
// ("full") when it covers the whole domain. Exposed for the parser and tests.
struct NormalizedAtom {
  bool full = false;
  std::optional<AtomConstraint> atom;  // engaged iff !full and non-empty
};
NormalizedAtom normalize_atom(const VariableDecl& decl, const AtomConstraint& atom);

bool atom_contains(const VariableDecl& decl, const AtomConstraint& atom, const Value& value);

}  // namespace simval

#endif  // SIMVAL_ASSERTION_HPP
