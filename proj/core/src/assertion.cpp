#include "simval/assertion.hpp"

#include <algorithm>
#include <cmath>

namespace simval {

namespace {

void require_same_alphabet(const Alphabet& a, const Alphabet& b) {
  if (!(a == b))
    throw Error(errc::alphabet_mismatch,
                "operands are defined over different alphabets (equalize first)");
}

Interval domain_interval(const VariableDecl& decl) { return {decl.lo, decl.hi, false, false}; }

// Canonical form for integer intervals: closed integral bounds. Steps are
// exact for integral doubles, so no rounding is introduced.
Interval canonicalize_integer(Interval iv) {
  double lo = iv.lo_open ? std::floor(iv.lo) + 1.0 : std::ceil(iv.lo);
  double hi = iv.hi_open ? std::ceil(iv.hi) - 1.0 : std::floor(iv.hi);
  return {lo, hi, false, false};
}

bool interval_is_empty(const Interval& iv) {
  if (iv.lo > iv.hi) return true;
  return iv.lo == iv.hi && (iv.lo_open || iv.hi_open);
}

// Bound comparisons. A lower bound (v, open) admits x > v resp. x >= v; it is
// at least as tight as another when it admits no more values. Dually for
// upper bounds.
bool lower_at_least_as_tight(double v1, bool o1, double v2, bool o2) {
  return v1 > v2 || (v1 == v2 && (o1 || !o2));
}

bool upper_at_least_as_tight(double v1, bool o1, double v2, bool o2) {
  return v1 < v2 || (v1 == v2 && (o1 || !o2));
}

Interval interval_intersect(const Interval& a, const Interval& b) {
  Interval out = a;
  if (lower_at_least_as_tight(b.lo, b.lo_open, a.lo, a.lo_open)) {
    out.lo = b.lo;
    out.lo_open = b.lo_open;
  }
  if (upper_at_least_as_tight(b.hi, b.hi_open, a.hi, a.hi_open)) {
    out.hi = b.hi;
    out.hi_open = b.hi_open;
  }
  return out;
}

bool interval_subset(const Interval& a, const Interval& b) {
  return lower_at_least_as_tight(a.lo, a.lo_open, b.lo, b.lo_open) &&
         upper_at_least_as_tight(a.hi, a.hi_open, b.hi, b.hi_open);
}

// Single-interval union of two non-empty normalized intervals, when they
// overlap or touch; nullopt when a gap separates them.
std::optional<Interval> interval_union_single(const VariableDecl& decl, Interval a, Interval b) {
  if (lower_at_least_as_tight(a.lo, a.lo_open, b.lo, b.lo_open)) std::swap(a, b);
  // a now has the looser (or equal) lower bound.
  bool gap;
  if (decl.kind == VarKind::integer) {
    gap = b.lo > a.hi + 1.0;
  } else {
    gap = b.lo > a.hi || (b.lo == a.hi && b.lo_open && a.hi_open);
  }
  if (gap) return std::nullopt;
  Interval out = a;
  if (!upper_at_least_as_tight(b.hi, b.hi_open, a.hi, a.hi_open)) {
    out.hi = b.hi;
    out.hi_open = b.hi_open;
  }
  return out;
}

LabelSet label_intersect(const LabelSet& a, const LabelSet& b) {
  LabelSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

LabelSet label_union(const LabelSet& a, const LabelSet& b) {
  LabelSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool label_subset(const LabelSet& a, const LabelSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Effective atom of a box for one variable; absent atoms mean the full domain.
AtomConstraint effective_atom(const VariableDecl& decl, const Box& box) {
  auto it = box.find(decl.name);
  if (it != box.end()) return it->second;
  if (decl.numeric()) return domain_interval(decl);
  return decl.labels;
}

bool atom_subset(const VariableDecl& decl, const AtomConstraint& a, const AtomConstraint& b) {
  if (decl.numeric()) return interval_subset(std::get<Interval>(a), std::get<Interval>(b));
  return label_subset(std::get<LabelSet>(a), std::get<LabelSet>(b));
}

// Intersection of two normalized atoms; nullopt when empty.
std::optional<AtomConstraint> atom_intersect(const VariableDecl& decl, const AtomConstraint& a,
                                             const AtomConstraint& b) {
  if (decl.numeric()) {
    Interval iv = interval_intersect(std::get<Interval>(a), std::get<Interval>(b));
    if (decl.kind == VarKind::integer) iv = canonicalize_integer(iv);
    if (interval_is_empty(iv)) return std::nullopt;
    return AtomConstraint(iv);
  }
  LabelSet ls = label_intersect(std::get<LabelSet>(a), std::get<LabelSet>(b));
  if (ls.empty()) return std::nullopt;
  return AtomConstraint(std::move(ls));
}

// nullopt = empty box. Atoms are normalized, full atoms dropped.
std::optional<Box> canonicalize_box(const Alphabet& alphabet, const Box& box) {
  Box out;
  for (const auto& [name, atom] : box) {
    const VariableDecl& decl = alphabet.at(name);
    NormalizedAtom n = normalize_atom(decl, atom);
    if (n.full) continue;
    if (!n.atom) return std::nullopt;
    out.emplace(name, std::move(*n.atom));
  }
  return out;
}

std::optional<Box> box_intersect(const Alphabet& alphabet, const Box& a, const Box& b) {
  Box out = a;
  for (const auto& [name, atom] : b) {
    auto it = out.find(name);
    if (it == out.end()) {
      out.emplace(name, atom);
      continue;
    }
    auto meet = atom_intersect(alphabet.at(name), it->second, atom);
    if (!meet) return std::nullopt;
    it->second = std::move(*meet);
  }
  return out;
}

// a subseteq b, decided atom-wise (exact for axis-aligned boxes).
bool box_subset(const Alphabet& alphabet, const Box& a, const Box& b) {
  for (const auto& [name, batom] : b) {
    const VariableDecl& decl = alphabet.at(name);
    if (!atom_subset(decl, effective_atom(decl, a), batom)) return false;
  }
  return true;
}

bool atom_less(const AtomConstraint& a, const AtomConstraint& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  if (const Interval* ia = std::get_if<Interval>(&a)) {
    const Interval& ib = std::get<Interval>(b);
    auto key = [](const Interval& iv) {
      return std::make_tuple(iv.lo, iv.lo_open, iv.hi, iv.hi_open);
    };
    return key(*ia) < key(ib);
  }
  return std::get<LabelSet>(a) < std::get<LabelSet>(b);
}

bool box_less(const Box& a, const Box& b) {
  auto ai = a.begin();
  auto bi = b.begin();
  for (; ai != a.end() && bi != b.end(); ++ai, ++bi) {
    if (ai->first != bi->first) return ai->first < bi->first;
    if (!(ai->second == bi->second)) return atom_less(ai->second, bi->second);
  }
  return a.size() < b.size();
}

// Merge of two boxes that differ in at most one variable's (effective) atom,
// when the differing atoms union to a single atom. nullopt otherwise.
std::optional<Box> box_merge(const Alphabet& alphabet, const Box& a, const Box& b) {
  const std::string* diff_var = nullptr;
  for (const auto& decl : alphabet.vars()) {
    bool in_a = a.count(decl.name) > 0;
    bool in_b = b.count(decl.name) > 0;
    if (!in_a && !in_b) continue;
    AtomConstraint ea = effective_atom(decl, a);
    AtomConstraint eb = effective_atom(decl, b);
    if (ea == eb) continue;
    if (diff_var) return std::nullopt;  // differs in more than one variable
    diff_var = &decl.name;
  }
  if (!diff_var) return std::nullopt;  // identical boxes; handled by dedup
  const VariableDecl& decl = alphabet.at(*diff_var);
  AtomConstraint ea = effective_atom(decl, a);
  AtomConstraint eb = effective_atom(decl, b);
  std::optional<AtomConstraint> joined;
  if (decl.numeric()) {
    auto iv = interval_union_single(decl, std::get<Interval>(ea), std::get<Interval>(eb));
    if (!iv) return std::nullopt;
    joined = AtomConstraint(*iv);
  } else {
    joined = AtomConstraint(label_union(std::get<LabelSet>(ea), std::get<LabelSet>(eb)));
  }
  Box out = a;
  out.erase(*diff_var);
  NormalizedAtom n = normalize_atom(decl, *joined);
  if (!n.full) out.emplace(*diff_var, std::move(*n.atom));
  return out;
}

// Compression pass: dedup, drop subsumed boxes, merge adjacent/overlapping
// neighbours until a fixed point. Never changes the denoted set.
void normalize_boxes(const Alphabet& alphabet, std::vector<Box>& boxes) {
  for (;;) {
    std::sort(boxes.begin(), boxes.end(), box_less);
    boxes.erase(std::unique(boxes.begin(), boxes.end()), boxes.end());

    // Subsumption. After dedup, mutual subsumption cannot happen.
    for (std::size_t i = 0; i < boxes.size();) {
      bool subsumed = false;
      for (std::size_t j = 0; j < boxes.size(); ++j) {
        if (i != j && box_subset(alphabet, boxes[i], boxes[j])) {
          subsumed = true;
          break;
        }
      }
      if (subsumed)
        boxes.erase(boxes.begin() + static_cast<std::ptrdiff_t>(i));
      else
        ++i;
    }

    bool merged = false;
    for (std::size_t i = 0; i < boxes.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < boxes.size() && !merged; ++j) {
        if (auto m = box_merge(alphabet, boxes[i], boxes[j])) {
          boxes[i] = std::move(*m);
          boxes.erase(boxes.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
        }
      }
    }
    if (!merged) return;
  }
}

bool box_contains_aligned(const Alphabet& alphabet, const Box& box,
                          std::span<const Value> values) {
  for (const auto& [name, atom] : box) {
    std::size_t idx = alphabet.index_of(name);
    if (!atom_contains(alphabet.vars()[idx], atom, values[idx])) return false;
  }
  return true;
}

}  // namespace

NormalizedAtom normalize_atom(const VariableDecl& decl, const AtomConstraint& atom) {
  NormalizedAtom out;
  if (decl.numeric()) {
    const Interval* iv = std::get_if<Interval>(&atom);
    if (!iv)
      throw Error(errc::type_mismatch,
                  "label constraint applied to numeric variable '" + decl.name + "'");
    if (std::isnan(iv->lo) || std::isnan(iv->hi))
      throw Error(errc::schema_error, "NaN interval endpoint for variable '" + decl.name + "'");
    Interval clamped = interval_intersect(*iv, domain_interval(decl));
    if (decl.kind == VarKind::integer) clamped = canonicalize_integer(clamped);
    if (interval_is_empty(clamped)) return out;
    if (clamped == domain_interval(decl)) {
      out.full = true;
      return out;
    }
    out.atom = AtomConstraint(clamped);
    return out;
  }
  const LabelSet* ls = std::get_if<LabelSet>(&atom);
  if (!ls)
    throw Error(errc::type_mismatch,
                "interval constraint applied to " + std::string(var_kind_name(decl.kind)) +
                    " variable '" + decl.name + "'");
  LabelSet sorted = *ls;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  LabelSet clamped = label_intersect(sorted, decl.labels);
  if (clamped.empty()) return out;
  if (clamped == decl.labels) {
    out.full = true;
    return out;
  }
  out.atom = AtomConstraint(std::move(clamped));
  return out;
}

bool atom_contains(const VariableDecl& decl, const AtomConstraint& atom, const Value& value) {
  if (const Interval* iv = std::get_if<Interval>(&atom)) {
    double v = std::get<double>(value);
    bool lo_ok = iv->lo_open ? v > iv->lo : v >= iv->lo;
    bool hi_ok = iv->hi_open ? v < iv->hi : v <= iv->hi;
    (void)decl;
    return lo_ok && hi_ok;
  }
  const LabelSet& ls = std::get<LabelSet>(atom);
  const std::string& label = std::get<std::string>(value);
  return std::binary_search(ls.begin(), ls.end(), label);
}

AssertionSet::AssertionSet(Alphabet alphabet, std::vector<Box> boxes)
    : alphabet_(std::move(alphabet)), boxes_(std::move(boxes)) {}

AssertionSet AssertionSet::empty(Alphabet alphabet) {
  return AssertionSet(std::move(alphabet), {});
}

AssertionSet AssertionSet::universe(Alphabet alphabet) {
  return AssertionSet(std::move(alphabet), {Box{}});
}

AssertionSet AssertionSet::from_boxes(Alphabet alphabet, std::vector<Box> boxes) {
  std::vector<Box> canon;
  canon.reserve(boxes.size());
  for (const Box& b : boxes) {
    if (auto cb = canonicalize_box(alphabet, b)) canon.push_back(std::move(*cb));
  }
  normalize_boxes(alphabet, canon);
  return AssertionSet(std::move(alphabet), std::move(canon));
}

AssertionSet AssertionSet::single_atom(Alphabet alphabet, const std::string& variable,
                                       AtomConstraint atom) {
  Box b;
  b.emplace(variable, std::move(atom));
  return from_boxes(std::move(alphabet), {std::move(b)});
}

bool AssertionSet::contains(const Valuation& v) const {
  for (const auto& [name, value] : v) {
    if (!alphabet_.contains(name))
      throw Error(errc::unknown_variable, "valuation names unknown variable '" + name + "'");
    (void)value;
  }
  std::vector<Value> aligned;
  aligned.reserve(alphabet_.size());
  for (const auto& decl : alphabet_.vars()) {
    auto it = v.find(decl.name);
    if (it == v.end())
      throw Error(errc::missing_variable,
                  "valuation is missing variable '" + decl.name + "'");
    if (!value_in_domain(decl, it->second))
      throw Error(errc::domain_violation,
                  "value " + (value_matches_kind(decl, it->second)
                                  ? value_to_text(decl, it->second)
                                  : std::string("of mismatched kind")) +
                      " lies outside the declared domain of '" + decl.name + "'");
    aligned.push_back(it->second);
  }
  return contains_aligned(aligned);
}

bool AssertionSet::contains_aligned(std::span<const Value> values) const {
  for (const Box& b : boxes_)
    if (box_contains_aligned(alphabet_, b, values)) return true;
  return false;
}

AssertionSet AssertionSet::unite(const AssertionSet& other) const {
  require_same_alphabet(alphabet_, other.alphabet_);
  std::vector<Box> boxes = boxes_;
  boxes.insert(boxes.end(), other.boxes_.begin(), other.boxes_.end());
  normalize_boxes(alphabet_, boxes);
  return AssertionSet(alphabet_, std::move(boxes));
}

AssertionSet AssertionSet::intersect(const AssertionSet& other) const {
  require_same_alphabet(alphabet_, other.alphabet_);
  std::vector<Box> boxes;
  for (const Box& a : boxes_) {
    for (const Box& b : other.boxes_) {
      if (auto meet = box_intersect(alphabet_, a, b)) boxes.push_back(std::move(*meet));
    }
  }
  normalize_boxes(alphabet_, boxes);
  return AssertionSet(alphabet_, std::move(boxes));
}

AssertionSet AssertionSet::complement() const {
  // De Morgan over the union of boxes: the complement of one box is the union
  // of per-variable complementary slabs; the box complements are intersected.
  AssertionSet result = universe(alphabet_);
  for (const Box& b : boxes_) {
    std::vector<Box> slabs;
    for (const auto& [name, atom] : b) {
      const VariableDecl& decl = alphabet_.at(name);
      if (decl.numeric()) {
        const Interval& iv = std::get<Interval>(atom);
        Interval left{decl.lo, iv.lo, false, !iv.lo_open};
        Interval right{iv.hi, decl.hi, !iv.hi_open, false};
        for (const Interval& slab : {left, right}) {
          NormalizedAtom n = normalize_atom(decl, AtomConstraint(slab));
          if (n.full || n.atom) {
            Box sb;
            if (n.atom) sb.emplace(name, std::move(*n.atom));
            slabs.push_back(std::move(sb));
          }
        }
      } else {
        LabelSet rest;
        const LabelSet& allowed = std::get<LabelSet>(atom);
        std::set_difference(decl.labels.begin(), decl.labels.end(), allowed.begin(),
                            allowed.end(), std::back_inserter(rest));
        if (!rest.empty()) {
          Box sb;
          sb.emplace(name, AtomConstraint(std::move(rest)));
          slabs.push_back(std::move(sb));
        }
      }
    }
    result = result.intersect(from_boxes(alphabet_, std::move(slabs)));
    if (result.is_empty()) break;
  }
  return result;
}

bool AssertionSet::is_universe() const {
  if (boxes_.size() == 1 && boxes_[0].empty()) return true;
  if (boxes_.empty()) return false;
  return complement().is_empty();
}

bool AssertionSet::is_subset_of(const AssertionSet& other) const {
  require_same_alphabet(alphabet_, other.alphabet_);
  if (is_empty()) return true;
  // Cheap sufficient test before the exact complement-based one.
  bool covered = std::all_of(boxes_.begin(), boxes_.end(), [&](const Box& a) {
    return std::any_of(other.boxes_.begin(), other.boxes_.end(),
                       [&](const Box& b) { return box_subset(alphabet_, a, b); });
  });
  if (covered) return true;
  return intersect(other.complement()).is_empty();
}

bool AssertionSet::equals(const AssertionSet& other) const {
  return is_subset_of(other) && other.is_subset_of(*this);
}

AssertionSet AssertionSet::project(const std::set<std::string>& keep) const {
  for (const auto& name : keep) alphabet_.at(name);  // UnknownVariable check
  Alphabet sub = alphabet_.restricted_to(keep);
  std::vector<Box> boxes;
  boxes.reserve(boxes_.size());
  for (const Box& b : boxes_) {
    Box nb;
    for (const auto& [name, atom] : b)
      if (keep.count(name)) nb.emplace(name, atom);
    boxes.push_back(std::move(nb));
  }
  return from_boxes(std::move(sub), std::move(boxes));
}

AssertionSet AssertionSet::extend(const Alphabet& wider) const {
  for (const auto& decl : alphabet_.vars()) {
    const VariableDecl* w = wider.find(decl.name);
    if (!w)
      throw Error(errc::not_a_super_alphabet,
                  "target alphabet is missing variable '" + decl.name + "'");
    if (!(*w == decl))
      throw Error(errc::variable_decl_conflict,
                  "variable '" + decl.name + "' is declared differently in the target alphabet");
  }
  // Boxes only reference existing variables, whose declarations are
  // unchanged, so the normal form carries over verbatim.
  return AssertionSet(wider, boxes_);
}

bool AssertionSet::is_receptive(const std::set<std::string>& vars) const {
  std::set<std::string> keep = alphabet_.names();
  for (const auto& name : vars) {
    alphabet_.at(name);  // UnknownVariable check
    keep.erase(name);
  }
  bool touched = std::any_of(boxes_.begin(), boxes_.end(), [&](const Box& b) {
    return std::any_of(vars.begin(), vars.end(),
                       [&](const std::string& v) { return b.count(v) > 0; });
  });
  if (!touched) return true;
  return project(keep).extend(alphabet_).equals(*this);
}

std::set<std::string> AssertionSet::constrained_variables() const {
  std::set<std::string> out;
  for (const auto& decl : alphabet_.vars()) {
    bool appears = std::any_of(boxes_.begin(), boxes_.end(),
                               [&](const Box& b) { return b.count(decl.name) > 0; });
    if (appears && !is_receptive({decl.name})) out.insert(decl.name);
  }
  return out;
}

std::optional<Valuation> AssertionSet::sample_point() const {
  if (boxes_.empty()) return std::nullopt;
  const Box& box = boxes_.front();
  Valuation v;
  for (const auto& decl : alphabet_.vars()) {
    auto it = box.find(decl.name);
    if (decl.numeric()) {
      Interval iv = it != box.end() ? std::get<Interval>(it->second) : domain_interval(decl);
      double mid = iv.lo == iv.hi ? iv.lo : (iv.lo + iv.hi) / 2.0;
      if (decl.kind == VarKind::integer) mid = std::max(iv.lo, std::floor(mid));
      v.emplace(decl.name, mid);
    } else {
      const LabelSet& ls = it != box.end() ? std::get<LabelSet>(it->second) : decl.labels;
      v.emplace(decl.name, ls.front());
    }
  }
  return v;
}

}  // namespace simval
