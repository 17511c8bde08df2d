#include "simval/contract.hpp"

#include "simval/parser.hpp"

namespace simval {

namespace {

void require_equal_alphabets(const Contract& a, const Contract& b) {
  if (!(a.alphabet() == b.alphabet()))
    throw Error(errc::alphabet_mismatch, "contracts '" + a.id() + "' and '" + b.id() +
                                             "' have different alphabets (equalize first)");
}

void require_partition_in_alphabet(const Contract& c, const PortPartition& ports) {
  for (const auto& name : ports.controlled) {
    c.alphabet().at(name);
    if (ports.uncontrolled.count(name))
      throw Error(errc::structural_error,
                  "port '" + name + "' is listed as both controlled and uncontrolled");
  }
  for (const auto& name : ports.uncontrolled) c.alphabet().at(name);
}

}  // namespace

Contract::Contract(std::string id, AssertionSet assumption, AssertionSet guarantee,
                   std::map<std::string, std::string> meta)
    : id_(std::move(id)),
      assumption_(std::move(assumption)),
      guarantee_(std::move(guarantee)),
      meta_(std::move(meta)) {
  if (id_.empty()) throw Error(errc::structural_error, "contracts must carry an id");
  if (!(assumption_.alphabet() == guarantee_.alphabet()))
    throw Error(errc::alphabet_mismatch,
                "assumption and guarantee of contract '" + id_ + "' use different alphabets");
}

Contract true_contract(std::string id, Alphabet alphabet) {
  AssertionSet u = AssertionSet::universe(std::move(alphabet));
  return Contract(std::move(id), u, u);
}

Contract saturate(const Contract& c) {
  return Contract(c.id(), c.assumption(), c.guarantee().unite(c.assumption().complement()),
                  c.meta());
}

bool is_saturated(const Contract& c) {
  return c.assumption().complement().is_subset_of(c.guarantee());
}

AssertionSet requirement(const Contract& c) {
  return c.guarantee().unite(c.assumption().complement());
}

bool satisfies(const AssertionSet& behavior, const Contract& c) {
  if (!(behavior.alphabet() == c.alphabet()))
    throw Error(errc::alphabet_mismatch,
                "behavior and contract '" + c.id() + "' have different alphabets");
  return c.assumption().intersect(behavior).is_subset_of(c.guarantee());
}

bool refines_literal(const Contract& sub, const Contract& super) {
  return check_refinement(sub, super, /*literal=*/true).holds;
}

bool refines(const Contract& sub, const Contract& super) {
  return check_refinement(sub, super, /*literal=*/false).holds;
}

RefinementCheck check_refinement(const Contract& sub, const Contract& super, bool literal) {
  require_equal_alphabets(sub, super);
  const Contract& s = literal ? sub : saturate(sub);
  const Contract& t = literal ? super : saturate(super);
  // Refinement must not assume more: every environment admitted by the
  // refined contract is admitted by the refining one.
  AssertionSet assumption_gap = t.assumption().intersect(s.assumption().complement());
  if (!assumption_gap.is_empty()) {
    RefinementCheck out;
    out.failed_side = "assumption";
    out.witness = assumption_gap.sample_point();
    return out;
  }
  AssertionSet guarantee_gap = s.guarantee().intersect(t.guarantee().complement());
  if (!guarantee_gap.is_empty()) {
    RefinementCheck out;
    out.failed_side = "guarantee";
    out.witness = guarantee_gap.sample_point();
    return out;
  }
  return {true, "", std::nullopt};
}

bool is_compatible(const Contract& c, const PortPartition& ports) {
  require_partition_in_alphabet(c, ports);
  return c.assumption().is_receptive(ports.controlled);
}

bool is_consistent(const Contract& c, const PortPartition& ports) {
  require_partition_in_alphabet(c, ports);
  return c.guarantee().is_receptive(ports.uncontrolled);
}

std::pair<Contract, Contract> equalize_alphabets(const Contract& c1, const Contract& c2) {
  Alphabet sigma = merge_alphabets(c1.alphabet(), c2.alphabet());
  Contract e1(c1.id(), c1.assumption().extend(sigma), c1.guarantee().extend(sigma), c1.meta());
  Contract e2(c2.id(), c2.assumption().extend(sigma), c2.guarantee().extend(sigma), c2.meta());
  return {std::move(e1), std::move(e2)};
}

Contract compose(const Contract& c1, const Contract& c2) {
  auto [e1, e2] = equalize_alphabets(c1, c2);
  AssertionSet g = e1.guarantee().intersect(e2.guarantee());
  AssertionSet a = e1.assumption().intersect(e2.assumption()).unite(g.complement());
  return Contract("(" + c1.id() + " * " + c2.id() + ")", std::move(a), std::move(g));
}

Contract compose_all(const std::vector<Contract>& contracts) {
  if (contracts.empty())
    throw Error(errc::structural_error, "composition of zero contracts has no alphabet");
  Contract acc = contracts.front();
  for (std::size_t i = 1; i < contracts.size(); ++i) acc = compose(acc, contracts[i]);
  return acc;
}

Contract quotient(const Contract& top, const Contract& divisor) {
  auto [t, d] = equalize_alphabets(top, divisor);
  std::vector<std::string> auto_saturated;
  if (!is_saturated(t)) {
    t = saturate(t);
    auto_saturated.push_back(top.id());
  }
  if (!is_saturated(d)) {
    d = saturate(d);
    auto_saturated.push_back(divisor.id());
  }
  AssertionSet a = t.assumption().intersect(d.guarantee());
  AssertionSet g = d.assumption().intersect(t.guarantee()).unite(a.complement());
  std::map<std::string, std::string> meta;
  if (!auto_saturated.empty()) {
    std::string joined;
    for (const auto& id : auto_saturated) {
      if (!joined.empty()) joined += ", ";
      joined += id;
    }
    meta.emplace("auto_saturated", joined);
  }
  return Contract("(" + top.id() + " / " + divisor.id() + ")", std::move(a), std::move(g),
                  std::move(meta));
}

Contract conjoin(const Contract& c1, const Contract& c2) {
  auto [e1, e2] = equalize_alphabets(c1, c2);
  return Contract("(" + c1.id() + " ^ " + c2.id() + ")",
                  e1.assumption().unite(e2.assumption()),
                  e1.guarantee().intersect(e2.guarantee()));
}

std::string render_contract_text(const Contract& c) {
  std::string out = "contract " + c.id() + "\n";
  out += "  assume:    " + render_assertion(c.assumption()) + "\n";
  out += "  guarantee: " + render_assertion(c.guarantee()) + "\n";
  for (const auto& [key, value] : c.meta()) out += "  # " + key + ": " + value + "\n";
  return out;
}

}  // namespace simval
