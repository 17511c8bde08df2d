#ifndef SIMVAL_CONTRACT_HPP
#define SIMVAL_CONTRACT_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "simval/assertion.hpp"

namespace simval {

// An assume-guarantee contract: the environment is expected to stay inside
// the assumption, the implementation then keeps the guarantee. Assumption and
// guarantee share one alphabet. Ids are mandatory; they appear in reports and
// break ties deterministically.
class Contract {
public:
  Contract(std::string id, AssertionSet assumption, AssertionSet guarantee,
           std::map<std::string, std::string> meta = {});

  const std::string& id() const { return id_; }
  const Alphabet& alphabet() const { return assumption_.alphabet(); }
  const AssertionSet& assumption() const { return assumption_; }
  const AssertionSet& guarantee() const { return guarantee_; }

  // Free-form notes attached by operations (e.g. the quotient records that it
  // saturated an operand).
  const std::map<std::string, std::string>& meta() const { return meta_; }

private:
  std::string id_;
  AssertionSet assumption_;
  AssertionSet guarantee_;
  std::map<std::string, std::string> meta_;
};

// The ports of one component, split into controlled (outputs) and
// uncontrolled (inputs). Sets must be disjoint.
struct PortPartition {
  std::set<std::string> controlled;
  std::set<std::string> uncontrolled;
};

Contract true_contract(std::string id, Alphabet alphabet);

// (A, G) -> (A, G u !A). Idempotent.
Contract saturate(const Contract& c);
bool is_saturated(const Contract& c);

// The requirement the contract imposes on the component, A => G as a set.
AssertionSet requirement(const Contract& c);

// An implementation with behavior `behavior` satisfies the contract iff
// A n behavior subseteq G. Alphabets must already be equal.
bool satisfies(const AssertionSet& behavior, const Contract& c);

// Refinement checks. `refines_literal` applies A2 supseteq A1 and
// G2 subseteq G1 to the contracts exactly as given; `refines` applies the
// same test to the saturated forms (the semantic substitutability order).
// refines_literal implies refines. Alphabets must already be equal.
bool refines_literal(const Contract& sub, const Contract& super);
bool refines(const Contract& sub, const Contract& super);

// Refinement with an explanation: when the check fails, `witness` holds one
// valuation from the offending difference set and `failed_side` names it
// ("assumption": super's assumption not admitted by sub; "guarantee": sub
// guarantees more than super allows).
struct RefinementCheck {
  bool holds = false;
  std::string failed_side;
  std::optional<Valuation> witness;
};
RefinementCheck check_refinement(const Contract& sub, const Contract& super, bool literal);

// Compatibility: the assumption leaves the component's own outputs
// unconstrained. Consistency: the guarantee leaves the inputs unconstrained.
bool is_compatible(const Contract& c, const PortPartition& ports);
bool is_consistent(const Contract& c, const PortPartition& ports);

// Re-homes both contracts over the union alphabet via inverse projection.
// Shared variable names must carry identical declarations
// (VariableDeclConflict otherwise).
std::pair<Contract, Contract> equalize_alphabets(const Contract& c1, const Contract& c2);

// Parallel composition:
//   C1 (x) C2 = (A1 n A2 u !(G1 n G2), G1 n G2)
// over the union alphabet. The result is always saturated.
Contract compose(const Contract& c1, const Contract& c2);

// Left fold of `compose` in the given order. Requires at least one contract.
Contract compose_all(const std::vector<Contract>& contracts);

// Quotient, the adjoint of composition on saturated contracts:
//   C_top / C1 = (A_top n G1, A1 n G_top u !(A_top n G1))
// Operands that arrive unsaturated are saturated first; the result's meta
// records which ones under "auto_saturated".
Contract quotient(const Contract& top, const Contract& divisor);

// Conjunction (viewpoint merge): (A1 u A2, G1 n G2). The result refines both
// operands literally.
Contract conjoin(const Contract& c1, const Contract& c2);

// Human-readable rendering used by the CLI and reports.
std::string render_contract_text(const Contract& c);

}  // namespace simval

#endif  // SIMVAL_CONTRACT_HPP
