#include <doctest.h>

#include "example_fixture.hpp"
#include "simval/configurator.hpp"
#include "testutil.hpp"

using namespace simval;
using test::code_of;

TEST_CASE("the test case contract binds parameters into the assumption") {
  test::ExampleFixture fx;
  Contract c = build_test_case_contract(fx.tc, fx.arch);
  CHECK(c.id() == "tc_highway");
  CHECK(c.alphabet() == fx.sigma);
  CHECK(c.assumption().equals(parse_assertion("road_type in {hw}", fx.sigma)));
  CHECK(c.guarantee().equals(parse_assertion("pos_err in [0, 1]", fx.sigma)));
}

TEST_CASE("empty bindings assume the universe") {
  test::ExampleFixture fx;
  TestCaseSpec tc{"t", {}, std::nullopt, "pos_err in [0, 1]", {"pos_err"}};
  Contract c = build_test_case_contract(tc, fx.arch);
  CHECK(c.assumption().is_universe());
}

TEST_CASE("operating conditions intersect with the bindings") {
  test::ExampleFixture fx;
  TestCaseSpec tc{"t",
                  {{"road_type", std::string("hw")}},
                  std::string("ego_speed in [0, 50]"),
                  "pos_err in [0, 1]",
                  {"pos_err"}};
  Contract c = build_test_case_contract(tc, fx.arch);
  CHECK(c.assumption().equals(
      parse_assertion("road_type in {hw} & ego_speed in [0, 50]", fx.sigma)));
}

TEST_CASE("test case elaboration rejects bad input") {
  test::ExampleFixture fx;
  TestCaseSpec bad_label{"t", {{"road_type", std::string("foo")}}, std::nullopt, "true", {}};
  CHECK(code_of([&] { build_test_case_contract(bad_label, fx.arch); }) ==
        errc::domain_violation);

  TestCaseSpec unknown{"t", {{"lane_count", 2.0}}, std::nullopt, "true", {}};
  CHECK(code_of([&] { build_test_case_contract(unknown, fx.arch); }) == errc::unknown_variable);

  TestCaseSpec controlled{"t", {{"ego_speed", 10.0}}, std::nullopt, "true", {}};
  CHECK(code_of([&] { build_test_case_contract(controlled, fx.arch); }) ==
        errc::structural_error);

  TestCaseSpec eval_input{"t", {}, std::nullopt, "true", {"road_type"}};
  CHECK(code_of([&] { build_test_case_contract(eval_input, fx.arch); }) ==
        errc::evaluation_variable_uncontrolled);
}

TEST_CASE("configure ranks the example setups as derived") {
  test::ExampleFixture fx;
  ConfigurationReport report = configure(fx.arch, fx.tc);
  REQUIRE(report.valid.size() == 1);
  CHECK(report.valid[0].model_ids == std::vector<std::string>{"loc_precise", "veh_bicycle"});
  CHECK(report.valid[0].total_cost == 12.0);
  CHECK(is_saturated(*report.valid[0].composed_contract));

  REQUIRE(report.rejected.size() == 1);
  const SetupCandidate& rej = report.rejected[0];
  CHECK(rej.model_ids == std::vector<std::string>{"loc_coarse", "veh_bicycle"});
  CHECK(rej.rejection == "refinement");
  CHECK(rej.refinement_failed_side == "assumption");
  REQUIRE(rej.witness.has_value());
  // The witness separates the test case assumption from the setup's.
  Contract ctc = build_test_case_contract(fx.tc, fx.arch);
  CHECK(saturate(ctc).assumption().contains(*rej.witness));
  CHECK_FALSE(saturate(*rej.composed_contract).assumption().contains(*rej.witness));
}

TEST_CASE("a cheap wide-envelope model reorders the valid list") {
  test::ExampleFixture fx;
  Architecture arch = fx.make_architecture(/*with_wide=*/true);
  ConfigurationReport report = configure(arch, fx.tc);
  REQUIRE(report.valid.size() == 2);
  CHECK(report.valid[0].model_ids == std::vector<std::string>{"loc_wide", "veh_bicycle"});
  CHECK(report.valid[0].total_cost == 5.0);
  CHECK(report.valid[1].model_ids == std::vector<std::string>{"loc_precise", "veh_bicycle"});
  CHECK(report.valid[1].total_cost == 12.0);
}

TEST_CASE("an unreachable scenario rejects every setup") {
  test::ExampleFixture fx;
  TestCaseSpec urban{"tc_urban",
                     {{"road_type", std::string("ur")}},
                     std::nullopt,
                     "pos_err in [0, 1]",
                     {"pos_err"}};
  ConfigurationReport report = configure(fx.arch, urban);
  CHECK(report.valid.empty());
  CHECK(report.rejected.size() == 2);
  for (const auto& c : report.rejected) CHECK(c.rejection == "refinement");
}

TEST_CASE("every assignment appears exactly once") {
  test::ExampleFixture fx;
  Architecture arch = fx.make_architecture(true);
  ConfigurationReport report = configure(arch, fx.tc);
  CHECK(report.valid.size() + report.rejected.size() == 3);  // 1 x 3 assignments
  std::set<std::vector<std::string>> seen;
  for (const auto& c : report.valid) seen.insert(c.model_ids);
  for (const auto& c : report.rejected) seen.insert(c.model_ids);
  CHECK(seen.size() == 3);
}

TEST_CASE("reports are deterministic") {
  test::ExampleFixture fx;
  Architecture arch = fx.make_architecture(true);
  std::string a = render_report_json(configure(arch, fx.tc));
  std::string b = render_report_json(configure(arch, fx.tc));
  CHECK(a == b);
  CHECK(a.find("\"kind\": \"configuration-report\"") != std::string::npos);
}

TEST_CASE("strict refinement agrees with the saturated check on this example") {
  // Composed contracts are saturated, so their assumptions absorb !G; the
  // literal check then coincides here. The literal/saturated split is
  // exercised at the contract level.
  test::ExampleFixture fx;
  ConfigureOptions strict;
  strict.strict_refinement = true;
  ConfigurationReport report = configure(fx.arch, fx.tc, strict);
  CHECK(report.strict_refinement);
  REQUIRE(report.valid.size() == 1);
  CHECK(report.valid[0].model_ids == std::vector<std::string>{"loc_precise", "veh_bicycle"});
  CHECK(report.rejected.size() == 1);
}

TEST_CASE("single-model candidates still carry a saturated contract") {
  test::ExampleFixture fx;
  ComponentDecl solo{"solo",
                     {{fx.err, PortDirection::controlled}, {fx.road, PortDirection::uncontrolled}}};
  Alphabet solo_sigma({fx.err, fx.road});
  Contract c("c", parse_assertion("road_type in {hw}", solo_sigma),
             parse_assertion("pos_err in [0, 0.5]", solo_sigma));
  Architecture arch({solo}, {{"m", "solo", c, 1.0, {}}});
  TestCaseSpec tc{"t", {}, std::nullopt, "pos_err in [0, 1]", {"pos_err"}};
  ConfigurationReport report = configure(arch, tc);
  REQUIRE(report.valid.size() + report.rejected.size() == 1);
  const SetupCandidate& only =
      report.valid.empty() ? report.rejected.front() : report.valid.front();
  REQUIRE(only.composed_contract.has_value());
  CHECK(is_saturated(*only.composed_contract));
}

TEST_CASE("the candidate guard trips before enumeration") {
  test::ExampleFixture fx;
  ConfigureOptions tiny;
  tiny.candidate_limit = 1;
  CHECK(code_of([&] { configure(fx.arch, fx.tc, tiny); }) == errc::candidate_limit_exceeded);
}

TEST_CASE("components without models are reported by name") {
  test::ExampleFixture fx;
  Architecture arch({fx.arch.components()[0], fx.arch.components()[1]},
                    {fx.arch.models()[2]});  // only the vehicle model
  try {
    configure(arch, fx.tc);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::no_models_for_component);
    CHECK(std::string(e.what()).find("localization") != std::string::npos);
  }
}

TEST_CASE("the derived requirement separates the localization models") {
  test::ExampleFixture fx;
  SetupAssignment partial;
  partial.model_for_component = {{"ego_vehicle", "veh_bicycle"}};
  Contract q = derive_missing_requirement(fx.arch, fx.tc, partial, "localization");

  Contract c1_sat = saturate(Contract(fx.veh_dyn.id(), fx.veh_dyn.assumption().extend(fx.sigma),
                                      fx.veh_dyn.guarantee().extend(fx.sigma)));
  Contract ctc_sat = saturate(build_test_case_contract(fx.tc, fx.arch));
  auto [lhs, rhs] = equalize_alphabets(compose(c1_sat, q), ctc_sat);
  CHECK(refines(lhs, rhs));

  Contract precise_eq(fx.loc_precise.id(), fx.loc_precise.assumption().extend(fx.sigma),
                      fx.loc_precise.guarantee().extend(fx.sigma));
  Contract coarse_eq(fx.loc_coarse.id(), fx.loc_coarse.assumption().extend(fx.sigma),
                     fx.loc_coarse.guarantee().extend(fx.sigma));
  CHECK(refines(saturate(precise_eq), q));
  CHECK_FALSE(refines(saturate(coarse_eq), q));
}

TEST_CASE("derive_missing_requirement on a one-component architecture") {
  test::ExampleFixture fx;
  ComponentDecl solo{"solo",
                     {{fx.err, PortDirection::controlled}, {fx.road, PortDirection::uncontrolled}}};
  Alphabet solo_sigma({fx.err, fx.road});
  Contract c("c", AssertionSet::universe(solo_sigma),
             parse_assertion("pos_err in [0, 0.5]", solo_sigma));
  Architecture arch({solo}, {{"m", "solo", c, 1.0, {}}});
  TestCaseSpec tc{"t", {{"road_type", std::string("hw")}}, std::nullopt, "pos_err in [0, 1]",
                  {"pos_err"}};
  Contract q = derive_missing_requirement(arch, tc, SetupAssignment{}, "solo");
  Contract expected = saturate(build_test_case_contract(tc, arch));
  CHECK(q.assumption().equals(expected.assumption()));
  CHECK(q.guarantee().equals(expected.guarantee()));
}

TEST_CASE("derive_missing_requirement validates its inputs") {
  test::ExampleFixture fx;
  SetupAssignment partial;
  partial.model_for_component = {{"ego_vehicle", "veh_bicycle"},
                                 {"localization", "loc_precise"}};
  CHECK(code_of([&] {
          derive_missing_requirement(fx.arch, fx.tc, partial, "localization");
        }) == errc::target_component_assigned);

  SetupAssignment empty;
  CHECK(code_of([&] { derive_missing_requirement(fx.arch, fx.tc, empty, "localization"); }) ==
        errc::structural_error);
  CHECK(code_of([&] { derive_missing_requirement(fx.arch, fx.tc, empty, "ghost"); }) ==
        errc::structural_error);
}

TEST_CASE("quotient verdicts agree with configure verdicts") {
  test::ExampleFixture fx;
  Architecture arch = fx.make_architecture(true);
  SetupAssignment partial;
  partial.model_for_component = {{"ego_vehicle", "veh_bicycle"}};
  Contract q = derive_missing_requirement(arch, fx.tc, partial, "localization");

  ConfigurationReport report = configure(arch, fx.tc);
  for (const auto& candidate : report.valid) {
    std::string completing = candidate.assignment.model_for_component.at("localization");
    const SimulationModelDecl* model = arch.find_model(completing);
    Contract eq(model->contract.id(), model->contract.assumption().extend(q.alphabet()),
                model->contract.guarantee().extend(q.alphabet()));
    CHECK(refines(saturate(eq), q));
  }
  for (const auto& candidate : report.rejected) {
    if (candidate.rejection != "refinement") continue;
    std::string completing = candidate.assignment.model_for_component.at("localization");
    const SimulationModelDecl* model = arch.find_model(completing);
    Contract eq(model->contract.id(), model->contract.assumption().extend(q.alphabet()),
                model->contract.guarantee().extend(q.alphabet()));
    CHECK_FALSE(refines(saturate(eq), q));
  }
}
