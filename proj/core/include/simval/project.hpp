#ifndef SIMVAL_PROJECT_HPP
#define SIMVAL_PROJECT_HPP

#include <string>
#include <vector>

#include "simval/configurator.hpp"

namespace simval {

// A fully resolved project: global variable declarations, named contracts
// over sub-alphabets, the simulation architecture, and test cases. Loaded
// from and saved to a JSON document with named sections (format_version "1");
// the schema is documented in the repository README.
struct Project {
  Alphabet variables;
  std::vector<Contract> contracts;  // sorted by id
  Architecture architecture;
  std::vector<TestCaseSpec> test_cases;  // sorted by id

  const Contract* find_contract(const std::string& id) const;
  const TestCaseSpec* find_test_case(const std::string& id) const;
};

// Parses and resolves a project document. All cross-references must resolve
// (DanglingReference), ids must be unique (DuplicateId), sections must be
// well-formed (SchemaError). Assertion text is elaborated eagerly so syntax
// and type errors surface at load time, and is kept in canonical form.
Project load_project(const std::string& text);
Project load_project_file(const std::string& path);

// Canonical serialization: sections and arrays sorted by name/id, assertions
// rendered canonically. Byte-stable for identical inputs, and
// load(save(p)) == save-equal for every valid project.
std::string save_project(const Project& project);

}  // namespace simval

#endif  // SIMVAL_PROJECT_HPP
