#pragma once

#include "fmlinv/deform.hpp"
#include "fmlinv/module.hpp"
#include "fmlinv/triparam.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fmlinv {

using Json = nlohmann::ordered_json;

/// Malformed input. `path` names the offending field, e.g. "$.phi[1][0]".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, const std::string& detail)
      : std::runtime_error(path + ": " + detail), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct NamedFlag {
  std::string name;
  Flag flag;
};

struct Workspace {
  FilteredModule module;
  std::vector<Subspace> candidates;
  std::vector<NamedFlag> refinements;
  std::vector<std::pair<std::string, FirstOrderFamily>> families;

  /// Throws std::out_of_range naming the missing entry.
  const Flag& refinement(const std::string& name) const;
  const FirstOrderFamily& family(const std::string& name) const;
};

/// Structural parsing only; algebraic invariants are left to validate_module.
Workspace parse_workspace(const Json& doc);

/// Reads and parses a file. JSON syntax errors become ParseError at "$".
Workspace load_workspace(const std::filesystem::path& file);

Json rational_json(const Scalar& value);
Json vector_json(const Vector& v);
Json matrix_json(const Matrix& m);
Json module_json(const FilteredModule& m);
Json workspace_json(const Workspace& w);
Json character_json(const Character& c);
Json family_json(const FirstOrderFamily& f);

}  // namespace fmlinv
