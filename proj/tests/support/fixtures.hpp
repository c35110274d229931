#pragma once

#include "fmlinv/io.hpp"
#include "fmlinv/refinement.hpp"

#include <string>

namespace fmlinv::testing {

inline std::string fixture_path(const std::string& name) { return std::string(FMLINV_FIXTURE_DIR) + "/" + name; }

inline Workspace load_fixture(const std::string& name) { return load_workspace(fixture_path(name)); }

inline Refinement fixture_refinement(const std::string& name) {
  const Workspace w = load_fixture(name);
  return make_refinement(w.module, w.refinement("F"));
}

}  // namespace fmlinv::testing
