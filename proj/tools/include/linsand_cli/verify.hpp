#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "linsand/check.hpp"
#include "linsand/field.hpp"

namespace linsand::cli {

  // Check groups run per instance.
  inline std::vector<std::string> const verify_groups = {
      "green", "counts", "idempotents", "closure", "gensets", "hhat",
      "pullback", "iso", "mididentity", "theory"};

  struct Instance {
    std::string field;
    size_t      m = 0, n = 0, r = 0;
  };

  // "q=2,3;m=1-3;n=1-3;r=0-1;max=1024". Missing keys take the defaults
  // q=2,3, m=1-3, n=1-3, every r, max=1024 (bound on q^{mn}).
  struct Grid {
    std::vector<std::string> fields{"2", "3"};
    std::vector<size_t>      ms{1, 2, 3}, ns{1, 2, 3};
    std::vector<size_t>      rs;  // empty: all 0..min(m, n)
    std::uint64_t            max_size = 1024;

    static Grid           parse(std::string const& text);
    std::string           to_string() const;
    std::vector<Instance> instances() const;
  };

  struct VerifyConfig {
    Grid                  grid;
    std::set<std::string> only;  // empty: all groups
    unsigned              threads = 1;
    std::uint64_t         budget  = 1u << 20;
    // Test hook: deliberately corrupt one formula ("counts", "idempotents",
    // "gensets") so the harness can be seen to fail.
    std::string inject_fault;
  };

  struct GroupResult {
    std::string name;
    CheckReport report;
    std::string skipped;  // reason, when not run
  };

  struct InstanceResult {
    Instance                 inst;
    std::vector<GroupResult> groups;
    bool                     ok = true;
  };

  struct VerifyReport {
    std::string                 grid;
    std::vector<InstanceResult> instances;
    std::uint64_t               checks = 0, failed = 0;
    bool                        ok = true;
  };

  InstanceResult verify_instance(Instance const& inst, VerifyConfig const& cfg);
  VerifyReport   run_verify(VerifyConfig const& cfg);

  std::string to_json(VerifyReport const& rep);
  std::string to_text(VerifyReport const& rep);

}  // namespace linsand::cli
