#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace linsand {

  // Outcome of a self-checking routine: a pass count plus the first few
  // counterexamples.
  struct CheckReport {
    static constexpr size_t max_failures = 16;

    bool                     ok     = true;
    std::uint64_t            checks = 0;
    std::uint64_t            failed = 0;
    std::vector<std::string> failures;

    template <typename Msg>
    bool expect(bool cond, Msg&& msg) {
      ++checks;
      if (!cond) {
        ok = false;
        ++failed;
        if (failures.size() < max_failures) {
          failures.emplace_back(std::forward<Msg>(msg)());
        }
      }
      return cond;
    }

    void merge(CheckReport const& that) {
      ok = ok && that.ok;
      checks += that.checks;
      failed += that.failed;
      for (auto const& f : that.failures) {
        if (failures.size() < max_failures) {
          failures.push_back(f);
        }
      }
    }
  };

}  // namespace linsand
