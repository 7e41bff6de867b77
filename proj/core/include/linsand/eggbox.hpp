#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "linsand/generators.hpp"
#include "linsand/sandwich.hpp"

namespace linsand {

  struct EggboxScope {
    // all: every D^J-class; reg: the regular ones; dclass: D^J-classes of
    // rank s; mdclass: the D-class of rank s under the ordinary relations.
    enum class Kind { all, reg, dclass, mdclass } kind = Kind::reg;
    size_t s = 0;

    static EggboxScope parse(std::string const& text);
    std::string        to_string() const;
  };

  struct EggCell {
    size_t        row = 0, col = 0;
    std::uint64_t size        = 0;
    std::uint64_t idempotents = 0;
    bool          is_group    = false;
  };

  struct EggDClass {
    size_t                   s = 0;
    bool                     regular = false;
    std::string              key;
    Matrix                   representative;
    std::vector<std::string> row_keys;  // R-classes, sorted
    std::vector<std::string> col_keys;  // L-classes, sorted
    std::vector<EggCell>     cells;     // nonempty cells, row-major
    std::uint64_t            size        = 0;
    std::uint64_t            idempotents = 0;
    std::uint64_t            h_size      = 0;  // common H-class size, 0 if mixed
  };

  struct EggboxReport {
    std::string            field;
    size_t                 m = 0, n = 0, r = 0;
    EggboxScope            scope;
    std::vector<EggDClass> dclasses;
    // Covering pairs (lower, upper) of the order on the classes shown.
    std::vector<std::pair<size_t, size_t>> order;
  };

  // Classes sorted by rank then key; rows by column-space key, columns by
  // row-space key. Throws BudgetExceeded when the scan is too large.
  EggboxReport eggbox(SandwichContext const& ctx,
                      EggboxScope            scope,
                      std::uint64_t          budget = default_enumeration_budget);

  std::string to_json(EggboxReport const& rep);
  std::string to_dot(EggboxReport const& rep);
  std::string to_csv(EggboxReport const& rep);

  std::string to_json(SandwichContext const& ctx, GenSetReport const& rep);

}  // namespace linsand
