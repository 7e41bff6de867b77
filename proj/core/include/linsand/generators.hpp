#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linsand/check.hpp"
#include "linsand/combinatorics.hpp"
#include "linsand/matrix.hpp"
#include "linsand/sandwich.hpp"

namespace linsand {

  using Product = std::function<Matrix(Matrix const&, Matrix const&)>;

  // Least set containing seed and closed under mul: a FIFO worklist where each
  // new element is multiplied on the right by every seed element. Result is
  // sorted by encoding. Throws BudgetExceeded past `budget` elements.
  std::vector<Matrix> closure(std::vector<Matrix> const& seed,
                              Product const&             mul,
                              std::uint64_t budget = default_enumeration_budget);

  // Closure under the sandwich product (normalized coordinates).
  std::vector<Matrix> closure(SandwichContext const&     ctx,
                              std::vector<Matrix> const& seed,
                              std::uint64_t budget = default_enumeration_budget);

  // Closure under the ordinary matrix product.
  std::vector<Matrix> closure_ordinary(std::vector<Matrix> const& seed,
                                       std::uint64_t budget = default_enumeration_budget);

  struct GLGenSet {
    std::vector<Matrix> gens;
    // False when the search failed and the transvection fallback was used.
    bool          minimal      = true;
    std::uint64_t closure_size = 0;
  };

  // Generators of GL_s(q): one element for s = 1, a certified pair for s >= 2.
  GLGenSet gl_genset(Field const& f, size_t s, std::uint64_t budget = default_enumeration_budget);

  // X = Y * Z with rank Y = min(m, n) and rank Z = rank X + 1.
  std::pair<Matrix, Matrix> ind_step_factor(SandwichContext const& ctx, Matrix const& x);

  // Idempotents of rank s in M_r, one in each R- and L-class, generating
  // the ideal {A : rank A <= s} under the ordinary product.
  std::vector<Matrix> idempotent_generators(Field const&  f,
                                            size_t        r,
                                            size_t        s,
                                            std::uint64_t seed = 1);

  struct GenSetReport {
    RankTarget          target;
    std::vector<Matrix> gens;  // normalized coordinates
    BigInt              formula_size;
    std::uint64_t       closure_size = 0;
    std::uint64_t       target_size  = 0;
    bool                certified    = false;  // closure equals the target set
    std::string         evidence;
  };

  // The target semigroup, sorted by encoding: all of M_mn^J, P, (P \ D) u E(D)
  // or {X in P : rank X <= s}.
  std::vector<Matrix> target_elements(SandwichContext const& ctx,
                                      RankTarget             target,
                                      std::uint64_t budget = default_enumeration_budget);

  GenSetReport genset_full(SandwichContext const& ctx, bool certify = true,
                           std::uint64_t budget = default_enumeration_budget);
  GenSetReport genset_reg(SandwichContext const& ctx, bool certify = true,
                          std::uint64_t budget = default_enumeration_budget);
  GenSetReport genset_idem(SandwichContext const& ctx, bool certify = true,
                           std::uint64_t budget = default_enumeration_budget);
  GenSetReport genset_ideal(SandwichContext const& ctx, size_t s, bool certify = true,
                            std::uint64_t budget = default_enumeration_budget);
  GenSetReport genset(SandwichContext const& ctx, RankTarget target, bool certify = true,
                      std::uint64_t budget = default_enumeration_budget);

  // Dropping generators loses what the lower-bound arguments say it must:
  // for full with r < min(m, n), the matrices of rank <= r generate a proper
  // subsemigroup; otherwise each generator alone in its L- (or R-) class
  // among the generators is needed to reach that class.
  CheckReport necessity_check(SandwichContext const& ctx,
                              GenSetReport const&    rep,
                              std::uint64_t budget = default_enumeration_budget);

}  // namespace linsand
