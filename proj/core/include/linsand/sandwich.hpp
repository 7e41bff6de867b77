#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linsand/check.hpp"
#include "linsand/combinatorics.hpp"
#include "linsand/matrix.hpp"
#include "linsand/psgp.hpp"

namespace linsand {

  // The sandwich semigroup M_mn^A: m x n matrices with X * Y = XAY for a
  // fixed n x m matrix A = U J V, J = J_{n,m,r}. Structural queries below
  // take matrices in normalized coordinates (A replaced by J); use
  // to_normalized / from_normalized at the boundary.
  class SandwichContext {
   public:
    static SandwichContext make(Field const& f, size_t m, size_t n, Matrix const& a);
    // A = J_{n,m,r} directly.
    static SandwichContext normalized(Field const& f, size_t m, size_t n, size_t r);

    Field const& field() const noexcept {
      return _field;
    }
    size_t m() const noexcept {
      return _m;
    }
    size_t n() const noexcept {
      return _n;
    }
    size_t r() const noexcept {
      return _r;
    }
    unsigned q() const noexcept {
      return _field.q();
    }
    Matrix const& A() const noexcept {
      return _a;
    }
    Matrix const& U() const noexcept {
      return _u;
    }
    Matrix const& V() const noexcept {
      return _v;
    }
    bool is_normalized() const noexcept {
      return _normalized;
    }
    Matrix J() const;

    // X -> VXU, an isomorphism M_mn^A -> M_mn^J, and its inverse.
    Matrix to_normalized(Matrix const& x) const;
    Matrix from_normalized(Matrix const& x) const;

    // XAY in the original coordinates.
    Matrix star(Matrix const& x, Matrix const& y) const;
    // XJY, computed as (first r columns of X)(first r rows of Y).
    Matrix star_normalized(Matrix const& x, Matrix const& y) const;

    // Parameters as "q=..,m=..,n=..,r=..".
    std::string describe() const;

   private:
    SandwichContext(Field f, size_t m, size_t n, Matrix a, Matrix u, Matrix v, size_t r);

    Field  _field;
    size_t _m, _n;
    Matrix _a, _u, _v, _uinv, _vinv;
    size_t _r;
    bool   _normalized;
  };

  struct RegFlags {
    bool in_P1 = false;
    bool in_P2 = false;
    bool in_P3 = false;
    bool in_P  = false;
  };

  RegFlags reg_membership(SandwichContext const& ctx, Matrix const& x);

  enum class Relation { R, L, H, D, J };
  char const* relation_name(Relation rel) noexcept;

  struct GreenKey {
    // Which description applies: a regular D-class (by rank), a class
    // described by a column space, a row space, both, or a singleton.
    enum class Shape { rank, col, row, col_row, singleton };

    Relation                   kind  = Relation::R;
    Shape                      shape = Shape::singleton;
    size_t                     rank  = 0;
    std::optional<SubspaceKey> col, row;
    std::optional<Matrix>      element;

    bool operator==(GreenKey const& that) const;
    bool operator<(GreenKey const& that) const;
    std::string to_string() const;
  };

  GreenKey green_key(SandwichContext const& ctx, Matrix const& x, Relation rel);

  // D^J_X <= D^J_Y.
  bool dclass_leq(SandwichContext const& ctx, Matrix const& x, Matrix const& y);

  struct MaximalClasses {
    // Either the single class D_r^J (a subsemigroup) or the singletons of
    // rank > r.
    bool        unique_top = false;
    size_t      rank       = 0;
    BigInt      class_size;   // |D_r^J| when unique_top
    BigInt      class_count;  // number of maximal classes
    std::string description;
  };

  MaximalClasses maximal_dclasses(SandwichContext const& ctx);

  struct RegTriple {
    Matrix M, A, N;
  };

  RegTriple man_decompose(SandwichContext const& ctx, Matrix const& x);
  Matrix    man_compose(SandwichContext const& ctx, RegTriple const& t);
  Matrix    phi_project(SandwichContext const& ctx, Matrix const& x);

  struct CornerImages {
    Matrix XJ, JX, JXJ;
    bool   XJ_in_C, JX_in_R;
    bool   XJ_regular, JX_regular;
  };

  CornerImages corner_images(SandwichContext const& ctx, Matrix const& x);

  std::pair<Matrix, Matrix> psi_embed(SandwichContext const& ctx, Matrix const& x);
  // Inverse of psi on its image; throws NotInImage otherwise.
  Matrix psi_reconstruct(SandwichContext const& ctx, Matrix const& y, Matrix const& z);

  // Parametric enumerations in normalized coordinates, sorted by encoding.
  std::vector<Matrix> regular_elements(SandwichContext const&  ctx,
                                       std::optional<size_t> s      = {},
                                       std::uint64_t budget = default_enumeration_budget);
  std::vector<Matrix> idempotents(SandwichContext const& ctx,
                                  std::optional<size_t> s      = {},
                                  std::uint64_t budget = default_enumeration_budget);

  struct CongruenceReport {
    CheckReport   check;
    std::uint64_t u_size = 0;
    std::uint64_t p_size = 0;
  };

  // U = M_{(m-r)xr} x M_r x M_{rx(n-r)} with (M,A,N)(K,B,L) = (M,AB,L):
  // checks that [.,.,.] : U -> P is an epimorphism whose kernel is the
  // relation A = B, MA = KB, AN = BL, and that this relation is a congruence.
  CongruenceReport man_congruence_check(SandwichContext const& ctx,
                                        std::uint64_t budget = default_enumeration_budget);

  // psi injective on P with image {(Y, Z) : JY = ZJ, Y in PJ, Z in JP},
  // and phi_1 psi_1 = phi_2 psi_2 = phi.
  CheckReport pullback_check(SandwichContext const& ctx,
                             std::uint64_t budget = default_enumeration_budget);

  struct HhatReport {
    size_t        s          = 0;
    std::uint64_t size       = 0;  // |H^|
    std::uint64_t hclasses   = 0;  // H^J-classes inside
    std::uint64_t hclass_size = 0;  // common size, 0 if not uniform
    bool          is_group_phi = false;  // H_phi(X) is a group in M_r
    std::uint64_t group_hclasses = 0;   // inner H^J-classes that are groups
    // Rectangular group coordinates (group case only).
    std::uint64_t rows = 0, cols = 0;
    CheckReport   check;
  };

  HhatReport hhat_structure(SandwichContext const& ctx,
                            Matrix const&          x,
                            std::uint64_t budget = default_enumeration_budget);

  // A witness isomorphism M^A_mn -> M^B_kl.
  struct IsoWitness {
    enum class Kind { conjugation, bijection } kind = Kind::conjugation;
    std::optional<std::vector<Elem>> field_map;  // conjugation across moduli

    Matrix apply(SandwichContext const& from,
                 SandwichContext const& to,
                 Matrix const&          x) const;
  };

  struct IsoVerdict {
    bool                      isomorphic = false;
    std::string               reason;
    std::optional<IsoWitness> witness;
  };

  IsoVerdict classify_iso(SandwichContext const& left, SandwichContext const& right);

  // Exhaustively checks that the witness is a bijective homomorphism.
  CheckReport verify_witness(SandwichContext const& left,
                             SandwichContext const& right,
                             IsoWitness const&      w,
                             std::uint64_t budget = default_enumeration_budget);

  // Multiplication table of M_mn^J on all q^{mn} matrices, indexed by
  // encoding (normalized coordinates).
  SemigroupTable sandwich_table(SandwichContext const& ctx,
                                size_t                 budget = 4096);

  // Every [M, I_r, N] satisfies X * E * Z = X * Z for all X, Z.
  CheckReport mididentity_check(SandwichContext const& ctx,
                                std::uint64_t budget = default_enumeration_budget);

  // Brute-force RP(P): the a in P whose variant (P, x a y) is regular;
  // checks RP(P) = D_r^J. Throws BudgetExceeded when |P| > max_p.
  CheckReport rp_check(SandwichContext const& ctx, size_t max_p = 200);

}  // namespace linsand
