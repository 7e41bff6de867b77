#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linsand/field.hpp"

namespace linsand {

  inline constexpr std::uint64_t default_enumeration_budget = 1u << 20;

  // Dense row-major matrix over a finite field. Either dimension may be 0.
  class Matrix {
   public:
    Matrix(Field f, size_t rows, size_t cols);
    Matrix(Field f, size_t rows, size_t cols, std::vector<Elem> entries);

    static Matrix identity(Field const& f, size_t n);
    // J_{rows,cols,r}: I_r in the top-left corner, zeros elsewhere.
    static Matrix corner_identity(Field const& f, size_t rows, size_t cols, size_t r);
    static Matrix decode(Field const& f, size_t rows, size_t cols, std::uint64_t code);

    Field const& field() const noexcept {
      return _field;
    }
    size_t rows() const noexcept {
      return _rows;
    }
    size_t cols() const noexcept {
      return _cols;
    }
    Elem operator()(size_t i, size_t j) const noexcept {
      return _e[i * _cols + j];
    }
    Elem& at(size_t i, size_t j) noexcept {
      return _e[i * _cols + j];
    }
    std::vector<Elem> const& entries() const noexcept {
      return _e;
    }

    // Base-q number whose most significant digit is entry (0,0).
    std::uint64_t encode() const;

    Matrix transpose() const;
    Matrix block(size_t r0, size_t c0, size_t nr, size_t nc) const;
    bool   is_zero() const noexcept;

    bool operator==(Matrix const& that) const noexcept {
      return _rows == that._rows && _cols == that._cols && _e == that._e;
    }
    std::strong_ordering operator<=>(Matrix const& that) const noexcept;

   private:
    Field             _field;
    size_t            _rows, _cols;
    std::vector<Elem> _e;
  };

  // Number of m x n matrices over GF(q); throws BudgetExceeded past 2^63.
  std::uint64_t matrix_count(unsigned q, size_t m, size_t n);

  Matrix operator*(Matrix const& x, Matrix const& y);
  Matrix operator+(Matrix const& x, Matrix const& y);
  Matrix operator-(Matrix const& x, Matrix const& y);
  Matrix scale(Elem c, Matrix const& x);

  // [x | y] and [x ; y].
  Matrix hcat(Matrix const& x, Matrix const& y);
  Matrix vcat(Matrix const& x, Matrix const& y);

  struct Rref {
    Matrix              R;
    Matrix              T;
    std::vector<size_t> pivots;
  };

  // R = T * X with T invertible and R in reduced row echelon form.
  Rref   rref(Matrix const& x);
  size_t rank(Matrix const& x);
  std::optional<Matrix> inverse(Matrix const& x);
  bool is_invertible(Matrix const& x);

  // Canonical form of a subspace of F^ambient: its RREF basis.
  struct SubspaceKey {
    size_t ambient = 0;
    Matrix basis;

    size_t dim() const noexcept {
      return basis.rows();
    }
    bool operator==(SubspaceKey const& that) const noexcept {
      return ambient == that.ambient && basis == that.basis;
    }
    std::strong_ordering operator<=>(SubspaceKey const& that) const noexcept;
    // Rows separated by ';', entries by ' '.
    std::string to_string() const;
  };

  SubspaceKey row_space_key(Matrix const& x);
  SubspaceKey col_space_key(Matrix const& x);
  // Whether the subspace `small` is contained in `big`.
  bool contains(SubspaceKey const& big, SubspaceKey const& small);

  // G with XGX = X and GXG = G.
  Matrix inner_inverse(Matrix const& x);

  struct RankNormalForm {
    Matrix U;
    Matrix V;
    size_t r;
  };

  // A = U * J_{n,m,r} * V for A of shape n x m.
  RankNormalForm rank_normal_form(Matrix const& a);

  // [M, A, N] = [A, AN; MA, MAN].
  Matrix man_compose(Matrix const& M, Matrix const& A, Matrix const& N);

  // Some solution Y of A * Y = B, lexicographically least in row-major
  // entry order; nullopt if the system is inconsistent.
  std::optional<Matrix> solve_right(Matrix const& a, Matrix const& b);
  // Least solution Y of Y * A = B.
  std::optional<Matrix> solve_left(Matrix const& a, Matrix const& b);

  // Visits every m x n matrix in encoding order; optionally only rank == s.
  void for_each_matrix(Field const&                       f,
                       size_t                             m,
                       size_t                             n,
                       std::function<void(Matrix const&)> fn,
                       std::optional<size_t>              rank_filter = {},
                       std::uint64_t budget = default_enumeration_budget);

  std::vector<Matrix> enumerate_matrices(
      Field const&          f,
      size_t                m,
      size_t                n,
      std::optional<size_t> rank_filter = {},
      std::uint64_t         budget      = default_enumeration_budget);

  // Single-line form "[a b;c d]" for messages and keys.
  std::string to_compact_string(Matrix const& x);

  // Text format: "m n <field literal>" then m lines of n entries.
  std::string         to_text(Matrix const& x);
  Matrix              matrix_from_text(std::string_view text);
  // Blocks separated by blank lines.
  std::string         to_text(std::vector<Matrix> const& xs);
  std::vector<Matrix> matrices_from_text(std::string_view text);

  struct MatrixHash {
    size_t operator()(Matrix const& x) const noexcept;
  };
  struct SubspaceKeyHash {
    size_t operator()(SubspaceKey const& k) const noexcept;
  };

}  // namespace linsand
