#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "linsand/check.hpp"
#include "linsand/matrix.hpp"

namespace linsand {

  inline constexpr size_t default_brute_budget = 4096;

  // A finite partial semigroup presented by hom-sets S_ij (i, j objects).
  // Elements of S_ij are indices 0 .. homset_size(i, j) - 1.
  class PartialSemigroup {
   public:
    virtual ~PartialSemigroup() = default;

    virtual size_t num_objects() const                = 0;
    virtual size_t homset_size(size_t i, size_t j) const = 0;
    // x in S_ij, y in S_jk; returns the index of xy in S_ik.
    virtual size_t multiply(size_t i, size_t j, size_t k, size_t x, size_t y) const = 0;

    virtual std::optional<size_t> identity(size_t) const {
      return std::nullopt;
    }
    // Some y in S_ji with xyx = x; default is a scan of S_ji.
    virtual std::optional<size_t> regular_witness(size_t i, size_t j, size_t x) const;
    virtual std::string describe(size_t i, size_t j, size_t x) const;
  };

  // Matrices over a field whose objects are the given dimensions; the index
  // of a matrix is its encoding.
  class MatrixPartialSemigroup : public PartialSemigroup {
   public:
    MatrixPartialSemigroup(Field f, std::vector<size_t> dims);

    size_t num_objects() const override {
      return _dims.size();
    }
    size_t homset_size(size_t i, size_t j) const override;
    size_t multiply(size_t i, size_t j, size_t k, size_t x, size_t y) const override;
    std::optional<size_t> identity(size_t i) const override;
    std::optional<size_t> regular_witness(size_t i, size_t j, size_t x) const override;
    std::string describe(size_t i, size_t j, size_t x) const override;

    Matrix element(size_t i, size_t j, size_t x) const;
    size_t dim(size_t i) const {
      return _dims.at(i);
    }
    Field const& field() const noexcept {
      return _field;
    }

   private:
    Field               _field;
    std::vector<size_t> _dims;
  };

  // A partial semigroup given by a flat product table over elements
  // 0 .. n-1 (-1 = undefined). Objects and lambda/rho are inferred.
  class TablePartialSemigroup : public PartialSemigroup {
   public:
    explicit TablePartialSemigroup(std::vector<std::vector<long>> table);
    // "n" then n lines of n entries.
    static TablePartialSemigroup parse(std::string_view text);

    size_t num_objects() const override {
      return _num_objects;
    }
    size_t homset_size(size_t i, size_t j) const override;
    size_t multiply(size_t i, size_t j, size_t k, size_t x, size_t y) const override;
    std::optional<size_t> identity(size_t i) const override;
    std::string describe(size_t i, size_t j, size_t x) const override;

    size_t lambda(size_t flat) const {
      return _lambda.at(flat);
    }
    size_t rho(size_t flat) const {
      return _rho.at(flat);
    }
    size_t flat(size_t i, size_t j, size_t x) const;

   private:
    std::vector<std::vector<long>>   _table;
    size_t                           _num_objects = 0;
    std::vector<size_t>              _lambda, _rho, _local;
    std::vector<std::vector<size_t>> _hom;  // i * num_objects + j -> flat ids
    std::vector<std::optional<size_t>> _identity;
  };

  // Multiplication table of an ordinary finite semigroup.
  struct SemigroupTable {
    size_t                     n = 0;
    std::vector<std::uint32_t> prod;

    std::uint32_t operator()(size_t x, size_t y) const noexcept {
      return prod[x * n + y];
    }
  };

  // (S_ij, *_a) with x *_a y = xay, a in S_ji.
  SemigroupTable build_sandwich(PartialSemigroup const& s,
                                size_t                  i,
                                size_t                  j,
                                size_t                  a,
                                size_t budget = default_brute_budget);
  // The local semigroup S_ii under the ordinary product.
  SemigroupTable local_semigroup(PartialSemigroup const& s,
                                 size_t                  i,
                                 size_t budget = default_brute_budget);
  // First non-associative triple, if any.
  std::optional<std::array<size_t, 3>> find_nonassociative(SemigroupTable const& t);

  using Bitset = boost::dynamic_bitset<std::uint64_t>;

  struct GreenDecomposition {
    size_t n = 0;
    // Class ids, numbered in order of least element.
    std::vector<std::uint32_t> R, L, H, D, J;
    // xT^1, T^1x and T^1xT^1 as bitsets indexed by x.
    std::vector<Bitset> right_ideal, left_ideal, ideal;
    std::vector<bool>   regular;

    bool leq_R(size_t x, size_t y) const {
      return right_ideal[y][x];
    }
    bool leq_L(size_t x, size_t y) const {
      return left_ideal[y][x];
    }
    bool leq_J(size_t x, size_t y) const {
      return ideal[y][x];
    }
  };

  GreenDecomposition brute_green(SemigroupTable const& t,
                                 size_t budget = default_brute_budget);

  // Relabels class ids by first occurrence, so equal partitions compare equal.
  std::vector<std::uint32_t> canonical_partition(std::vector<std::uint32_t> const& ids);
  size_t num_classes(std::vector<std::uint32_t> const& ids);

  // Checks the sandwich Green's description against brute force, plus
  // Reg <= P <= P3, P = P3 and closure of Reg under *_a for regular S.
  CheckReport verify_green_sij(PartialSemigroup const& s,
                               size_t                  i,
                               size_t                  j,
                               size_t                  a,
                               size_t budget = default_brute_budget);

  // With a in S_ji, b in S_ij, a = aba and b = bab: (aS_ij a, *_b) and
  // (bS_ji b, *_a) are monoids with identities a and b, and x -> bxb,
  // x -> axa are mutually inverse isomorphisms.
  CheckReport verify_corner_laws(PartialSemigroup const& s,
                                 size_t                  i,
                                 size_t                  j,
                                 size_t                  a,
                                 size_t                  b);

}  // namespace linsand
