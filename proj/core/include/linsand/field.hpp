#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace linsand {

  // An element of GF(p^k): the polynomial a0 + a1 x + ... stored as
  // a0 + a1 p + ... (base p, little endian).
  using Elem = std::uint8_t;

  bool is_prime(unsigned n) noexcept;

  // Coefficients are listed constant term first. Throws NonMonic unless the
  // last coefficient is 1 and the degree is at least 1.
  bool is_irreducible(unsigned p, std::vector<unsigned> const& poly);

  class Field {
   public:
    static constexpr unsigned max_order = 256;

    // modulus: k+1 coefficients, constant term first. When absent and k > 1
    // the monic irreducible of degree k with least base-p encoding is used.
    static Field make(unsigned                              p,
                      unsigned                              k = 1,
                      std::optional<std::vector<unsigned>> modulus = {});

    // "p", "p^k", "p^k/c0,...,ck"; a bare prime power such as "4" is
    // accepted as shorthand for "2^2".
    static Field parse(std::string_view literal);

    unsigned p() const noexcept;
    unsigned k() const noexcept;
    unsigned q() const noexcept;
    std::vector<unsigned> const& modulus() const noexcept;

    Elem add(Elem a, Elem b) const noexcept {
      return _t->add[a * _t->q + b];
    }
    Elem sub(Elem a, Elem b) const noexcept {
      return _t->add[a * _t->q + _t->neg[b]];
    }
    Elem mul(Elem a, Elem b) const noexcept {
      return _t->mul[a * _t->q + b];
    }
    Elem neg(Elem a) const noexcept {
      return _t->neg[a];
    }
    Elem inv(Elem a) const;
    Elem pow(Elem a, std::uint64_t e) const noexcept;

    Elem const* add_row(Elem a) const noexcept {
      return _t->add.data() + a * _t->q;
    }
    Elem const* mul_row(Elem a) const noexcept {
      return _t->mul.data() + a * _t->q;
    }

    std::vector<Elem> elements() const;

    // Canonical literal: "p" for prime fields, "p^k" when the modulus is the
    // default one, "p^k/c0,...,ck" otherwise.
    std::string literal() const;

    bool operator==(Field const& that) const noexcept;
    bool operator!=(Field const& that) const noexcept {
      return !(*this == that);
    }

   private:
    struct Tables {
      unsigned              p, k, q;
      std::vector<unsigned> modulus;
      bool                  default_modulus;
      std::vector<Elem>     add, mul, neg, inv;
    };

    explicit Field(std::shared_ptr<Tables const> t) : _t(std::move(t)) {}

    std::shared_ptr<Tables const> _t;
  };

  // Least-encoding monic irreducible of degree k over GF(p).
  std::vector<unsigned> default_modulus(unsigned p, unsigned k);

  // A field isomorphism GF -> GF' (same order), as a lookup table, or
  // nullopt when the orders differ.
  std::optional<std::vector<Elem>> field_isomorphism(Field const& from,
                                                     Field const& to);

}  // namespace linsand
