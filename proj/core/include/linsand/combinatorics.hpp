#pragma once

#include <cstddef>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace linsand {

  using BigInt = boost::multiprecision::cpp_int;

  BigInt ipow(unsigned q, size_t e);
  // [s]_q = 1 + q + ... + q^{s-1}
  BigInt q_integer(unsigned q, size_t s);
  BigInt q_factorial(unsigned q, size_t s);
  BigInt q_binomial(unsigned q, size_t m, size_t s);
  // |GL_s(q)|
  BigInt gl_order(unsigned q, size_t s);

  // One D-class D_s of the rank stratification of M_mn.
  struct MDClassCounts {
    BigInt nR, nL, nH, hSize, size;
  };
  MDClassCounts mmn_dclass_counts(unsigned q, size_t m, size_t n, size_t s);

  // The regular D^J-class D_s^J of M_mn^J with rank(J) = r.
  struct SandwichCounts {
    BigInt rSize, lSize, hSize;
    BigInt nR, nL, nH;
    BigInt dSize;
    BigInt pSize;
    // Classes of the relation induced by phi: P -> M_r.
    BigInt nRhat, nLhat, nHhat, hhatSize;
  };
  SandwichCounts sandwich_counts(unsigned q, size_t m, size_t n, size_t r, size_t s);
  // |P| = |Reg(M_mn^J)|
  BigInt regular_count(unsigned q, size_t m, size_t n, size_t r);

  // Idempotents of M_mn^J in D_s^J.
  BigInt sandwich_idempotents(unsigned q, size_t m, size_t n, size_t r, size_t s);
  BigInt sandwich_idempotents_total(unsigned q, size_t m, size_t n, size_t r);
  // Idempotents of M_r in D_s(M_r).
  BigInt mr_idempotents(unsigned q, size_t r, size_t s);

  struct RankTarget {
    enum class Kind { full, reg, idem, ideal } kind = Kind::full;
    size_t s = 0;  // for ideal

    static RankTarget parse(std::string const& text);
    std::string       to_string() const;
  };

  // Rank (or idempotent rank) of the target semigroup; throws
  // UnsupportedParameters outside the hypotheses of the formula.
  BigInt rank_formula(unsigned q, size_t m, size_t n, size_t r, RankTarget target);

}  // namespace linsand
