#include "linsand/combinatorics.hpp"

#include <algorithm>

#include "linsand/error.hpp"

namespace linsand {

  namespace {
    void check_q(unsigned q) {
      if (q < 2) {
        fail(Errc::domain_error, "q must be at least 2");
      }
    }

    void check_sr(size_t s, size_t r, size_t m, size_t n) {
      if (r > std::min(m, n)) {
        fail(Errc::domain_error, "r exceeds min(m, n)");
      }
      if (s > r) {
        fail(Errc::domain_error, "s exceeds r");
      }
    }
  }  // namespace

  BigInt ipow(unsigned q, size_t e) {
    return boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(e));
  }

  BigInt q_integer(unsigned q, size_t s) {
    check_q(q);
    return (ipow(q, s) - 1) / (q - 1);
  }

  BigInt q_factorial(unsigned q, size_t s) {
    BigInt f = 1;
    for (size_t i = 1; i <= s; ++i) {
      f *= q_integer(q, i);
    }
    return f;
  }

  BigInt q_binomial(unsigned q, size_t m, size_t s) {
    check_q(q);
    if (s > m) {
      fail(Errc::domain_error, "q-binomial needs s <= m");
    }
    BigInt num = 1, den = 1;
    for (size_t i = 0; i < s; ++i) {
      num *= ipow(q, m - i) - 1;
      den *= ipow(q, i + 1) - 1;
    }
    return num / den;
  }

  BigInt gl_order(unsigned q, size_t s) {
    check_q(q);
    size_t const pairs = s == 0 ? 0 : s * (s - 1) / 2;
    return ipow(q, pairs) * ipow(q - 1, s) * q_factorial(q, s);
  }

  MDClassCounts mmn_dclass_counts(unsigned q, size_t m, size_t n, size_t s) {
    if (s > std::min(m, n)) {
      fail(Errc::domain_error, "s exceeds min(m, n)");
    }
    MDClassCounts c;
    c.nR    = q_binomial(q, m, s);
    c.nL    = q_binomial(q, n, s);
    c.nH    = c.nR * c.nL;
    c.hSize = gl_order(q, s);
    c.size  = c.nH * c.hSize;
    return c;
  }

  SandwichCounts sandwich_counts(unsigned q, size_t m, size_t n, size_t r, size_t s) {
    check_q(q);
    check_sr(s, r, m, n);
    BigInt const   g  = gl_order(q, s);
    BigInt const   rs = q_binomial(q, r, s);
    SandwichCounts c;
    c.rSize    = ipow(q, s * (n - r)) * g * rs;
    c.lSize    = ipow(q, s * (m - r)) * g * rs;
    c.hSize    = g;
    c.nR       = ipow(q, s * (m - r)) * rs;
    c.nL       = ipow(q, s * (n - r)) * rs;
    c.nH       = c.nR * c.nL;
    c.dSize    = ipow(q, s * (m + n - 2 * r)) * g * rs * rs;
    c.pSize    = regular_count(q, m, n, r);
    c.nRhat    = rs;
    c.nLhat    = rs;
    c.nHhat    = rs * rs;
    c.hhatSize = ipow(q, s * (m + n - 2 * r)) * g;
    return c;
  }

  BigInt regular_count(unsigned q, size_t m, size_t n, size_t r) {
    check_sr(0, r, m, n);
    BigInt total = 0;
    for (size_t s = 0; s <= r; ++s) {
      BigInt const rs = q_binomial(q, r, s);
      total += ipow(q, s * (m + n - 2 * r)) * gl_order(q, s) * rs * rs;
    }
    return total;
  }

  BigInt sandwich_idempotents(unsigned q, size_t m, size_t n, size_t r, size_t s) {
    check_q(q);
    check_sr(s, r, m, n);
    return ipow(q, s * (m + n - r - s)) * q_binomial(q, r, s);
  }

  BigInt sandwich_idempotents_total(unsigned q, size_t m, size_t n, size_t r) {
    BigInt total = 0;
    for (size_t s = 0; s <= r; ++s) {
      total += sandwich_idempotents(q, m, n, r, s);
    }
    return total;
  }

  BigInt mr_idempotents(unsigned q, size_t r, size_t s) {
    check_q(q);
    if (s > r) {
      fail(Errc::domain_error, "s exceeds r");
    }
    return ipow(q, s * (r - s)) * q_binomial(q, r, s);
  }

  RankTarget RankTarget::parse(std::string const& text) {
    if (text == "full") {
      return {Kind::full, 0};
    }
    if (text == "reg") {
      return {Kind::reg, 0};
    }
    if (text == "idem") {
      return {Kind::idem, 0};
    }
    if (text.rfind("ideal:", 0) == 0 && text.size() > 6
        && text.find_first_not_of("0123456789", 6) == std::string::npos) {
      return {Kind::ideal, std::stoul(text.substr(6))};
    }
    fail(Errc::parse_error, "unknown target '" + text + "'");
  }

  std::string RankTarget::to_string() const {
    switch (kind) {
      case Kind::full:
        return "full";
      case Kind::reg:
        return "reg";
      case Kind::idem:
        return "idem";
      case Kind::ideal:
        return "ideal:" + std::to_string(s);
    }
    return "?";
  }

  BigInt rank_formula(unsigned q, size_t m, size_t n, size_t r, RankTarget t) {
    check_q(q);
    check_sr(0, r, m, n);
    size_t const L = std::max(m, n), l = std::min(m, n);
    if (r == m && m == n) {
      fail(Errc::unsupported_parameters,
           "r = m = n: the sandwich semigroup is M_n itself (rank 2 for n = 1, "
           "3 for n >= 2); not covered by the sandwich formulas");
    }
    switch (t.kind) {
      case RankTarget::Kind::full: {
        if (r < l) {
          BigInt total = 0;
          for (size_t s = r + 1; s <= l; ++s) {
            total += mmn_dclass_counts(q, m, n, s).size;
          }
          return total;
        }
        return q_binomial(q, L, l);
      }
      case RankTarget::Kind::reg:
        if (r == 0) {
          fail(Errc::unsupported_parameters, "reg target needs r >= 1");
        }
        return ipow(q, r * (L - r)) + 1;
      case RankTarget::Kind::idem:
        if (r == 0) {
          fail(Errc::unsupported_parameters, "idem target needs r >= 1");
        }
        return ipow(q, r * (L - r)) + q_integer(q, r);
      case RankTarget::Kind::ideal:
        if (t.s > r) {
          fail(Errc::unsupported_parameters, "ideal:s needs s <= r");
        }
        if (t.s == r) {
          return rank_formula(q, m, n, r, {RankTarget::Kind::reg, 0});
        }
        return ipow(q, t.s * (L - r)) * q_binomial(q, r, t.s);
    }
    fail(Errc::unsupported_parameters, "unknown target");
  }

}  // namespace linsand
