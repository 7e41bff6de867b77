#include "linsand/field.hpp"

#include <charconv>

#include "linsand/error.hpp"

namespace linsand {

  namespace {
    using Poly = std::vector<unsigned>;

    void trim(Poly& a) {
      while (!a.empty() && a.back() == 0) {
        a.pop_back();
      }
    }

    unsigned inv_mod_p(unsigned a, unsigned p) {
      for (unsigned x = 1; x < p; ++x) {
        if ((a * x) % p == 1) {
          return x;
        }
      }
      fail(Errc::divide_by_zero, "no inverse mod p");
    }

    // Remainder of a modulo b over GF(p); b has nonzero leading coefficient.
    Poly poly_mod(Poly a, Poly const& b, unsigned p) {
      trim(a);
      size_t const   db   = b.size() - 1;
      unsigned const lead = inv_mod_p(b.back(), p);
      while (a.size() > db) {
        unsigned const c     = (a.back() * lead) % p;
        size_t const   shift = a.size() - 1 - db;
        for (size_t i = 0; i <= db; ++i) {
          a[shift + i] = (a[shift + i] + p * p - c * b[i] % p) % p;
        }
        trim(a);
      }
      return a;
    }

    Poly poly_mul(Poly const& a, Poly const& b, unsigned p) {
      if (a.empty() || b.empty()) {
        return {};
      }
      Poly c(a.size() + b.size() - 1, 0);
      for (size_t i = 0; i < a.size(); ++i) {
        for (size_t j = 0; j < b.size(); ++j) {
          c[i + j] = (c[i + j] + a[i] * b[j]) % p;
        }
      }
      trim(c);
      return c;
    }

    Poly digits(unsigned rep, unsigned p, unsigned k) {
      Poly a(k, 0);
      for (unsigned i = 0; i < k; ++i) {
        a[i] = rep % p;
        rep /= p;
      }
      trim(a);
      return a;
    }

    unsigned undigits(Poly const& a, unsigned p) {
      unsigned rep = 0;
      for (size_t i = a.size(); i-- > 0;) {
        rep = rep * p + a[i];
      }
      return rep;
    }

    unsigned ipow(unsigned b, unsigned e) {
      unsigned r = 1;
      while (e-- > 0) {
        r *= b;
      }
      return r;
    }
  }  // namespace

  bool is_prime(unsigned n) noexcept {
    if (n < 2) {
      return false;
    }
    for (unsigned d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        return false;
      }
    }
    return true;
  }

  bool is_irreducible(unsigned p, std::vector<unsigned> const& poly) {
    if (!is_prime(p)) {
      fail(Errc::non_prime_characteristic, std::to_string(p) + " is not prime");
    }
    if (poly.size() < 2 || poly.back() != 1) {
      fail(Errc::non_monic, "polynomial must be monic of degree >= 1");
    }
    for (unsigned c : poly) {
      if (c >= p) {
        fail(Errc::domain_error, "coefficient out of range");
      }
    }
    unsigned const d = poly.size() - 1;
    // Trial division by every monic polynomial of degree 1..d/2.
    for (unsigned e = 1; 2 * e <= d; ++e) {
      unsigned const count = ipow(p, e);
      for (unsigned low = 0; low < count; ++low) {
        Poly g = digits(low, p, e);
        g.resize(e + 1, 0);
        g[e] = 1;
        if (poly_mod(poly, g, p).empty()) {
          return false;
        }
      }
    }
    return true;
  }

  std::vector<unsigned> default_modulus(unsigned p, unsigned k) {
    unsigned const count = ipow(p, k);
    for (unsigned low = 0; low < count; ++low) {
      Poly f = digits(low, p, k);
      f.resize(k + 1, 0);
      f[k] = 1;
      if (is_irreducible(p, f)) {
        return f;
      }
    }
    fail(Errc::search_exhausted, "no irreducible polynomial found");
  }

  Field Field::make(unsigned                              p,
                    unsigned                              k,
                    std::optional<std::vector<unsigned>> modulus) {
    if (!is_prime(p)) {
      fail(Errc::non_prime_characteristic, std::to_string(p) + " is not prime");
    }
    if (k == 0) {
      fail(Errc::domain_error, "extension degree must be >= 1");
    }
    unsigned long long q = 1;
    for (unsigned i = 0; i < k; ++i) {
      q *= p;
      if (q > max_order) {
        fail(Errc::domain_error, "field order exceeds 256");
      }
    }
    auto t = std::make_shared<Tables>();
    t->p   = p;
    t->k   = k;
    t->q   = static_cast<unsigned>(q);
    if (k == 1) {
      t->modulus         = {0, 1};
      t->default_modulus = true;
    } else {
      Poly const def = default_modulus(p, k);
      if (modulus) {
        if (modulus->size() != k + 1) {
          fail(Errc::domain_error, "modulus must have k+1 coefficients");
        }
        if (!is_irreducible(p, *modulus)) {
          fail(Errc::reducible_modulus, "modulus is reducible over GF(p)");
        }
        t->modulus = *modulus;
      } else {
        t->modulus = def;
      }
      t->default_modulus = (t->modulus == def);
    }

    unsigned const n = t->q;
    t->add.resize(n * n);
    t->mul.resize(n * n);
    t->neg.resize(n);
    t->inv.assign(n, 0);
    for (unsigned a = 0; a < n; ++a) {
      Poly const pa = digits(a, p, k);
      for (unsigned b = 0; b < n; ++b) {
        Poly const pb = digits(b, p, k);
        Poly       s(k, 0);
        for (unsigned i = 0; i < k; ++i) {
          s[i] = ((i < pa.size() ? pa[i] : 0) + (i < pb.size() ? pb[i] : 0)) % p;
        }
        trim(s);
        t->add[a * n + b] = static_cast<Elem>(undigits(s, p));
        Poly prod         = poly_mul(pa, pb, p);
        if (k > 1) {
          prod = poly_mod(prod, t->modulus, p);
        } else if (!prod.empty()) {
          prod[0] %= p;
          trim(prod);
        }
        t->mul[a * n + b] = static_cast<Elem>(undigits(prod, p));
      }
    }
    for (unsigned a = 0; a < n; ++a) {
      for (unsigned b = 0; b < n; ++b) {
        if (t->add[a * n + b] == 0) {
          t->neg[a] = static_cast<Elem>(b);
        }
        if (t->mul[a * n + b] == 1) {
          t->inv[a] = static_cast<Elem>(b);
        }
      }
    }
    return Field(std::move(t));
  }

  Field Field::parse(std::string_view lit) {
    auto to_uint = [&lit](std::string_view s) {
      unsigned v   = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        fail(Errc::parse_error, "bad field literal '" + std::string(lit) + "'");
      }
      return v;
    };
    auto const caret = lit.find('^');
    if (caret == std::string_view::npos) {
      unsigned const q = to_uint(lit);
      if (is_prime(q)) {
        return make(q, 1);
      }
      for (unsigned p = 2; p <= q && q > 1; ++p) {
        if (!is_prime(p) || q % p != 0) {
          continue;
        }
        unsigned k = 0, r = q;
        while (r % p == 0) {
          r /= p;
          ++k;
        }
        if (r == 1) {
          return make(p, k);
        }
        break;
      }
      fail(Errc::non_prime_characteristic,
           std::to_string(q) + " is not a prime power");
    }
    unsigned const   p     = to_uint(lit.substr(0, caret));
    std::string_view rest  = lit.substr(caret + 1);
    auto const       slash = rest.find('/');
    unsigned const   k     = to_uint(rest.substr(0, slash));
    if (slash == std::string_view::npos) {
      return make(p, k);
    }
    std::vector<unsigned> mod;
    std::string_view      cs = rest.substr(slash + 1);
    while (true) {
      auto const comma = cs.find(',');
      mod.push_back(to_uint(cs.substr(0, comma)));
      if (comma == std::string_view::npos) {
        break;
      }
      cs = cs.substr(comma + 1);
    }
    if (k == 1) {
      return make(p, 1);
    }
    return make(p, k, mod);
  }

  unsigned Field::p() const noexcept {
    return _t->p;
  }
  unsigned Field::k() const noexcept {
    return _t->k;
  }
  unsigned Field::q() const noexcept {
    return _t->q;
  }
  std::vector<unsigned> const& Field::modulus() const noexcept {
    return _t->modulus;
  }

  Elem Field::inv(Elem a) const {
    if (a == 0) {
      fail(Errc::divide_by_zero, "inverse of zero");
    }
    return _t->inv[a];
  }

  Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
    Elem r = 1;
    while (e > 0) {
      if (e & 1) {
        r = mul(r, a);
      }
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  std::vector<Elem> Field::elements() const {
    std::vector<Elem> out(q());
    for (unsigned i = 0; i < q(); ++i) {
      out[i] = static_cast<Elem>(i);
    }
    return out;
  }

  std::string Field::literal() const {
    if (_t->k == 1) {
      return std::to_string(_t->p);
    }
    std::string s = std::to_string(_t->p) + "^" + std::to_string(_t->k);
    if (!_t->default_modulus) {
      s += "/";
      for (size_t i = 0; i < _t->modulus.size(); ++i) {
        s += (i ? "," : "") + std::to_string(_t->modulus[i]);
      }
    }
    return s;
  }

  bool Field::operator==(Field const& that) const noexcept {
    return _t == that._t
           || (_t->p == that._t->p && _t->k == that._t->k
               && _t->modulus == that._t->modulus);
  }

  std::optional<std::vector<Elem>> field_isomorphism(Field const& from,
                                                     Field const& to) {
    if (from.p() != to.p() || from.k() != to.k()) {
      return std::nullopt;
    }
    std::vector<Elem> map(from.q());
    auto const&       f = from.modulus();
    for (unsigned alpha = 0; alpha < to.q(); ++alpha) {
      // Evaluate f(alpha) in `to`; coefficients lie in the prime subfield.
      Elem acc = 0;
      for (size_t i = f.size(); i-- > 0;) {
        acc = to.add(to.mul(acc, static_cast<Elem>(alpha)),
                     static_cast<Elem>(f[i]));
      }
      if (acc != 0 || (from.k() > 1 && alpha < to.p())) {
        continue;
      }
      for (unsigned x = 0; x < from.q(); ++x) {
        Elem     img = 0, pw = 1;
        unsigned rep = x;
        for (unsigned i = 0; i < from.k(); ++i) {
          img = to.add(img, to.mul(static_cast<Elem>(rep % from.p()), pw));
          pw  = to.mul(pw, static_cast<Elem>(alpha));
          rep /= from.p();
        }
        map[x] = img;
      }
      return map;
    }
    return std::nullopt;
  }

}  // namespace linsand
