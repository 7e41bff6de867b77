#include "linsand/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "linsand/error.hpp"

namespace linsand {

  namespace {
    using Vec = std::vector<Elem>;

    std::string dims(Matrix const& x) {
      return std::to_string(x.rows()) + "x" + std::to_string(x.cols());
    }

    // In-place Gauss-Jordan on a rows x cols array. If t is non-null it is a
    // rows x rows array receiving the same row operations.
    std::vector<size_t> reduce(Field const& f,
                               Elem*        a,
                               size_t       rows,
                               size_t       cols,
                               Elem*        t) {
      std::vector<size_t> pivots;
      size_t              cur = 0;
      for (size_t c = 0; c < cols && cur < rows; ++c) {
        size_t piv = cur;
        while (piv < rows && a[piv * cols + c] == 0) {
          ++piv;
        }
        if (piv == rows) {
          continue;
        }
        if (piv != cur) {
          std::swap_ranges(a + piv * cols, a + (piv + 1) * cols, a + cur * cols);
          if (t) {
            std::swap_ranges(t + piv * rows, t + (piv + 1) * rows, t + cur * rows);
          }
        }
        Elem const s = f.inv(a[cur * cols + c]);
        if (s != 1) {
          Elem const* ms = f.mul_row(s);
          for (size_t j = c; j < cols; ++j) {
            a[cur * cols + j] = ms[a[cur * cols + j]];
          }
          if (t) {
            for (size_t j = 0; j < rows; ++j) {
              t[cur * rows + j] = ms[t[cur * rows + j]];
            }
          }
        }
        for (size_t i = 0; i < rows; ++i) {
          Elem const e = a[i * cols + c];
          if (i == cur || e == 0) {
            continue;
          }
          Elem const* mc = f.mul_row(f.neg(e));
          for (size_t j = c; j < cols; ++j) {
            a[i * cols + j] = f.add(a[i * cols + j], mc[a[cur * cols + j]]);
          }
          if (t) {
            for (size_t j = 0; j < rows; ++j) {
              t[i * rows + j] = f.add(t[i * rows + j], mc[t[cur * rows + j]]);
            }
          }
        }
        pivots.push_back(c);
        ++cur;
      }
      return pivots;
    }

    // Basis of {v : a v = 0}, one vector per free column of rref(a).
    std::vector<Vec> null_space(Matrix const& a) {
      Field const&     f = a.field();
      Vec              e = a.entries();
      auto const       piv = reduce(f, e.data(), a.rows(), a.cols(), nullptr);
      std::vector<Vec> out;
      size_t           pi = 0;
      for (size_t c = 0; c < a.cols(); ++c) {
        if (pi < piv.size() && piv[pi] == c) {
          ++pi;
          continue;
        }
        Vec v(a.cols(), 0);
        v[c] = 1;
        for (size_t i = 0; i < piv.size(); ++i) {
          v[piv[i]] = f.neg(e[i * a.cols() + c]);
        }
        out.push_back(std::move(v));
      }
      return out;
    }

    // The lexicographically least element of v0 + span(basis).
    Vec lex_least(Field const& f, Vec v0, std::vector<Vec> const& basis) {
      if (basis.empty()) {
        return v0;
      }
      size_t const len = v0.size();
      Vec          b;
      for (auto const& row : basis) {
        b.insert(b.end(), row.begin(), row.end());
      }
      auto const piv = reduce(f, b.data(), basis.size(), len, nullptr);
      for (size_t i = 0; i < piv.size(); ++i) {
        Elem const c = v0[piv[i]];
        if (c == 0) {
          continue;
        }
        Elem const* mc = f.mul_row(f.neg(c));
        for (size_t j = 0; j < len; ++j) {
          v0[j] = f.add(v0[j], mc[b[i * len + j]]);
        }
      }
      return v0;
    }
  }  // namespace

  Matrix::Matrix(Field f, size_t rows, size_t cols)
      : _field(std::move(f)), _rows(rows), _cols(cols), _e(rows * cols, 0) {}

  Matrix::Matrix(Field f, size_t rows, size_t cols, std::vector<Elem> entries)
      : _field(std::move(f)), _rows(rows), _cols(cols), _e(std::move(entries)) {
    if (_e.size() != rows * cols) {
      fail(Errc::dimension_mismatch, "entry count does not match shape");
    }
    for (Elem x : _e) {
      if (x >= _field.q()) {
        fail(Errc::domain_error, "entry out of range for field");
      }
    }
  }

  Matrix Matrix::identity(Field const& f, size_t n) {
    return corner_identity(f, n, n, n);
  }

  Matrix Matrix::corner_identity(Field const& f, size_t rows, size_t cols, size_t r) {
    if (r > std::min(rows, cols)) {
      fail(Errc::dimension_mismatch, "corner identity rank exceeds shape");
    }
    Matrix x(f, rows, cols);
    for (size_t i = 0; i < r; ++i) {
      x.at(i, i) = 1;
    }
    return x;
  }

  std::uint64_t matrix_count(unsigned q, size_t m, size_t n) {
    unsigned __int128 c = 1;
    for (size_t i = 0; i < m * n; ++i) {
      c *= q;
      if (c > (static_cast<unsigned __int128>(1) << 63)) {
        fail(Errc::budget_exceeded, "q^(mn) exceeds 2^63");
      }
    }
    return static_cast<std::uint64_t>(c);
  }

  Matrix Matrix::decode(Field const& f, size_t rows, size_t cols, std::uint64_t code) {
    if (code >= matrix_count(f.q(), rows, cols)) {
      fail(Errc::domain_error, "encoding out of range");
    }
    Matrix x(f, rows, cols);
    for (size_t i = rows * cols; i-- > 0;) {
      x._e[i] = static_cast<Elem>(code % f.q());
      code /= f.q();
    }
    return x;
  }

  std::uint64_t Matrix::encode() const {
    matrix_count(_field.q(), _rows, _cols);
    std::uint64_t code = 0;
    for (Elem x : _e) {
      code = code * _field.q() + x;
    }
    return code;
  }

  Matrix Matrix::transpose() const {
    Matrix t(_field, _cols, _rows);
    for (size_t i = 0; i < _rows; ++i) {
      for (size_t j = 0; j < _cols; ++j) {
        t._e[j * _rows + i] = _e[i * _cols + j];
      }
    }
    return t;
  }

  Matrix Matrix::block(size_t r0, size_t c0, size_t nr, size_t nc) const {
    if (r0 + nr > _rows || c0 + nc > _cols) {
      fail(Errc::dimension_mismatch, "block outside matrix");
    }
    Matrix b(_field, nr, nc);
    for (size_t i = 0; i < nr; ++i) {
      for (size_t j = 0; j < nc; ++j) {
        b._e[i * nc + j] = _e[(r0 + i) * _cols + c0 + j];
      }
    }
    return b;
  }

  bool Matrix::is_zero() const noexcept {
    return std::all_of(_e.begin(), _e.end(), [](Elem x) { return x == 0; });
  }

  std::strong_ordering Matrix::operator<=>(Matrix const& that) const noexcept {
    if (auto c = _rows <=> that._rows; c != 0) {
      return c;
    }
    if (auto c = _cols <=> that._cols; c != 0) {
      return c;
    }
    return _e <=> that._e;
  }

  Matrix operator*(Matrix const& x, Matrix const& y) {
    if (x.cols() != y.rows()) {
      fail(Errc::dimension_mismatch,
           "cannot multiply " + dims(x) + " by " + dims(y));
    }
    Field const& f = x.field();
    size_t const m = x.rows(), k = x.cols(), n = y.cols();
    Vec          out(m * n, 0);
    auto const&  a = x.entries();
    auto const&  b = y.entries();
    for (size_t i = 0; i < m; ++i) {
      for (size_t l = 0; l < k; ++l) {
        Elem const c = a[i * k + l];
        if (c == 0) {
          continue;
        }
        Elem const* mc = f.mul_row(c);
        for (size_t j = 0; j < n; ++j) {
          out[i * n + j] = f.add(out[i * n + j], mc[b[l * n + j]]);
        }
      }
    }
    return Matrix(f, m, n, std::move(out));
  }

  Matrix operator+(Matrix const& x, Matrix const& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) {
      fail(Errc::dimension_mismatch, "cannot add " + dims(x) + " and " + dims(y));
    }
    Vec out(x.entries().size());
    for (size_t i = 0; i < out.size(); ++i) {
      out[i] = x.field().add(x.entries()[i], y.entries()[i]);
    }
    return Matrix(x.field(), x.rows(), x.cols(), std::move(out));
  }

  Matrix operator-(Matrix const& x, Matrix const& y) {
    return x + scale(x.field().neg(1), y);
  }

  Matrix scale(Elem c, Matrix const& x) {
    Vec out(x.entries().size());
    for (size_t i = 0; i < out.size(); ++i) {
      out[i] = x.field().mul(c, x.entries()[i]);
    }
    return Matrix(x.field(), x.rows(), x.cols(), std::move(out));
  }

  Matrix hcat(Matrix const& x, Matrix const& y) {
    if (x.rows() != y.rows()) {
      fail(Errc::dimension_mismatch, "hcat row mismatch");
    }
    Matrix out(x.field(), x.rows(), x.cols() + y.cols());
    for (size_t i = 0; i < x.rows(); ++i) {
      for (size_t j = 0; j < x.cols(); ++j) {
        out.at(i, j) = x(i, j);
      }
      for (size_t j = 0; j < y.cols(); ++j) {
        out.at(i, x.cols() + j) = y(i, j);
      }
    }
    return out;
  }

  Matrix vcat(Matrix const& x, Matrix const& y) {
    if (x.cols() != y.cols()) {
      fail(Errc::dimension_mismatch, "vcat column mismatch");
    }
    Vec e = x.entries();
    e.insert(e.end(), y.entries().begin(), y.entries().end());
    return Matrix(x.field(), x.rows() + y.rows(), x.cols(), std::move(e));
  }

  Rref rref(Matrix const& x) {
    Vec    a = x.entries();
    Matrix t = Matrix::identity(x.field(), x.rows());
    Vec    te = t.entries();
    auto   piv = reduce(x.field(), a.data(), x.rows(), x.cols(), te.data());
    return Rref{Matrix(x.field(), x.rows(), x.cols(), std::move(a)),
                Matrix(x.field(), x.rows(), x.rows(), std::move(te)),
                std::move(piv)};
  }

  size_t rank(Matrix const& x) {
    if (x.rows() == 0 || x.cols() == 0) {
      return 0;
    }
    Vec a = x.entries();
    return reduce(x.field(), a.data(), x.rows(), x.cols(), nullptr).size();
  }

  std::optional<Matrix> inverse(Matrix const& x) {
    if (x.rows() != x.cols()) {
      return std::nullopt;
    }
    auto red = rref(x);
    if (red.pivots.size() != x.rows()) {
      return std::nullopt;
    }
    return red.T;
  }

  bool is_invertible(Matrix const& x) {
    return x.rows() == x.cols() && rank(x) == x.rows();
  }

  std::strong_ordering SubspaceKey::operator<=>(SubspaceKey const& that) const noexcept {
    if (auto c = ambient <=> that.ambient; c != 0) {
      return c;
    }
    return basis <=> that.basis;
  }

  SubspaceKey row_space_key(Matrix const& x) {
    Vec        a   = x.entries();
    auto const piv = reduce(x.field(), a.data(), x.rows(), x.cols(), nullptr);
    a.resize(piv.size() * x.cols());
    return SubspaceKey{x.cols(), Matrix(x.field(), piv.size(), x.cols(), std::move(a))};
  }

  SubspaceKey col_space_key(Matrix const& x) {
    return row_space_key(x.transpose());
  }

  bool contains(SubspaceKey const& big, SubspaceKey const& small) {
    if (big.ambient != small.ambient) {
      fail(Errc::dimension_mismatch, "subspaces of different ambient spaces");
    }
    if (small.dim() > big.dim()) {
      return false;
    }
    if (small.dim() == 0) {
      return true;
    }
    return rank(vcat(big.basis, small.basis)) == big.dim();
  }

  RankNormalForm rank_normal_form(Matrix const& a) {
    Field const& f   = a.field();
    auto         red = rref(a);
    size_t const r   = red.pivots.size();
    Matrix       V(f, a.cols(), a.cols());
    for (size_t i = 0; i < r; ++i) {
      for (size_t j = 0; j < a.cols(); ++j) {
        V.at(i, j) = red.R(i, j);
      }
    }
    size_t row = r, pi = 0;
    for (size_t c = 0; c < a.cols(); ++c) {
      if (pi < r && red.pivots[pi] == c) {
        ++pi;
        continue;
      }
      V.at(row++, c) = 1;
    }
    return RankNormalForm{*inverse(red.T), std::move(V), r};
  }

  Matrix inner_inverse(Matrix const& x) {
    auto const   nf = rank_normal_form(x);
    Field const& f  = x.field();
    return *inverse(nf.V)
           * Matrix::corner_identity(f, x.cols(), x.rows(), nf.r)
           * *inverse(nf.U);
  }

  Matrix man_compose(Matrix const& M, Matrix const& A, Matrix const& N) {
    size_t const r = A.rows();
    if (A.cols() != r || M.cols() != r || N.rows() != r) {
      fail(Errc::dimension_mismatch, "inconsistent [M,A,N] blocks");
    }
    Matrix const MA = M * A;
    Matrix const AN = A * N;
    return vcat(hcat(A, AN), hcat(MA, MA * N));
  }

  std::optional<Matrix> solve_right(Matrix const& a, Matrix const& b) {
    if (a.rows() != b.rows()) {
      fail(Errc::dimension_mismatch, "solve_right row mismatch");
    }
    Field const& f   = a.field();
    auto const   red = rref(a);
    Matrix const tb  = red.T * b;
    size_t const r   = red.pivots.size();
    for (size_t i = r; i < tb.rows(); ++i) {
      for (size_t j = 0; j < tb.cols(); ++j) {
        if (tb(i, j) != 0) {
          return std::nullopt;
        }
      }
    }
    size_t const rows = a.cols(), cols = b.cols();
    Vec          y0(rows * cols, 0);
    for (size_t i = 0; i < r; ++i) {
      for (size_t j = 0; j < cols; ++j) {
        y0[red.pivots[i] * cols + j] = tb(i, j);
      }
    }
    std::vector<Vec> basis;
    for (auto const& v : null_space(a)) {
      for (size_t j = 0; j < cols; ++j) {
        Vec k(rows * cols, 0);
        for (size_t i = 0; i < rows; ++i) {
          k[i * cols + j] = v[i];
        }
        basis.push_back(std::move(k));
      }
    }
    return Matrix(f, rows, cols, lex_least(f, std::move(y0), basis));
  }

  std::optional<Matrix> solve_left(Matrix const& a, Matrix const& b) {
    if (a.cols() != b.cols()) {
      fail(Errc::dimension_mismatch, "solve_left column mismatch");
    }
    auto const yt = solve_right(a.transpose(), b.transpose());
    if (!yt) {
      return std::nullopt;
    }
    Field const&     f    = a.field();
    size_t const     rows = b.rows(), cols = a.rows();
    std::vector<Vec> basis;
    for (auto const& u : null_space(a.transpose())) {
      for (size_t i = 0; i < rows; ++i) {
        Vec k(rows * cols, 0);
        std::copy(u.begin(), u.end(), k.begin() + i * cols);
        basis.push_back(std::move(k));
      }
    }
    return Matrix(f, rows, cols, lex_least(f, yt->transpose().entries(), basis));
  }

  void for_each_matrix(Field const&                       f,
                       size_t                             m,
                       size_t                             n,
                       std::function<void(Matrix const&)> fn,
                       std::optional<size_t>              rank_filter,
                       std::uint64_t                      budget) {
    std::uint64_t const count = matrix_count(f.q(), m, n);
    if (count > budget) {
      fail(Errc::budget_exceeded,
           "enumerating " + std::to_string(count) + " matrices exceeds budget "
               + std::to_string(budget));
    }
    Matrix       x(f, m, n);
    size_t const len = m * n;
    for (std::uint64_t c = 0; c < count; ++c) {
      if (!rank_filter || rank(x) == *rank_filter) {
        fn(x);
      }
      for (size_t i = len; i-- > 0;) {
        Elem& e = x.at(i / n, i % n);
        if (++e < f.q()) {
          break;
        }
        e = 0;
      }
    }
  }

  std::vector<Matrix> enumerate_matrices(Field const&          f,
                                         size_t                m,
                                         size_t                n,
                                         std::optional<size_t> rank_filter,
                                         std::uint64_t         budget) {
    std::vector<Matrix> out;
    for_each_matrix(
        f, m, n, [&out](Matrix const& x) { out.push_back(x); }, rank_filter, budget);
    return out;
  }

  std::string to_compact_string(Matrix const& x) {
    std::string s = "[";
    for (size_t i = 0; i < x.rows(); ++i) {
      if (i) {
        s += ';';
      }
      for (size_t j = 0; j < x.cols(); ++j) {
        if (j) {
          s += ' ';
        }
        s += std::to_string(x(i, j));
      }
    }
    return s + "]";
  }

  std::string SubspaceKey::to_string() const {
    return to_compact_string(basis);
  }

  std::string to_text(Matrix const& x) {
    std::string s = std::to_string(x.rows()) + " " + std::to_string(x.cols()) + " "
                    + x.field().literal() + "\n";
    if (x.cols() == 0) {
      return s;
    }
    for (size_t i = 0; i < x.rows(); ++i) {
      for (size_t j = 0; j < x.cols(); ++j) {
        if (j) {
          s += ' ';
        }
        s += std::to_string(x(i, j));
      }
      s += '\n';
    }
    return s;
  }

  std::string to_text(std::vector<Matrix> const& xs) {
    std::string s;
    for (size_t i = 0; i < xs.size(); ++i) {
      if (i) {
        s += '\n';
      }
      s += to_text(xs[i]);
    }
    return s;
  }

  namespace {
    std::vector<std::string> split_lines(std::string_view text) {
      std::vector<std::string> lines;
      std::string              cur;
      for (char c : text) {
        if (c == '\n') {
          lines.push_back(cur);
          cur.clear();
        } else if (c != '\r') {
          cur += c;
        }
      }
      if (!cur.empty()) {
        lines.push_back(cur);
      }
      return lines;
    }

    bool blank(std::string const& s) {
      return s.find_first_not_of(" \t") == std::string::npos;
    }

    Matrix parse_block(std::vector<std::string> const& lines, size_t& pos) {
      std::istringstream head(lines[pos++]);
      long long          m = -1, n = -1;
      std::string        lit, extra;
      if (!(head >> m >> n >> lit) || (head >> extra) || m < 0 || n < 0) {
        fail(Errc::parse_error, "bad matrix header line");
      }
      Field const       f = Field::parse(lit);
      std::vector<Elem> e;
      size_t const      body = (n == 0) ? 0 : static_cast<size_t>(m);
      for (size_t i = 0; i < body; ++i) {
        if (pos >= lines.size()) {
          fail(Errc::parse_error, "missing matrix rows");
        }
        std::istringstream row(lines[pos++]);
        long long          v;
        size_t             count = 0;
        while (row >> v) {
          if (v < 0 || v >= static_cast<long long>(f.q())) {
            fail(Errc::parse_error, "entry out of range");
          }
          e.push_back(static_cast<Elem>(v));
          ++count;
        }
        if (!row.eof() || count != static_cast<size_t>(n)) {
          fail(Errc::parse_error, "wrong number of entries in row");
        }
      }
      return Matrix(f, m, n, std::move(e));
    }
  }  // namespace

  Matrix matrix_from_text(std::string_view text) {
    auto xs = matrices_from_text(text);
    if (xs.size() != 1) {
      fail(Errc::parse_error, "expected exactly one matrix");
    }
    return xs.front();
  }

  std::vector<Matrix> matrices_from_text(std::string_view text) {
    auto const          lines = split_lines(text);
    std::vector<Matrix> out;
    size_t              pos = 0;
    while (true) {
      while (pos < lines.size() && blank(lines[pos])) {
        ++pos;
      }
      if (pos >= lines.size()) {
        break;
      }
      out.push_back(parse_block(lines, pos));
    }
    return out;
  }

  size_t MatrixHash::operator()(Matrix const& x) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    auto          mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ULL;
    };
    mix(x.rows());
    mix(x.cols());
    for (Elem e : x.entries()) {
      mix(e);
    }
    return h;
  }

  size_t SubspaceKeyHash::operator()(SubspaceKey const& k) const noexcept {
    return MatrixHash{}(k.basis) ^ (k.ambient * 0x9e3779b97f4a7c15ULL);
  }

}  // namespace linsand
