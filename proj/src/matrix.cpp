#include "ncgeo/matrix.hpp"

#include <sstream>

#include "ncgeo/error.hpp"

namespace ncgeo {

Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionError("vector add: size mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionError("vector sub: size mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec operator*(const Scalar& s, const Vec& v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
  m_rows = rows.size();
  m_cols = m_rows ? rows.begin()->size() : 0;
  m_data.reserve(m_rows * m_cols);
  for (const auto& r : rows) {
    if (r.size() != m_cols) throw DimensionError("Matrix: ragged initializer");
    for (const auto& x : r) m_data.push_back(x);
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
  return m;
}

Matrix Matrix::scalar(std::size_t n, const Scalar& s) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = s;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
  if (rows.empty()) return Matrix();
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.m_cols) throw DimensionError("from_rows: ragged rows");
    for (std::size_t j = 0; j < m.m_cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_cols(const std::vector<Vec>& cols) {
  if (cols.empty()) return Matrix();
  Matrix m(cols.front().size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != m.m_rows) throw DimensionError("from_cols: ragged columns");
    for (std::size_t i = 0; i < m.m_rows; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

Vec Matrix::row(std::size_t i) const {
  Vec r(m_cols);
  for (std::size_t j = 0; j < m_cols; ++j) r[j] = at(i, j);
  return r;
}

Vec Matrix::col(std::size_t j) const {
  Vec c(m_rows);
  for (std::size_t i = 0; i < m_rows; ++i) c[i] = at(i, j);
  return c;
}

Matrix Matrix::transpose() const {
  Matrix t(m_cols, m_rows);
  for (std::size_t i = 0; i < m_rows; ++i)
    for (std::size_t j = 0; j < m_cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix Matrix::conj() const {
  Matrix c(m_rows, m_cols);
  for (std::size_t i = 0; i < m_rows; ++i)
    for (std::size_t j = 0; j < m_cols; ++j) c.at(i, j) = at(i, j).conj();
  return c;
}

Matrix Matrix::conj_transpose() const { return conj().transpose(); }

bool Matrix::is_zero() const {
  for (const auto& x : m_data)
    if (!x.is_zero()) return false;
  return true;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (m_rows != o.m_rows || m_cols != o.m_cols)
    throw DimensionError("matrix add: shape mismatch");
  Matrix r(m_rows, m_cols);
  for (std::size_t k = 0; k < m_data.size(); ++k) r.m_data[k] = m_data[k] + o.m_data[k];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (m_rows != o.m_rows || m_cols != o.m_cols)
    throw DimensionError("matrix sub: shape mismatch");
  Matrix r(m_rows, m_cols);
  for (std::size_t k = 0; k < m_data.size(); ++k) r.m_data[k] = m_data[k] - o.m_data[k];
  return r;
}

Matrix Matrix::operator-() const {
  Matrix r(m_rows, m_cols);
  for (std::size_t k = 0; k < m_data.size(); ++k) r.m_data[k] = -m_data[k];
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (m_cols != o.m_rows) throw DimensionError("matrix mul: shape mismatch");
  Matrix r(m_rows, o.m_cols);
  for (std::size_t i = 0; i < m_rows; ++i)
    for (std::size_t k = 0; k < m_cols; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.m_cols; ++j) {
        const Scalar& b = o.at(k, j);
        if (!b.is_zero()) r.at(i, j) += a * b;
      }
    }
  return r;
}

Matrix operator*(const Scalar& s, const Matrix& m) {
  Matrix r(m.m_rows, m.m_cols);
  for (std::size_t k = 0; k < m.m_data.size(); ++k) r.m_data[k] = s * m.m_data[k];
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  return m_rows == o.m_rows && m_cols == o.m_cols && m_data == o.m_data;
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != m_cols) throw DimensionError("matrix apply: size mismatch");
  Vec r(m_rows);
  for (std::size_t i = 0; i < m_rows; ++i) {
    Scalar acc;
    for (std::size_t j = 0; j < m_cols; ++j) {
      if (!at(i, j).is_zero() && !v[j].is_zero()) acc += at(i, j) * v[j];
    }
    r[i] = acc;
  }
  return r;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("hstack: row mismatch");
  Matrix r(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
  }
  return r;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw DimensionError("vstack: column mismatch");
  Matrix r(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r.at(a.rows() + i, j) = b.at(i, j);
  return r;
}

Matrix Matrix::submatrix(std::size_t row0, std::size_t col0, std::size_t nrows,
                         std::size_t ncols) const {
  if (row0 + nrows > m_rows || col0 + ncols > m_cols)
    throw DimensionError("submatrix: out of range");
  Matrix r(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < ncols; ++j) r.at(i, j) = at(row0 + i, col0 + j);
  return r;
}

std::string Matrix::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < m_rows; ++i) {
    os << (i == 0 ? "[" : " ") << "[";
    for (std::size_t j = 0; j < m_cols; ++j) os << (j ? ", " : "") << at(i, j).str();
    os << "]" << (i + 1 == m_rows ? "]" : "\n");
  }
  if (m_rows == 0) os << "[]";
  return os.str();
}

namespace {

// Clears denominators row by row so the Bareiss recurrence runs over Z[i].
void scale_rows_integral(Matrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    mpz_class l(1);
    for (std::size_t j = 0; j < a.cols(); ++j) {
      mpz_class d1 = a.at(i, j).re().get_den();
      mpz_class d2 = a.at(i, j).im().get_den();
      mpz_class g;
      mpz_lcm(g.get_mpz_t(), l.get_mpz_t(), d1.get_mpz_t());
      mpz_lcm(l.get_mpz_t(), g.get_mpz_t(), d2.get_mpz_t());
    }
    if (l == 1) continue;
    Scalar f = Scalar(Rational(l));
    for (std::size_t j = 0; j < a.cols(); ++j) a.at(i, j) = f * a.at(i, j);
  }
}

}  // namespace

Matrix rref(const Matrix& m, std::vector<std::size_t>& pivots) {
  // Exact one-pass Gauss-Jordan on a denominator-cleared copy.  Rows with a
  // zero head are never touched, which keeps the cost proportional to the
  // fill-in on the sparse block systems this library generates; GMP's
  // canonicalization bounds coefficient growth at every step.
  Matrix a = m;
  scale_rows_integral(a);
  pivots.clear();
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a.at(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(a.at(r, j), a.at(p, j));
    const Scalar inv = a.at(r, c).inverse();
    a.at(r, c) = Scalar(1);
    for (std::size_t j = c + 1; j < cols; ++j)
      if (!a.at(r, j).is_zero()) a.at(r, j) = inv * a.at(r, j);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Scalar f = a.at(i, c);
      if (f.is_zero()) continue;
      a.at(i, c) = Scalar(0);
      for (std::size_t j = c + 1; j < cols; ++j)
        if (!a.at(r, j).is_zero()) a.at(i, j) -= f * a.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return a;
}

Matrix rref(const Matrix& m) {
  std::vector<std::size_t> pivots;
  return rref(m, pivots);
}

std::size_t rank(const Matrix& m) {
  std::vector<std::size_t> pivots;
  rref(m, pivots);
  return pivots.size();
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw DimensionError("solve: rhs length mismatch");
  Matrix aug = Matrix::hstack(m, Matrix::from_cols({b}));
  std::vector<std::size_t> pivots;
  Matrix r = rref(aug, pivots);
  for (std::size_t p : pivots)
    if (p == m.cols()) return std::nullopt;  // pivot in rhs column: inconsistent
  Vec x(m.cols());
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = r.at(k, m.cols());
  return x;
}

std::optional<Matrix> solve(const Matrix& m, const Matrix& b) {
  if (b.rows() != m.rows()) throw DimensionError("solve: rhs rows mismatch");
  Matrix aug = Matrix::hstack(m, b);
  std::vector<std::size_t> pivots;
  Matrix r = rref(aug, pivots);
  for (std::size_t p : pivots)
    if (p >= m.cols()) return std::nullopt;
  Matrix x(m.cols(), b.cols());
  for (std::size_t k = 0; k < pivots.size(); ++k)
    for (std::size_t j = 0; j < b.cols(); ++j) x.at(pivots[k], j) = r.at(k, m.cols() + j);
  return x;
}

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("inverse: matrix not square");
  Matrix aug = Matrix::hstack(m, Matrix::identity(m.rows()));
  std::vector<std::size_t> pivots;
  Matrix r = rref(aug, pivots);
  if (pivots.size() != m.rows() || (m.rows() && pivots.back() != m.rows() - 1))
    throw SingularError("inverse: singular matrix");
  return r.submatrix(0, m.cols(), m.rows(), m.cols());
}

Subspace Subspace::zero(std::size_t ambient_dim) {
  return Subspace(ambient_dim, Matrix(0, ambient_dim), {});
}

Subspace Subspace::full(std::size_t ambient_dim) {
  std::vector<std::size_t> piv(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) piv[i] = i;
  return Subspace(ambient_dim, Matrix::identity(ambient_dim), std::move(piv));
}

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<Vec>& vectors) {
  for (const auto& v : vectors)
    if (v.size() != ambient_dim) throw DimensionError("Subspace::span: bad vector length");
  if (vectors.empty()) return zero(ambient_dim);
  std::vector<std::size_t> pivots;
  Matrix r = rref(Matrix::from_rows(vectors), pivots);
  Matrix basis = r.submatrix(0, 0, pivots.size(), ambient_dim);
  return Subspace(ambient_dim, std::move(basis), std::move(pivots));
}

Subspace Subspace::row_space(const Matrix& m) {
  std::vector<Vec> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return span(m.cols(), rows);
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  if (v.size() != m_ambient) throw DimensionError("Subspace: bad vector length");
  // RREF basis: candidate coordinates are the pivot-column entries of v.
  Vec coords(dim());
  for (std::size_t k = 0; k < dim(); ++k) coords[k] = v[m_pivots[k]];
  Vec residual = v;
  for (std::size_t k = 0; k < dim(); ++k) {
    if (coords[k].is_zero()) continue;
    for (std::size_t j = 0; j < m_ambient; ++j)
      residual[j] -= coords[k] * m_basis.at(k, j);
  }
  if (!is_zero(residual)) return std::nullopt;
  return coords;
}

bool Subspace::contains(const Vec& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& other) const {
  if (other.m_ambient != m_ambient) throw DimensionError("Subspace: ambient mismatch");
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.m_basis.row(i))) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& other) const {
  if (other.m_ambient != m_ambient) throw DimensionError("Subspace: ambient mismatch");
  std::vector<Vec> rows;
  rows.reserve(dim() + other.dim());
  for (std::size_t i = 0; i < dim(); ++i) rows.push_back(m_basis.row(i));
  for (std::size_t i = 0; i < other.dim(); ++i) rows.push_back(other.m_basis.row(i));
  return span(m_ambient, rows);
}

Subspace kernel(const Matrix& m) {
  std::vector<std::size_t> pivots;
  Matrix r = rref(m, pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols());
    v[f] = Scalar(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r.at(k, f);
    basis.push_back(std::move(v));
  }
  return Subspace::span(m.cols(), basis);
}

Subspace image(const Matrix& m) {
  std::vector<Vec> cols;
  cols.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.col(j));
  return Subspace::span(m.rows(), cols);
}

QuotientMap quotient(std::size_t ambient_dim, const Subspace& s) {
  if (s.ambient_dim() != ambient_dim)
    throw DimensionError("quotient: subspace ambient dimension mismatch");
  QuotientMap q;
  q.m_ambient = ambient_dim;
  q.m_kernel = s;
  std::vector<bool> is_pivot(ambient_dim, false);
  for (std::size_t p : s.pivots()) is_pivot[p] = true;
  const std::size_t qdim = ambient_dim - s.dim();
  Matrix proj(qdim, ambient_dim);
  Matrix sect(ambient_dim, qdim);
  // Quotient coordinates: the non-pivot coordinates of v reduced mod the
  // kernel basis (subtract v[pivot_k] * basisrow_k).
  std::size_t out = 0;
  for (std::size_t j = 0; j < ambient_dim; ++j) {
    if (is_pivot[j]) continue;
    proj.at(out, j) = Scalar(1);
    for (std::size_t k = 0; k < s.dim(); ++k)
      proj.at(out, s.pivots()[k]) = -s.basis().at(k, j);
    sect.at(j, out) = Scalar(1);
    ++out;
  }
  q.m_projection = std::move(proj);
  q.m_section = std::move(sect);
  return q;
}

}  // namespace ncgeo
