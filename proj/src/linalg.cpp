#include "hopspin/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hopspin {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << what << ": shape mismatch (" << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
       << b.cols() << ")";
    throw std::invalid_argument(os.str());
  }
}

void require_hermitian(const ComplexMatrix& m, const char* what) {
  if (!m.square()) {
    throw std::invalid_argument(std::string(what) + ": matrix is not square");
  }
  if (!is_hermitian(m)) {
    std::ostringstream os;
    os.precision(3);
    os << what << ": matrix is not Hermitian (max|M - M^dagger| = " << hermitian_asymmetry(m)
       << ", max|M| = " << max_abs(m) << ")";
    throw std::invalid_argument(os.str());
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (r != c) sum += std::norm(a(r, c));
    }
  }
  return std::sqrt(sum);
}

}  // namespace

// ---------------------------------------------------------------- matrices

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::initializer_list<Complex> entries)
    : rows_(rows), cols_(cols), data_(entries) {
  if (data_.size() != rows * cols) {
    throw std::invalid_argument("ComplexMatrix: entry count does not match shape");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "matrix addition");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "matrix subtraction");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matrix product: inner dimensions differ");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex{}) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
    }
  }
  return out;
}

// ------------------------------------------------------------------ states

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::out_of_range("StateVector::basis: index out of range");
  StateVector s(dim);
  s[index] = 1.0;
  return s;
}

double StateVector::norm_squared() const noexcept {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return sum;
}

double StateVector::norm() const noexcept { return std::sqrt(norm_squared()); }

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("StateVector::normalized: zero vector");
  StateVector out = *this;
  out *= 1.0 / n;
  return out;
}

StateVector& StateVector::operator+=(const StateVector& other) {
  if (other.dim() != dim()) throw std::invalid_argument("state addition: dimension mismatch");
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += other.amps_[i];
  return *this;
}

StateVector& StateVector::operator*=(Complex scale) {
  for (auto& a : amps_) a *= scale;
  return *this;
}

StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
StateVector operator*(Complex scale, StateVector s) { return s *= scale; }

StateVector operator*(const ComplexMatrix& m, const StateVector& s) {
  if (m.cols() != s.dim()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
  StateVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Complex acc{};
    for (std::size_t c = 0; c < m.cols(); ++c) acc += m(r, c) * s[c];
    out[r] = acc;
  }
  return out;
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner product: dimension mismatch");
  Complex acc{};
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

Complex expectation(const ComplexMatrix& m, const StateVector& s) { return inner(s, m * s); }

ComplexMatrix outer(const StateVector& s) {
  ComplexMatrix rho(s.dim(), s.dim());
  for (std::size_t r = 0; r < s.dim(); ++r) {
    for (std::size_t c = 0; c < s.dim(); ++c) rho(r, c) = s[r] * std::conj(s[c]);
  }
  return rho;
}

StateVector kron(const StateVector& a, const StateVector& b) {
  StateVector out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
  }
  return out;
}

// ------------------------------------------------------------- operators

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar) {
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex x = a(ar, ac);
      if (x == Complex{}) continue;
      for (std::size_t br = 0; br < b.rows(); ++br) {
        for (std::size_t bc = 0; bc < b.cols(); ++bc) {
          out(ar * b.rows() + br, ac * b.cols() + bc) = x * b(br, bc);
        }
      }
    }
  }
  return out;
}

ComplexMatrix kron(std::initializer_list<ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

Complex trace(const ComplexMatrix& m) {
  if (!m.square()) throw std::invalid_argument("trace: matrix is not square");
  Complex acc{};
  for (std::size_t i = 0; i < m.rows(); ++i) acc += m(i, i);
  return acc;
}

double max_abs(const ComplexMatrix& m) noexcept {
  double best = 0.0;
  for (const auto& z : m.entries()) best = std::max(best, std::abs(z));
  return best;
}

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_difference");
  double best = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    best = std::max(best, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return best;
}

double frobenius_norm(const ComplexMatrix& m) noexcept {
  double sum = 0.0;
  for (const auto& z : m.entries()) sum += std::norm(z);
  return std::sqrt(sum);
}

double hermitian_asymmetry(const ComplexMatrix& m) {
  if (!m.square()) throw std::invalid_argument("hermitian_asymmetry: matrix is not square");
  double best = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = r; c < m.cols(); ++c) {
      best = std::max(best, std::abs(m(r, c) - std::conj(m(c, r))));
    }
  }
  return best;
}

bool is_hermitian(const ComplexMatrix& m, double relative_tolerance) {
  if (!m.square()) return false;
  return hermitian_asymmetry(m) <= relative_tolerance * max_abs(m);
}

// --------------------------------------------------------- eigensystems

StateVector Eigensystem::vector(std::size_t k) const {
  StateVector v(vectors.rows());
  for (std::size_t r = 0; r < vectors.rows(); ++r) v[r] = vectors(r, k);
  return v;
}

ComplexMatrix Eigensystem::reconstruct() const {
  return vectors * ComplexMatrix::diagonal(values) * vectors.adjoint();
}

Eigensystem hermitian_eigensystem(const ComplexMatrix& m) {
  require_hermitian(m, "hermitian_eigensystem");
  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  ComplexMatrix v = ComplexMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  const double scale = frobenius_norm(m);
  const double target = 1e-12 * scale;
  constexpr int kMaxSweeps = 100;

  int sweep = 0;
  while (scale > 0.0 && off_diagonal_norm(a) > target) {
    if (++sweep > kMaxSweeps) {
      throw std::runtime_error("hermitian_eigensystem: Jacobi iteration did not converge");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        // Phase-rotate to a real symmetric 2x2 block, then apply the
        // classical Jacobi rotation.
        const Complex phase = apq / g;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * g);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex g_pq = s * phase;              // G(p,q)
        const Complex g_qp = -s * std::conj(phase);  // G(q,p)

        // A <- A G
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * c + akq * g_qp;
          a(k, q) = akp * g_pq + akq * c;
        }
        // A <- G^dagger A
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk + std::conj(g_qp) * aqk;
          a(q, k) = std::conj(g_pq) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        // V <- V G
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * c + vkq * g_qp;
          v(k, q) = vkp * g_pq + vkq * c;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  Eigensystem eig;
  eig.values.resize(n);
  eig.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    eig.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) eig.vectors(r, k) = v(r, order[k]);
  }
  return eig;
}

StateVector propagate(const StateVector& state, const Eigensystem& eig, double t) {
  if (state.dim() != eig.dim()) throw std::invalid_argument("propagate: dimension mismatch");
  const std::size_t n = eig.dim();
  const ComplexMatrix& v = eig.vectors;
  std::vector<Complex> coeff(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{};
    for (std::size_t r = 0; r < n; ++r) acc += std::conj(v(r, k)) * state[r];
    coeff[k] = acc * std::exp(-kI * (eig.values[k] * t));
  }
  StateVector out(n);
  for (std::size_t r = 0; r < n; ++r) {
    Complex acc{};
    for (std::size_t k = 0; k < n; ++k) acc += v(r, k) * coeff[k];
    out[r] = acc;
  }
  return out;
}

ComplexMatrix evolution_operator(const Eigensystem& eig, double t) {
  const std::size_t n = eig.dim();
  ComplexMatrix scaled = eig.vectors;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex phase = std::exp(-kI * (eig.values[k] * t));
    for (std::size_t r = 0; r < n; ++r) scaled(r, k) *= phase;
  }
  return scaled * eig.vectors.adjoint();
}

// ------------------------------------------------------ reduced operators

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  if (dims.empty() || keep.empty()) {
    throw std::invalid_argument("partial_trace: dims and keep must be nonempty");
  }
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>{});
  if (!rho.square() || rho.rows() != total) {
    throw std::invalid_argument("partial_trace: matrix dimension does not match subsystem dims");
  }
  std::vector<bool> kept(dims.size(), false);
  for (auto k : keep) {
    if (k >= dims.size() || kept[k]) {
      throw std::invalid_argument("partial_trace: invalid or repeated subsystem index");
    }
    kept[k] = true;
  }

  const std::size_t nsub = dims.size();
  // Strides of the full index and of the reduced index.
  std::vector<std::size_t> stride(nsub), reduced_stride(nsub, 0);
  std::size_t acc = 1;
  for (std::size_t i = nsub; i-- > 0;) {
    stride[i] = acc;
    acc *= dims[i];
  }
  std::size_t reduced_dim = 1;
  for (std::size_t i = nsub; i-- > 0;) {
    if (kept[i]) {
      reduced_stride[i] = reduced_dim;
      reduced_dim *= dims[i];
    }
  }

  // For each full index: its reduced (kept) index and its traced-out key.
  std::vector<std::size_t> kept_index(total), traced_key(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t k = 0, tr = 0;
    for (std::size_t i = 0; i < nsub; ++i) {
      const std::size_t digit = (idx / stride[i]) % dims[i];
      if (kept[i]) {
        k += digit * reduced_stride[i];
      } else {
        tr = tr * dims[i] + digit;
      }
    }
    kept_index[idx] = k;
    traced_key[idx] = tr;
  }

  ComplexMatrix out(reduced_dim, reduced_dim);
  for (std::size_t r = 0; r < total; ++r) {
    for (std::size_t c = 0; c < total; ++c) {
      if (traced_key[r] == traced_key[c]) out(kept_index[r], kept_index[c]) += rho(r, c);
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t dim_a, std::size_t dim_b,
                                Subsystem part) {
  if (!rho.square() || rho.rows() != dim_a * dim_b) {
    throw std::invalid_argument("partial_transpose: matrix dimension does not match dims");
  }
  ComplexMatrix out(rho.rows(), rho.cols());
  for (std::size_t a1 = 0; a1 < dim_a; ++a1) {
    for (std::size_t b1 = 0; b1 < dim_b; ++b1) {
      for (std::size_t a2 = 0; a2 < dim_a; ++a2) {
        for (std::size_t b2 = 0; b2 < dim_b; ++b2) {
          const Complex value = rho(a1 * dim_b + b1, a2 * dim_b + b2);
          if (part == Subsystem::A) {
            out(a2 * dim_b + b1, a1 * dim_b + b2) = value;
          } else {
            out(a1 * dim_b + b2, a2 * dim_b + b1) = value;
          }
        }
      }
    }
  }
  return out;
}

double trace_norm_hermitian(const ComplexMatrix& m) {
  const auto eig = hermitian_eigensystem(m);
  double sum = 0.0;
  for (double v : eig.values) sum += std::abs(v);
  return sum;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const auto eig = hermitian_eigensystem(m);
  std::vector<double> roots(eig.values.size());
  std::transform(eig.values.begin(), eig.values.end(), roots.begin(),
                 [](double v) { return std::sqrt(std::max(v, 0.0)); });
  return eig.vectors * ComplexMatrix::diagonal(roots) * eig.vectors.adjoint();
}

double uhlmann_fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  require_same_shape(rho, sigma, "uhlmann_fidelity");
  const ComplexMatrix root = psd_sqrt(rho);
  ComplexMatrix inner_product = root * sigma * root;
  // Symmetrize away round-off before the eigensolve.
  inner_product = 0.5 * (inner_product + inner_product.adjoint());
  const auto eig = hermitian_eigensystem(inner_product);
  double sum = 0.0;
  for (double v : eig.values) sum += std::sqrt(std::max(v, 0.0));
  return std::min(1.0, sum * sum);
}

}  // namespace hopspin
