#include "scd/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace scd {

std::size_t product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

ComplexMatrix::ComplexMatrix(std::size_t dim, Dims subsystem_dims) : dim_(dim), data_(dim * dim) {
  set_subsystem_dims(std::move(subsystem_dims));
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::initializer_list<cplx> row_major, Dims subsystem_dims)
    : ComplexMatrix(dim, std::move(subsystem_dims)) {
  if (row_major.size() != dim * dim) {
    throw std::invalid_argument("ComplexMatrix: expected " + std::to_string(dim * dim) + " entries");
  }
  std::copy(row_major.begin(), row_major.end(), data_.begin());
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim, Dims subsystem_dims) {
  ComplexMatrix m(dim, std::move(subsystem_dims));
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag, Dims subsystem_dims) {
  ComplexMatrix m(diag.size(), std::move(subsystem_dims));
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> ket, Dims subsystem_dims) {
  ComplexMatrix m(ket.size(), std::move(subsystem_dims));
  for (std::size_t r = 0; r < ket.size(); ++r)
    for (std::size_t c = 0; c < ket.size(); ++c) m(r, c) = ket[r] * std::conj(ket[c]);
  return m;
}

void ComplexMatrix::set_subsystem_dims(Dims dims) {
  if (!dims.empty()) {
    if (product(dims) != dim_) throw std::invalid_argument("subsystem dims do not multiply to the matrix dimension");
    for (auto d : dims)
      if (d == 0) throw std::invalid_argument("subsystem dimension must be positive");
  }
  dims_ = std::move(dims);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("dimension mismatch in +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("dimension mismatch in -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& x : data_) x *= s;
  return *this;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_, dims_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(dim_, dims_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

double ComplexMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = r; c < dim_; ++c)
      worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return worst;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch in matrix product");
  const std::size_t n = a.dim();
  ComplexMatrix m(n, a.subsystem_dims());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx ark = a(r, k);
      if (ark == cplx{}) continue;
      for (std::size_t c = 0; c < n; ++c) m(r, c) += ark * b(k, c);
    }
  return m;
}

CVector operator*(const ComplexMatrix& a, std::span<const cplx> v) {
  if (a.dim() != v.size()) throw std::invalid_argument("dimension mismatch in matrix-vector product");
  CVector out(v.size());
  for (std::size_t r = 0; r < a.dim(); ++r) {
    cplx acc = 0;
    for (std::size_t c = 0; c < a.dim(); ++c) acc += a(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

cplx inner(std::span<const cplx> u, std::span<const cplx> v) {
  if (u.size() != v.size()) throw std::invalid_argument("dimension mismatch in inner product");
  cplx acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u[i]) * v[i];
  return acc;
}

double norm(std::span<const cplx> v) {
  double acc = 0;
  for (const auto& x : v) acc += std::norm(x);
  return std::sqrt(acc);
}

cplx expectation(const ComplexMatrix& a, std::span<const cplx> v) {
  if (a.dim() != v.size()) throw std::invalid_argument("dimension mismatch in expectation value");
  cplx acc = 0;
  for (std::size_t r = 0; r < a.dim(); ++r) {
    cplx row = 0;
    for (std::size_t c = 0; c < a.dim(); ++c) row += a(r, c) * v[c];
    acc += std::conj(v[r]) * row;
  }
  return acc;
}

cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch in trace product");
  cplx acc = 0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t k = 0; k < a.dim(); ++k) acc += a(r, k) * b(k, r);
  return acc;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  Dims dims;
  const Dims da = a.subsystem_dims().empty() ? Dims{na} : a.subsystem_dims();
  const Dims db = b.subsystem_dims().empty() ? Dims{nb} : b.subsystem_dims();
  dims.insert(dims.end(), da.begin(), da.end());
  dims.insert(dims.end(), db.begin(), db.end());
  ComplexMatrix m(na * nb, std::move(dims));
  for (std::size_t ra = 0; ra < na; ++ra)
    for (std::size_t ca = 0; ca < na; ++ca) {
      const cplx x = a(ra, ca);
      if (x == cplx{}) continue;
      for (std::size_t rb = 0; rb < nb; ++rb)
        for (std::size_t cb = 0; cb < nb; ++cb) m(ra * nb + rb, ca * nb + cb) = x * b(rb, cb);
    }
  return m;
}

CVector kron(std::span<const cplx> a, std::span<const cplx> b) {
  CVector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

namespace pauli {
ComplexMatrix x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix y() { return ComplexMatrix(2, {0.0, cplx(0, -1), cplx(0, 1), 0.0}); }
ComplexMatrix z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }
ComplexMatrix id() { return ComplexMatrix::identity(2); }
}  // namespace pauli

SpinOperators spin_operators(std::size_t d) {
  if (d < 2) throw std::invalid_argument("spin operators need d >= 2");
  const double j = (static_cast<double>(d) - 1.0) / 2.0;
  ComplexMatrix raise(d);
  SpinOperators s{ComplexMatrix(d), ComplexMatrix(d), ComplexMatrix(d)};
  for (std::size_t k = 0; k < d; ++k) {
    const double m = j - static_cast<double>(k);
    s.z(k, k) = m;
    if (k > 0) raise(k - 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  const ComplexMatrix lower = raise.adjoint();
  s.x = 0.5 * (raise + lower);
  s.y = cplx(0, -0.5) * (raise - lower);
  return s;
}

ComplexMatrix embed(const ComplexMatrix& op, std::size_t site, const Dims& dims) {
  if (site >= dims.size() || op.dim() != dims[site]) throw std::invalid_argument("embed: bad site or dimension");
  ComplexMatrix out = site == 0 ? op : ComplexMatrix::identity(dims[0]);
  for (std::size_t k = 1; k < dims.size(); ++k) out = kron(out, k == site ? op : ComplexMatrix::identity(dims[k]));
  out.set_subsystem_dims(dims);
  return out;
}

ComplexMatrix embed_pair(const ComplexMatrix& a, std::size_t i, const ComplexMatrix& b, std::size_t j,
                         const Dims& dims) {
  if (i == j || i >= dims.size() || j >= dims.size()) throw std::invalid_argument("embed_pair: bad sites");
  auto factor = [&](std::size_t k) {
    if (k == i) return a;
    if (k == j) return b;
    return ComplexMatrix::identity(dims[k]);
  };
  ComplexMatrix out = factor(0);
  for (std::size_t k = 1; k < dims.size(); ++k) out = kron(out, factor(k));
  out.set_subsystem_dims(dims);
  return out;
}

namespace {

void require_hermitian(const ComplexMatrix& a) {
  const double tol = 1e-12 * std::max(1.0, a.max_abs());
  if (a.hermiticity_defect() > tol) throw std::invalid_argument("matrix is not Hermitian");
}

// Cyclic Jacobi: each (p, q) rotation is a phase fix diag(1, e^{-i arg a_pq})
// followed by a real Givens rotation that annihilates the now-real a_pq.
void jacobi(ComplexMatrix& a, ComplexMatrix* v) {
  const std::size_t n = a.dim();
  double frob2 = 0;
  for (const auto& x : a.data()) frob2 += std::norm(x);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (off <= 1e-32 * frob2 || off < 1e-300) return;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx b = a(p, q);
        const double ab = std::abs(b);
        if (ab < 1e-300) continue;
        const cplx e = b / ab;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * ab);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx ec = std::conj(e);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * ec * akq;
          a(k, q) = s * akp + c * ec * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * e * aqk;
          a(q, k) = s * apk + c * e * aqk;
        }
        a(p, q) = 0;
        a(q, p) = 0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        if (v) {
          auto& vm = *v;
          for (std::size_t k = 0; k < n; ++k) {
            const cplx vkp = vm(k, p), vkq = vm(k, q);
            vm(k, p) = c * vkp - s * ec * vkq;
            vm(k, q) = s * vkp + c * ec * vkq;
          }
        }
      }
    }
  }
}

}  // namespace

Spectrum hermitian_eig(const ComplexMatrix& a) {
  require_hermitian(a);
  const std::size_t n = a.dim();
  ComplexMatrix work = a;
  ComplexMatrix v = ComplexMatrix::identity(n);
  jacobi(work, &v);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return work(i, i).real() < work(j, j).real(); });
  Spectrum s{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    s.eigenvalues[k] = work(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) s.eigenvectors(r, k) = v(r, order[k]);
  }
  return s;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
  require_hermitian(a);
  ComplexMatrix work = a;
  jacobi(work, nullptr);
  std::vector<double> ev(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) ev[k] = work(k, k).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

ComplexMatrix spectral_function(const Spectrum& s, const std::function<double(double)>& f) {
  const std::size_t n = s.eigenvalues.size();
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(s.eigenvalues[k]);
    if (fk == 0.0) continue;
    for (std::size_t r = 0; r < n; ++r) {
      const cplx vr = fk * s.eigenvectors(r, k);
      for (std::size_t c = 0; c < n; ++c) out(r, c) += vr * std::conj(s.eigenvectors(c, k));
    }
  }
  return out;
}

ComplexMatrix spectral_function(const ComplexMatrix& a, const std::function<double(double)>& f) {
  ComplexMatrix out = spectral_function(hermitian_eig(a), f);
  out.set_subsystem_dims(a.subsystem_dims());
  return out;
}

namespace {

// Mixed-radix digits of a flat index, most significant factor first.
void digits_of(std::size_t index, const Dims& dims, std::vector<std::size_t>& out) {
  out.resize(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    out[k] = index % dims[k];
    index /= dims[k];
  }
}

std::size_t index_of(const std::vector<std::size_t>& digits, const Dims& dims) {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
  return idx;
}

}  // namespace

ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t subsystem) {
  const Dims& dims = rho.subsystem_dims();
  if (dims.empty()) throw std::invalid_argument("partial_transpose: matrix has no subsystem structure");
  if (subsystem >= dims.size()) throw std::invalid_argument("partial_transpose: subsystem index out of range");
  const std::size_t n = rho.dim();
  ComplexMatrix out(n, dims);
  std::vector<std::size_t> rd, cd;
  for (std::size_t r = 0; r < n; ++r) {
    digits_of(r, dims, rd);
    for (std::size_t c = 0; c < n; ++c) {
      digits_of(c, dims, cd);
      std::swap(rd[subsystem], cd[subsystem]);
      out(index_of(rd, dims), index_of(cd, dims)) = rho(r, c);
      std::swap(rd[subsystem], cd[subsystem]);
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::vector<std::size_t>& keep) {
  const Dims& dims = rho.subsystem_dims();
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  if (dims.empty()) throw std::invalid_argument("partial_trace: matrix has no subsystem structure");
  std::vector<std::size_t> kept = keep;
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  for (auto k : kept)
    if (k >= dims.size()) throw std::invalid_argument("partial_trace: subsystem index out of range");
  std::vector<bool> is_kept(dims.size(), false);
  for (auto k : kept) is_kept[k] = true;
  Dims kdims;
  for (auto k : kept) kdims.push_back(dims[k]);
  const std::size_t n = rho.dim();
  ComplexMatrix out(product(kdims), kdims);
  std::vector<std::size_t> rd, cd, kr(kept.size()), kc(kept.size());
  for (std::size_t r = 0; r < n; ++r) {
    digits_of(r, dims, rd);
    for (std::size_t c = 0; c < n; ++c) {
      digits_of(c, dims, cd);
      bool diagonal_in_traced = true;
      for (std::size_t k = 0; k < dims.size() && diagonal_in_traced; ++k)
        if (!is_kept[k] && rd[k] != cd[k]) diagonal_in_traced = false;
      if (!diagonal_in_traced) continue;
      for (std::size_t k = 0; k < kept.size(); ++k) {
        kr[k] = rd[kept[k]];
        kc[k] = cd[kept[k]];
      }
      out(index_of(kr, kdims), index_of(kc, kdims)) += rho(r, c);
    }
  }
  return out;
}

ComplexMatrix haar_unitary(std::size_t d, Rng& rng) {
  if (d < 2) throw std::invalid_argument("haar_unitary: d must be >= 2");
  ComplexMatrix q(d);
  for (auto& x : q.data()) x = rng.complex_normal();
  // Modified Gram-Schmidt leaves R with a positive real diagonal, which is
  // exactly the phase convention that makes Q Haar distributed.
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      cplx proj = 0;
      for (std::size_t r = 0; r < d; ++r) proj += std::conj(q(r, j)) * q(r, k);
      for (std::size_t r = 0; r < d; ++r) q(r, k) -= proj * q(r, j);
    }
    double nrm = 0;
    for (std::size_t r = 0; r < d; ++r) nrm += std::norm(q(r, k));
    nrm = std::sqrt(nrm);
    for (std::size_t r = 0; r < d; ++r) q(r, k) /= nrm;
  }
  return q;
}

ComplexMatrix random_hermitian(std::size_t d, Rng& rng) {
  ComplexMatrix g(d);
  for (auto& x : g.data()) x = rng.complex_normal();
  ComplexMatrix h = 0.5 * (g + g.adjoint());
  return h;
}

cplx determinant(ComplexMatrix a) {
  const std::size_t n = a.dim();
  cplx det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(a(r, k)) > std::abs(a(piv, k))) piv = r;
    if (std::abs(a(piv, k)) == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      const cplx f = a(r, k) / a(k, k);
      for (std::size_t c = k; c < n; ++c) a(r, c) -= f * a(k, c);
    }
  }
  return det;
}

}  // namespace scd
