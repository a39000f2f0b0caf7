#include "ttspin/spin_algebra.hpp"

#include "ttspin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <tuple>

namespace ttspin {

namespace pauli {
const Matrix2 sigma_k = Matrix2::diagonal({1.0, -1.0});
const Matrix2 sigma_r = [] {
  Matrix2 m;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}();
const Matrix2 sigma_n = [] {
  Matrix2 m;
  m(0, 1) = cplx(0.0, -1.0);
  m(1, 0) = cplx(0.0, 1.0);
  return m;
}();
const std::array<Matrix2, 3> frame = {sigma_k, sigma_r, sigma_n};
} // namespace pauli

Matrix4 kron(const Matrix2 &a, const Matrix2 &b) {
  Matrix4 m;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
          m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return m;
}

double Axis::norm() const { return std::sqrt(dot(*this)); }

Axis Axis::normalized() const {
  const double len = norm();
  if (!(len >= 1e-12))
    throw ZeroAxis("measurement axis has norm below 1e-12");
  return {k / len, r / len, n / len};
}

Matrix2 spin_along(const Axis &axis) {
  return axis.k * pauli::sigma_k + axis.r * pauli::sigma_r + axis.n * pauli::sigma_n;
}

namespace {

constexpr double kHermitianTolerance = 1e-9;
constexpr double kOffDiagonalTarget = 1e-14;
constexpr int kMaxSweeps = 100;
constexpr double kDegenerate = 1e-12;

template <std::size_t N> double off_diagonal_norm(const SquareMatrix<N> &a) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j)
        s += std::norm(a(i, j));
  return std::sqrt(s);
}

template <std::size_t N> double frobenius_norm(const SquareMatrix<N> &a) {
  double s = 0.0;
  for (const cplx &x : a.entries())
    s += std::norm(x);
  return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p, q); V accumulates the rotations.
template <std::size_t N>
void rotate(SquareMatrix<N> &a, SquareMatrix<N> &v, std::size_t p, std::size_t q) {
  const cplx apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0)
    return;
  const cplx phase = apq / mag; // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * mag);
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0)
    t = -t;
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  // J restricted to (p, q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
  const cplx jpp = c, jpq = s;
  const cplx jqp = -s * std::conj(phase), jqq = c * std::conj(phase);

  for (std::size_t k = 0; k < N; ++k) {
    const cplx akp = a(k, p), akq = a(k, q);
    a(k, p) = akp * jpp + akq * jqp;
    a(k, q) = akp * jpq + akq * jqq;
    const cplx vkp = v(k, p), vkq = v(k, q);
    v(k, p) = vkp * jpp + vkq * jqp;
    v(k, q) = vkp * jpq + vkq * jqq;
  }
  for (std::size_t k = 0; k < N; ++k) {
    const cplx bpk = a(p, k), bqk = a(q, k);
    a(p, k) = std::conj(jpp) * bpk + std::conj(jqp) * bqk;
    a(q, k) = std::conj(jpq) * bpk + std::conj(jqq) * bqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * mag;
  a(q, q) = aqq + t * mag;
}

template <std::size_t N> EigenSystem<N> jacobi(const SquareMatrix<N> &input) {
  const double defect = hermiticity_defect(input);
  if (!(defect <= kHermitianTolerance)) {
    std::ostringstream os;
    os << "matrix departs from Hermiticity by " << defect;
    throw NonHermitianInput(os.str());
  }

  // Work on the Hermitian part so the rotations see an exactly Hermitian input.
  SquareMatrix<N> a = 0.5 * (input + input.adjoint());
  SquareMatrix<N> v = SquareMatrix<N>::identity();
  const double target = kOffDiagonalTarget * std::max(1.0, frobenius_norm(a));

  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) >= target; ++sweep)
    for (std::size_t p = 0; p + 1 < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q)
        rotate(a, v, p, q);

  EigenSystem<N> raw;
  for (std::size_t i = 0; i < N; ++i) {
    raw.values[i] = a(i, i).real();
    for (std::size_t k = 0; k < N; ++k)
      raw.vectors[i][k] = v(k, i);
    for (std::size_t k = 0; k < N; ++k) {
      const double mag = std::abs(raw.vectors[i][k]);
      if (mag > 1e-12) {
        const cplx unphase = std::conj(raw.vectors[i][k]) / mag;
        for (auto &x : raw.vectors[i])
          x *= unphase;
        raw.vectors[i][k] = mag;
        break;
      }
    }
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return raw.values[l] > raw.values[r]; });

  auto vector_key = [&](std::size_t idx) {
    std::array<std::tuple<double, double>, N> key;
    for (std::size_t k = 0; k < N; ++k)
      key[k] = {raw.vectors[idx][k].real(), raw.vectors[idx][k].imag()};
    return key;
  };
  for (std::size_t lo = 0; lo < N;) {
    std::size_t hi = lo + 1;
    while (hi < N && raw.values[order[hi - 1]] - raw.values[order[hi]] <= kDegenerate)
      ++hi;
    std::sort(order.begin() + lo, order.begin() + hi,
              [&](std::size_t l, std::size_t r) { return vector_key(l) > vector_key(r); });
    lo = hi;
  }

  EigenSystem<N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out.values[i] = raw.values[order[i]];
    out.vectors[i] = raw.vectors[order[i]];
  }
  return out;
}

} // namespace

EigenSystem<2> hermitian_eigensystem(const Matrix2 &m) { return jacobi(m); }
EigenSystem<4> hermitian_eigensystem(const Matrix4 &m) { return jacobi(m); }

template <std::size_t N>
DensityMatrix<N> DensityMatrix<N>::from(const SquareMatrix<N> &m, DensityTolerance tol) {
  const double defect = hermiticity_defect(m);
  if (!(defect <= tol.hermiticity)) {
    std::ostringstream os;
    os << "density matrix departs from Hermiticity by " << defect;
    throw NonHermitianInput(os.str());
  }
  return from(m, hermitian_eigensystem(m), tol);
}

template <std::size_t N>
DensityMatrix<N> DensityMatrix<N>::from(const SquareMatrix<N> &m, const EigenSystem<N> &spectrum,
                                        DensityTolerance tol) {
  const cplx tr = m.trace();
  if (!(std::abs(tr - 1.0) <= tol.trace)) {
    std::ostringstream os;
    os.precision(17);
    os << "trace " << tr.real() << (tr.imag() < 0 ? "" : "+") << tr.imag() << "i differs from 1";
    throw NotADensityMatrix(os.str());
  }
  const double lowest = spectrum.values[N - 1];
  if (!(lowest >= -tol.negative_eigenvalue)) {
    std::ostringstream os;
    os << "eigenvalue " << lowest << " below -" << tol.negative_eigenvalue;
    throw NotADensityMatrix(os.str());
  }
  return DensityMatrix(m, spectrum);
}

template class DensityMatrix<2>;
template class DensityMatrix<4>;

double shannon_entropy_bits(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities) {
    if (p < -1e-10) {
      std::ostringstream os;
      os << "negative probability " << p;
      throw NotADensityMatrix(os.str());
    }
    if (p > 0.0)
      h -= p * std::log2(p);
  }
  return h;
}

Matrix2 partial_trace(const Matrix4 &m, Subsystem keep) {
  Matrix2 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t s = 0; s < 2; ++s)
        out(i, j) += keep == Subsystem::A ? m(2 * i + s, 2 * j + s) : m(2 * s + i, 2 * s + j);
  return out;
}

QubitState partial_trace(const SpinDensityMatrix &rho, Subsystem keep) {
  return QubitState::from(partial_trace(rho.matrix(), keep));
}

SpinDensityMatrix dephase_diagonal(const SpinDensityMatrix &rho) {
  Matrix4 d;
  for (std::size_t i = 0; i < 4; ++i)
    d(i, i) = rho(i, i).real();
  return SpinDensityMatrix::from(d);
}

QubitState dephase_diagonal(const QubitState &rho) {
  return QubitState::from(Matrix2::diagonal({rho(0, 0).real(), rho(1, 1).real()}));
}

SpinDensityMatrix local_dephase(const SpinDensityMatrix &rho, const Axis &axis) {
  const Matrix2 s = spin_along(axis.normalized());
  const Matrix2 up = 0.5 * (pauli::identity + s);
  const Matrix2 down = 0.5 * (pauli::identity - s);
  const Matrix4 pu = kron(up, pauli::identity);
  const Matrix4 pd = kron(down, pauli::identity);
  return SpinDensityMatrix::from(pu * rho.matrix() * pu + pd * rho.matrix() * pd);
}

Matrix4 singlet_projector() {
  Matrix4 m;
  m(1, 1) = 0.5;
  m(2, 2) = 0.5;
  m(1, 2) = -0.5;
  m(2, 1) = -0.5;
  return m;
}

} // namespace ttspin
