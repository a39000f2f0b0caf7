#pragma once

// Fixed-size complex linear algebra for one- and two-qubit operators.
//
// Two-qubit operators use the product basis |++>, |+->, |-+>, |--> quantized
// along the helicity axis k, with the top quark in the first slot (A) and the
// antitop in the second (B). Index of |a b> is 2*a + b.

#include <array>
#include <complex>
#include <cstddef>
#include <span>

namespace ttspin {

using cplx = std::complex<double>;

template <std::size_t N> class SquareMatrix {
public:
  static constexpr std::size_t dim = N;

  constexpr SquareMatrix() = default;

  static constexpr SquareMatrix identity() {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i)
      m(i, i) = 1.0;
    return m;
  }

  static constexpr SquareMatrix diagonal(const std::array<double, N> &d) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i)
      m(i, i) = d[i];
    return m;
  }

  constexpr cplx &operator()(std::size_t i, std::size_t j) { return a_[i * N + j]; }
  constexpr const cplx &operator()(std::size_t i, std::size_t j) const { return a_[i * N + j]; }

  std::span<const cplx, N * N> entries() const { return a_; }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      t += (*this)(i, i);
    return t;
  }

  SquareMatrix adjoint() const {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        m(i, j) = std::conj((*this)(j, i));
    return m;
  }

  SquareMatrix &operator+=(const SquareMatrix &o) {
    for (std::size_t i = 0; i < N * N; ++i)
      a_[i] += o.a_[i];
    return *this;
  }
  SquareMatrix &operator-=(const SquareMatrix &o) {
    for (std::size_t i = 0; i < N * N; ++i)
      a_[i] -= o.a_[i];
    return *this;
  }
  SquareMatrix &operator*=(cplx s) {
    for (auto &x : a_)
      x *= s;
    return *this;
  }

  friend SquareMatrix operator+(SquareMatrix l, const SquareMatrix &r) { return l += r; }
  friend SquareMatrix operator-(SquareMatrix l, const SquareMatrix &r) { return l -= r; }
  friend SquareMatrix operator*(SquareMatrix m, cplx s) { return m *= s; }
  friend SquareMatrix operator*(cplx s, SquareMatrix m) { return m *= s; }
  friend SquareMatrix operator*(double s, SquareMatrix m) { return m *= s; }

  friend SquareMatrix operator*(const SquareMatrix &l, const SquareMatrix &r) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const cplx lik = l(i, k);
        if (lik == cplx{})
          continue;
        for (std::size_t j = 0; j < N; ++j)
          m(i, j) += lik * r(k, j);
      }
    return m;
  }

  friend bool operator==(const SquareMatrix &, const SquareMatrix &) = default;

private:
  std::array<cplx, N * N> a_{};
};

using Matrix2 = SquareMatrix<2>;
using Matrix4 = SquareMatrix<4>;

Matrix4 kron(const Matrix2 &a, const Matrix2 &b);

// Largest entrywise modulus of l - r.
template <std::size_t N> double max_abs_diff(const SquareMatrix<N> &l, const SquareMatrix<N> &r) {
  double d = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      d = std::max(d, std::abs(l(i, j) - r(i, j)));
  return d;
}

// Largest |m(i,j) - conj(m(j,i))|.
template <std::size_t N> double hermiticity_defect(const SquareMatrix<N> &m) {
  return max_abs_diff(m, m.adjoint());
}

/// Pauli operators in the (k, r, n) helicity frame. sigma_k is diagonal
/// (quantization axis), sigma_r is the real off-diagonal one and sigma_n the
/// imaginary antisymmetric one, i.e. (sigma_z, sigma_x, sigma_y).
namespace pauli {
inline const Matrix2 identity = Matrix2::identity();
extern const Matrix2 sigma_k;
extern const Matrix2 sigma_r;
extern const Matrix2 sigma_n;
// Indexed as {k, r, n}.
extern const std::array<Matrix2, 3> frame;
} // namespace pauli

/// Cartesian direction in the (k, r, n) frame.
struct Axis {
  double k = 0.0;
  double r = 0.0;
  double n = 0.0;

  double norm() const;
  Axis normalized() const; // throws ZeroAxis below 1e-12
  double dot(const Axis &o) const { return k * o.k + r * o.r + n * o.n; }

  static constexpr Axis along_k() { return {1.0, 0.0, 0.0}; }
  static constexpr Axis along_r() { return {0.0, 1.0, 0.0}; }
  static constexpr Axis along_n() { return {0.0, 0.0, 1.0}; }

  friend bool operator==(const Axis &, const Axis &) = default;
};

/// Spin operator sigma . axis for a (not necessarily unit) axis.
Matrix2 spin_along(const Axis &axis);

template <std::size_t N> struct EigenSystem {
  std::array<double, N> values{};   // descending
  std::array<std::array<cplx, N>, N> vectors{}; // vectors[i] pairs with values[i]

  SquareMatrix<N> reconstruct() const {
    SquareMatrix<N> m;
    for (std::size_t v = 0; v < N; ++v)
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
          m(i, j) += values[v] * vectors[v][i] * std::conj(vectors[v][j]);
    return m;
  }
};

/// Cyclic complex Jacobi. Throws NonHermitianInput if the input departs from
/// Hermiticity by more than 1e-9. Eigenvalues come back in descending order;
/// each eigenvector is phased so its first non-negligible component is real
/// positive, and exactly degenerate eigenvalues are ordered by comparing
/// those phased vectors lexicographically.
EigenSystem<2> hermitian_eigensystem(const Matrix2 &m);
EigenSystem<4> hermitian_eigensystem(const Matrix4 &m);

/// Tolerances used when validating density matrices.
struct DensityTolerance {
  double trace = 1e-12;
  double negative_eigenvalue = 1e-10;
  double hermiticity = 1e-9;
};

/// A validated density matrix together with its spectrum. The spectrum is
/// computed once at construction and reused by every entropy evaluation.
template <std::size_t N> class DensityMatrix {
public:
  // Throws NonHermitianInput / NotADensityMatrix.
  static DensityMatrix from(const SquareMatrix<N> &m, DensityTolerance tol = {});
  // Same, but reuses an already computed spectrum of m.
  static DensityMatrix from(const SquareMatrix<N> &m, const EigenSystem<N> &spectrum,
                            DensityTolerance tol = {});

  const SquareMatrix<N> &matrix() const noexcept { return m_; }
  const EigenSystem<N> &spectrum() const noexcept { return eig_; }
  double min_eigenvalue() const noexcept { return eig_.values[N - 1]; }
  cplx operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

private:
  DensityMatrix(const SquareMatrix<N> &m, const EigenSystem<N> &e) : m_(m), eig_(e) {}

  SquareMatrix<N> m_;
  EigenSystem<N> eig_;
};

using QubitState = DensityMatrix<2>;
using SpinDensityMatrix = DensityMatrix<4>;

/// Shannon entropy in bits. Entries in (-1e-10, 0] count as zero; anything
/// more negative is rejected with NotADensityMatrix.
double shannon_entropy_bits(std::span<const double> probabilities);

/// -Tr(rho log2 rho), in bits.
template <std::size_t N> double von_neumann_entropy(const DensityMatrix<N> &rho) {
  return shannon_entropy_bits(rho.spectrum().values);
}

enum class Subsystem { A, B };

/// Reduced state of the kept subsystem (A = top, B = antitop).
QubitState partial_trace(const SpinDensityMatrix &rho, Subsystem keep);
Matrix2 partial_trace(const Matrix4 &m, Subsystem keep);

/// Zeroes every off-diagonal entry (dephasing in the product helicity basis).
SpinDensityMatrix dephase_diagonal(const SpinDensityMatrix &rho);
QubitState dephase_diagonal(const QubitState &rho);

/// Projective measurement of spin along `axis` on subsystem A, outcome
/// discarded: sum_i (P_i x I) rho (P_i x I).
SpinDensityMatrix local_dephase(const SpinDensityMatrix &rho, const Axis &axis);

/// Maximally entangled antisymmetric state (|+-> - |-+>)/sqrt(2), as a projector.
Matrix4 singlet_projector();

} // namespace ttspin
