#include "spinor/metrology.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace spinor {

namespace {

constexpr double kUnitTolerance = 1e-10;

// Gell-Mann matrices lambda_1..lambda_8 in mode order (-1, 0, +1).
std::array<Eigen::Matrix3cd, 8> gell_mann_matrices() {
  std::array<Eigen::Matrix3cd, 8> out;
  constexpr std::array<Generator, 8> gs{Generator::G1, Generator::G2, Generator::G3, Generator::G4,
                                        Generator::G5, Generator::G6, Generator::G7, Generator::G8};
  for (std::size_t i = 0; i < 8; ++i)
    out[i] = 2.0 * single_particle_matrix(gs[i]);
  return out;
}

GellMannVector embed4(double g1, double g2, double g6, double g7) {
  GellMannVector v = GellMannVector::Zero();
  v(0) = g1;
  v(1) = g2;
  v(5) = g6;
  v(6) = g7;
  return v;
}

void require_unit(const GellMannVector &u) {
  if (std::abs(u.norm() - 1.0) > kUnitTolerance)
    throw std::invalid_argument("rotation direction must be a unit vector");
}

} // namespace

CovarianceCoefficients coefficients_AB(const SpinorState &s) {
  const double n = s.atoms();
  double a_sum = 0.0;
  complex b = 0.0;
  for (std::size_t idx = 0; idx < s.dim(); ++idx) {
    const double k = static_cast<double>(idx);
    a_sum += std::norm(s[idx]) * k * (2.0 * n - 4.0 * k - 1.0);
    if (idx + 1 < s.dim()) {
      const double n0 = n - 2.0 * k;
      b += std::conj(s[idx]) * s[idx + 1] * (k + 1.0) * std::sqrt(n0 * (n0 - 1.0));
    }
  }
  return {0.25 * (n + a_sum), 0.5 * b};
}

std::string branch_label(CovarianceBranch b) {
  switch (b) {
  case CovarianceBranch::lambda_plus: return "Sx/Ay";
  case CovarianceBranch::lambda_minus: return "Sy/Ax";
  case CovarianceBranch::lambda_zero: return "G3G8-null";
  case CovarianceBranch::lambda_one: return "G3G8";
  case CovarianceBranch::g4: return "Jx";
  case CovarianceBranch::g5: return "Jy";
  }
  return "?";
}

std::string direction_label(const GellMannCovariance &cov, CovarianceBranch b) {
  const bool plus = b == CovarianceBranch::lambda_plus;
  if (!plus && b != CovarianceBranch::lambda_minus)
    return branch_label(b);
  const double mag = std::abs(cov.B);
  if (mag == 0.0 || std::abs(cov.B.imag()) <= 1e-12 * mag)
    return (cov.B.real() >= 0.0) == plus ? "Sx/Ay" : "Sy/Ax";
  return plus ? "S/A-rotated+" : "S/A-rotated-";
}

GellMannCovariance covariance_matrix(const SpinorState &s) {
  GellMannCovariance cov;
  const auto [a, b] = coefficients_AB(s);
  cov.A = a;
  cov.B = b;

  double mean = 0.0, second = 0.0, var45 = 0.0;
  for (std::size_t idx = 0; idx < s.dim(); ++idx) {
    const double k = static_cast<double>(idx);
    const double p = std::norm(s[idx]);
    mean += p * k;
    second += p * k * k;
    var45 += p * k * (k + 1.0);
  }
  cov.side_variance = std::max(0.0, second - mean * mean);
  cov.var45 = 0.5 * var45;

  const double re = b.real(), im = b.imag();
  cov.block4 << a, 0.0, re, im,
                0.0, a, -im, re,
                re, -im, a, 0.0,
                im, re, 0.0, a;

  // On |k>: G3 = (3k - N)/2 and G8 = (N - 3k)/(2 sqrt3).
  const double v = cov.side_variance;
  const double r3 = std::sqrt(3.0);
  cov.block2 << 2.25 * v, -0.75 * r3 * v,
                -0.75 * r3 * v, 0.75 * v;
  return cov;
}

GellMannMatrix GellMannCovariance::full() const {
  GellMannMatrix m = GellMannMatrix::Zero();
  constexpr std::array<int, 4> b4{0, 1, 5, 6};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      m(b4[i], b4[j]) = block4(i, j);
  m(2, 2) = block2(0, 0);
  m(2, 7) = block2(0, 1);
  m(7, 2) = block2(1, 0);
  m(7, 7) = block2(1, 1);
  m(3, 3) = var45;
  m(4, 4) = var45;
  return m;
}

std::vector<CovarianceMode> GellMannCovariance::modes() const {
  // With B = 0 the block is A times the identity; pick the real-B frame.
  const double mag = std::abs(B);
  const complex unit = mag > 0.0 ? B / mag : complex(1.0, 0.0);
  const double re = unit.real(), im = unit.imag();
  const double s = 1.0 / std::sqrt(2.0);

  std::vector<CovarianceMode> out;
  out.push_back({lambda_plus(), s * embed4(im, re, 0.0, 1.0), CovarianceBranch::lambda_plus});
  out.push_back({lambda_plus(), s * embed4(re, -im, 1.0, 0.0), CovarianceBranch::lambda_plus});
  out.push_back({lambda_minus(), s * embed4(-im, -re, 0.0, 1.0), CovarianceBranch::lambda_minus});
  out.push_back({lambda_minus(), s * embed4(-re, im, 1.0, 0.0), CovarianceBranch::lambda_minus});

  GellMannVector u0 = GellMannVector::Zero(), u1 = GellMannVector::Zero();
  u0(2) = 0.5;
  u0(7) = 0.5 * std::sqrt(3.0);
  u1(2) = 0.5 * std::sqrt(3.0);
  u1(7) = -0.5;
  out.push_back({0.0, u0, CovarianceBranch::lambda_zero});
  out.push_back({lambda_one(), u1, CovarianceBranch::lambda_one});

  GellMannVector g4 = GellMannVector::Zero(), g5 = GellMannVector::Zero();
  g4(3) = 1.0;
  g5(4) = 1.0;
  out.push_back({var45, g4, CovarianceBranch::g4});
  out.push_back({var45, g5, CovarianceBranch::g5});
  return out;
}

OptimalRotation qfi_optimal(const GellMannCovariance &cov) {
  const auto modes = cov.modes();
  double top = 0.0;
  for (const auto &m : modes)
    top = std::max(top, m.eigenvalue);
  OptimalRotation out{4.0 * top, {}, {}};
  for (const auto &m : modes) {
    if (std::abs(m.eigenvalue - top) <= kDegeneracyTolerance * std::max(top, 1e-300)) {
      out.directions.push_back(m.direction);
      out.branches.push_back(m.branch);
    }
  }
  return out;
}

OptimalRotation qfi_optimal(const SpinorState &s) { return qfi_optimal(covariance_matrix(s)); }

double qfi_direction(const GellMannCovariance &cov, const GellMannVector &u) {
  require_unit(u);
  return 4.0 * u.dot(cov.full() * u);
}

double qfi_direction(const SpinorState &s, const GellMannVector &u) {
  return qfi_direction(covariance_matrix(s), u);
}

GellMannVector gell_mann_direction(Generator g) {
  static const auto lambdas = gell_mann_matrices();
  const Eigen::Matrix3cd m = single_particle_matrix(g);
  GellMannVector u;
  for (int i = 0; i < 8; ++i)
    u(i) = (m * lambdas[static_cast<std::size_t>(i)]).trace().real();
  return u;
}

double full_space_variance_oracle(const SpinorState &s, Generator g) {
  const FullSpace space(s.size());
  return 4.0 * variance(space.generator(g), space.embed(s));
}

GellMannMatrix full_space_covariance_oracle(const SpinorState &s) {
  const FullSpace space(s.size());
  const Eigen::VectorXcd psi = space.embed(s);
  constexpr std::array<Generator, 8> gs{Generator::G1, Generator::G2, Generator::G3, Generator::G4,
                                        Generator::G5, Generator::G6, Generator::G7, Generator::G8};
  std::vector<Eigen::VectorXcd> applied;
  std::array<std::complex<double>, 8> means;
  for (std::size_t i = 0; i < 8; ++i) {
    applied.push_back(space.generator(gs[i]) * psi);
    means[i] = psi.dot(applied.back());
  }
  GellMannMatrix out;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      // <G_i G_j> = (G_i psi)^dag (G_j psi) for Hermitian G_i.
      const auto ij = applied[i].dot(applied[j]);
      out(i, j) = ij.real() - (means[i] * means[j]).real();
    }
  return out;
}

} // namespace spinor
