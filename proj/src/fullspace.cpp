#include "spinor/fullspace.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spinor {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

constexpr std::array<std::pair<Generator, std::string_view>, 17> kNames{{
    {Generator::G1, "G1"}, {Generator::G2, "G2"}, {Generator::G3, "G3"}, {Generator::G4, "G4"},
    {Generator::G5, "G5"}, {Generator::G6, "G6"}, {Generator::G7, "G7"}, {Generator::G8, "G8"},
    {Generator::Sx, "Sx"}, {Generator::Sy, "Sy"}, {Generator::Sz, "Sz"},
    {Generator::Ax, "Ax"}, {Generator::Ay, "Ay"}, {Generator::Az, "Az"},
    {Generator::Jx, "Jx"}, {Generator::Jy, "Jy"}, {Generator::Jz, "Jz"},
}};

long long key(const ModeOccupations &o) { return static_cast<long long>(o.n_minus) * 4096 + o.n_zero; }

int &slot(ModeOccupations &o, Mode m) {
  switch (m) {
  case Mode::minus: return o.n_minus;
  case Mode::zero: return o.n_zero;
  case Mode::plus: return o.n_plus;
  }
  throw std::logic_error("bad mode");
}

// Mode-space vectors of the symmetric / antisymmetric side modes and a0.
Eigen::Vector3cd mode_vector(double minus, double zero, double plus) {
  return Eigen::Vector3cd(minus, zero, plus);
}

// Two-mode Schwinger pseudospin over (u, v): x = (u^dag v + v^dag u)/2,
// y = (u^dag v - v^dag u)/(2i), z = (u^dag u - v^dag v)/2, where
// u^dag = sum_i u_i a_i^dag.
Eigen::Matrix3cd schwinger(const Eigen::Vector3cd &u, const Eigen::Vector3cd &v, char axis) {
  const Eigen::Matrix3cd uv = u * v.adjoint();
  const Eigen::Matrix3cd vu = v * u.adjoint();
  switch (axis) {
  case 'x': return (uv + vu) / 2.0;
  case 'y': return (uv - vu) / (2.0 * I);
  case 'z': return (u * u.adjoint() - v * v.adjoint()) / 2.0;
  }
  throw std::logic_error("bad axis");
}

} // namespace

std::string_view generator_name(Generator g) {
  for (const auto &[gen, name] : kNames)
    if (gen == g)
      return name;
  return "?";
}

std::optional<Generator> parse_generator(std::string_view name) {
  for (const auto &[gen, n] : kNames)
    if (n == name)
      return gen;
  return std::nullopt;
}

Eigen::Matrix3cd single_particle_matrix(Generator g) {
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  const double s2 = 1.0 / std::sqrt(2.0);
  const Eigen::Vector3cd a0 = mode_vector(0, 1, 0);
  const Eigen::Vector3cd gm = mode_vector(s2, 0, s2);  // g^dag = (a1^dag + a-1^dag)/sqrt2
  const Eigen::Vector3cd hm = mode_vector(-s2, 0, s2); // h^dag = (a1^dag - a-1^dag)/sqrt2
  const Eigen::Vector3cd ap = mode_vector(0, 0, 1);
  const Eigen::Vector3cd am = mode_vector(1, 0, 0);
  switch (g) {
  case Generator::G1: m(0, 1) = m(1, 0) = 0.5; break;
  case Generator::G2: m(0, 1) = -0.5 * I; m(1, 0) = 0.5 * I; break;
  case Generator::G3: m(0, 0) = 0.5; m(1, 1) = -0.5; break;
  case Generator::G4: m(0, 2) = m(2, 0) = 0.5; break;
  case Generator::G5: m(0, 2) = -0.5 * I; m(2, 0) = 0.5 * I; break;
  case Generator::G6: m(1, 2) = m(2, 1) = 0.5; break;
  case Generator::G7: m(1, 2) = -0.5 * I; m(2, 1) = 0.5 * I; break;
  case Generator::G8: {
    const double c = 1.0 / (2.0 * std::sqrt(3.0));
    m(0, 0) = c; m(1, 1) = c; m(2, 2) = -2.0 * c;
    break;
  }
  case Generator::Sx: return schwinger(a0, gm, 'x');
  case Generator::Sy: return schwinger(a0, gm, 'y');
  case Generator::Sz: return schwinger(a0, gm, 'z');
  case Generator::Ax: return schwinger(a0, hm, 'x');
  case Generator::Ay: return schwinger(a0, hm, 'y');
  case Generator::Az: return schwinger(a0, hm, 'z');
  case Generator::Jx: return schwinger(ap, am, 'x');
  case Generator::Jy: return schwinger(ap, am, 'y');
  case Generator::Jz: return schwinger(ap, am, 'z');
  }
  return m;
}

FullSpace::FullSpace(SystemSize n, int cap) : size_(n) {
  if (n.atoms() > cap)
    throw std::invalid_argument("full-space oracle limited to N <= " + std::to_string(cap));
  const int atoms = n.atoms();
  for (int nm = 0; nm <= atoms; ++nm)
    for (int n0 = 0; n0 <= atoms - nm; ++n0) {
      ModeOccupations o{nm, n0, atoms - nm - n0};
      index_.emplace(key(o), basis_.size());
      basis_.push_back(o);
    }
}

std::size_t FullSpace::index_of(const ModeOccupations &occ) const {
  const auto it = index_.find(key(occ));
  if (it == index_.end() || occ.total() != size_.atoms())
    throw std::invalid_argument("occupation not in this Fock space");
  return it->second;
}

Eigen::MatrixXcd FullSpace::hop(Mode to, Mode from) const {
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(dim(), dim());
  for (std::size_t col = 0; col < dim(); ++col) {
    ModeOccupations o = basis_[col];
    const int nf = slot(o, from);
    if (nf == 0)
      continue;
    double amp = std::sqrt(static_cast<double>(nf));
    slot(o, from) -= 1;
    amp *= std::sqrt(static_cast<double>(slot(o, to) + 1));
    slot(o, to) += 1;
    op(static_cast<Eigen::Index>(index_of(o)), static_cast<Eigen::Index>(col)) += amp;
  }
  return op;
}

Eigen::MatrixXcd FullSpace::bilinear(const Eigen::Matrix3cd &m) const {
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(dim(), dim());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (m(i, j) != 0.0)
        op += m(i, j) * hop(static_cast<Mode>(i), static_cast<Mode>(j));
  return op;
}

Eigen::MatrixXcd FullSpace::number(Mode mode) const { return hop(mode, mode); }

Eigen::MatrixXcd FullSpace::generator(Generator g) const { return bilinear(single_particle_matrix(g)); }

Eigen::MatrixXcd FullSpace::hamiltonian(double q) const {
  const double lambda = -1.0 / (2.0 * size_.atoms());
  const auto id = Eigen::MatrixXcd::Identity(dim(), dim());
  const Eigen::MatrixXcd n0 = number(Mode::zero);
  const Eigen::MatrixXcd sides = number(Mode::plus) + number(Mode::minus);
  // a1^dag a-1^dag a0^2 = (a1^dag a0)(a-1^dag a0)
  const Eigen::MatrixXcd pair = hop(Mode::plus, Mode::zero) * hop(Mode::minus, Mode::zero);
  return (lambda * (n0 - 0.5 * id) + q * id) * sides + lambda * (pair + pair.adjoint());
}

Eigen::MatrixXcd FullSpace::pseudospin_hamiltonian(double q) const {
  const double lambda = -1.0 / (2.0 * size_.atoms());
  const Eigen::MatrixXcd sx = generator(Generator::Sx);
  const Eigen::MatrixXcd ay = generator(Generator::Ay);
  return 2.0 * (lambda * sx * sx - (q / 3.0) * generator(Generator::Sz)) +
         2.0 * (lambda * ay * ay - (q / 3.0) * generator(Generator::Az));
}

Eigen::VectorXcd FullSpace::embed(const SpinorState &s) const {
  if (s.size() != size_)
    throw std::invalid_argument("state has a different atom number");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim()));
  for (std::size_t k = 0; k < s.dim(); ++k)
    v(static_cast<Eigen::Index>(index_of(ladder_occupations(size_, static_cast<int>(k))))) = s[k];
  return v;
}

IdentityOffset pseudospin_identity_deviation(SystemSize n, double q) {
  const FullSpace space(n);
  const Eigen::MatrixXcd diff = space.hamiltonian(q) - space.pseudospin_hamiltonian(q);
  const double offset = diff.trace().real() / static_cast<double>(space.dim());
  const Eigen::MatrixXcd residual =
      diff - offset * Eigen::MatrixXcd::Identity(diff.rows(), diff.cols());
  return {offset, residual.cwiseAbs().maxCoeff()};
}

std::complex<double> expectation(const Eigen::MatrixXcd &op, const Eigen::VectorXcd &psi) {
  return psi.dot(op * psi);
}

double variance(const Eigen::MatrixXcd &op, const Eigen::VectorXcd &psi) {
  const Eigen::VectorXcd a = op * psi;
  const std::complex<double> mean = psi.dot(a);
  return a.squaredNorm() - std::norm(mean);
}

} // namespace spinor
