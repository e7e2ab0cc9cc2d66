// Copyright 2026 The qsector Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsector/master.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "qsector/errors.hpp"

namespace qsector {
namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

HamiltonianSpec with_coupling(HamiltonianSpec spec, CouplingChannel channel, double g) {
  if (channel == CouplingChannel::hopping) {
    spec.hopping = g;
  } else {
    spec.coupling = g;
  }
  return spec;
}

}  // namespace

Superoperator superoperator_from_hamiltonian(const Matrix& hamiltonian, const Window& window,
                                             const FockTruncation& trunc) {
  const Eigen::Index d = hamiltonian.rows();
  const Matrix id = Matrix::Identity(d, d);
  Superoperator out;
  out.matrix = Eigen::kroneckerProduct(id, hamiltonian).eval() -
               Eigen::kroneckerProduct(Matrix(hamiltonian.transpose()), id).eval();
  out.window = window;
  out.trunc = trunc;
  out.hilbert_dim = static_cast<std::size_t>(d);
  return out;
}

Superoperator build_superoperator(const HamiltonianSpec& spec, const Window& window,
                                  std::size_t cap) {
  const std::size_t dim = window.hilbert_dim(spec.trunc.dim(), cap);
  if (dim == 0 || dim * dim > cap) {
    throw CapExceeded("operator space of the window exceeds the superoperator cap of " +
                      std::to_string(cap));
  }
  const Matrix h = embed_dense(window_hamiltonian(spec, window), window, cap);
  return superoperator_from_hamiltonian(h, window, spec.trunc);
}

Vector vectorize(const Matrix& op) {
  return Eigen::Map<const Vector>(op.data(), op.size());
}

Matrix unvectorize(const Vector& v, Eigen::Index dim) {
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

std::string to_string(BasisPreset preset) {
  switch (preset) {
    case BasisPreset::densities: return "densities";
    case BasisPreset::identity_densities: return "identity+densities";
    case BasisPreset::currents: return "currents";
  }
  return "densities";
}

BasisPreset parse_basis_preset(const std::string& name) {
  if (name == "densities") return BasisPreset::densities;
  if (name == "identity+densities") return BasisPreset::identity_densities;
  if (name == "currents") return BasisPreset::currents;
  throw std::invalid_argument("unknown basis preset '" + name + "'");
}

ObservableBasis::ObservableBasis(Matrix columns) : columns_(std::move(columns)) {}

ObservableBasis ObservableBasis::orthonormalize(const std::vector<QuasiLocalOperator>& ops,
                                                const Window& window, std::size_t cap) {
  if (ops.empty()) throw std::invalid_argument("observable basis needs at least one operator");
  std::vector<Vector> done;
  for (const auto& op : ops) {
    Vector v = vectorize(embed_dense(op, window, cap));
    const double original = v.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : done) v -= b.dot(v) * b;
    }
    if (!(v.norm() > 1e-10 * std::max(original, 1.0))) {
      throw std::invalid_argument("basis operators are linearly dependent on the window");
    }
    done.push_back(v / v.norm());
  }
  Matrix cols(done.front().size(), static_cast<Eigen::Index>(done.size()));
  for (std::size_t k = 0; k < done.size(); ++k) cols.col(static_cast<Eigen::Index>(k)) = done[k];
  return ObservableBasis(std::move(cols));
}

ObservableBasis ObservableBasis::from_columns(Matrix columns) {
  ObservableBasis b(std::move(columns));
  if (b.gram_defect() > kGramTolerance) {
    throw std::invalid_argument("basis columns are not HS-orthonormal");
  }
  return b;
}

double ObservableBasis::gram_defect() const {
  const Matrix gram = columns_.adjoint() * columns_;
  return max_abs(gram - Matrix::Identity(gram.rows(), gram.cols()));
}

Matrix ObservableBasis::projector() const { return columns_ * columns_.adjoint(); }

ObservableBasis make_basis(BasisPreset preset, const HamiltonianSpec& spec, const Window& window) {
  std::vector<QuasiLocalOperator> ops;
  if (preset == BasisPreset::identity_densities) ops.push_back(QuasiLocalOperator::identity(spec.trunc));
  if (preset == BasisPreset::densities || preset == BasisPreset::identity_densities) {
    for (const auto& s : window.sites()) ops.push_back(number_density(spec, s));
  } else {
    // i (psi*(I) psi(J) - psi*(J) psi(I)) on nearest-neighbour bonds inside the window.
    for (const auto& s : window.sites()) {
      for (int axis = 0; axis < spec.dimension; ++axis) {
        const GridIndex t = s.shifted(axis, 1);
        if (!window.contains(t)) continue;
        QuasiLocalOperator j = multiply(field_dagger(spec, s), field(spec, t));
        j -= multiply(field_dagger(spec, t), field(spec, s));
        j *= kI;
        ops.push_back(std::move(j));
      }
    }
  }
  return ObservableBasis::orthonormalize(ops, window);
}

ProjectedBlocks project_split(const Superoperator& l, const ObservableBasis& basis) {
  const Matrix& lm = l.matrix;
  const Eigen::Index n = lm.rows();
  if (basis.columns().rows() != n) {
    throw std::invalid_argument("basis and superoperator live on different windows");
  }
  ProjectedBlocks b;
  b.basis = basis.columns();
  b.p = basis.projector();
  b.q = Matrix::Identity(n, n) - b.p;
  b.plp = b.p * lm * b.p;
  b.plq = b.p * lm * b.q;
  b.qlp = b.q * lm * b.p;
  b.qlq = b.q * lm * b.q;

  const Eigen::Index k = basis.size();
  Eigen::HouseholderQR<Matrix> qr(b.basis);
  const Matrix full_q = qr.householderQ() * Matrix::Identity(n, n);
  b.complement = full_q.rightCols(n - k);

  b.p_block = b.basis.adjoint() * lm * b.basis;
  b.pq_block = b.basis.adjoint() * lm * b.complement;
  b.qp_block = b.complement.adjoint() * lm * b.basis;
  b.q_block = b.complement.adjoint() * lm * b.complement;

  const Matrix herm = 0.5 * (b.q_block + b.q_block.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
  if (solver.info() != Eigen::Success) throw DiagnosticFailure("QLQ eigendecomposition failed");
  b.q_spectrum = solver.eigenvalues();
  b.q_modes = solver.eigenvectors();
  b.left_couplings = b.pq_block * b.q_modes;
  b.right_couplings = b.q_modes.adjoint() * b.qp_block;
  return b;
}

Matrix self_energy(const ProjectedBlocks& blocks, Complex z, double min_distance) {
  const Eigen::Index m = blocks.q_spectrum.size();
  double distance = std::numeric_limits<double>::infinity();
  Vector weights(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Complex gap = z - blocks.q_spectrum(i);
    distance = std::min(distance, std::abs(gap));
    weights(i) = 1.0 / gap;
  }
  if (distance < min_distance) {
    throw DiagnosticFailure("z lies within " + std::to_string(distance) +
                            " of the QLQ spectrum; self-energy is near singular");
  }
  return blocks.left_couplings * weights.asDiagonal() * blocks.right_couplings;
}

Matrix projected_resolvent(const Superoperator& l, const ObservableBasis& basis, Complex z) {
  const Eigen::Index n = l.matrix.rows();
  const Matrix shifted = z * Matrix::Identity(n, n) - l.matrix;
  return basis.columns().adjoint() * shifted.partialPivLu().solve(basis.columns());
}

Matrix pole_at(const ProjectedBlocks& blocks, double eta) {
  return blocks.p_block + self_energy(blocks, Complex{0.0, eta}, 0.0);
}

PlateauReport weak_coupling_pole(const ProjectedBlocks& blocks, std::vector<double> etas,
                                 double max_spread) {
  if (etas.size() < 2) throw std::invalid_argument("eta schedule needs at least two values");
  for (double e : etas) {
    if (!(e > 0.0)) throw std::invalid_argument("eta values must be positive");
  }
  std::sort(etas.begin(), etas.end());

  PlateauReport r;
  r.etas = etas;
  for (double e : etas) r.poles.push_back(pole_at(blocks, e));

  const auto& lam = blocks.q_spectrum;
  if (lam.size() > 1) {
    r.bandwidth = lam.maxCoeff() - lam.minCoeff();
    r.level_spacing = r.bandwidth / static_cast<double>(lam.size() - 1);
  }
  r.recommended_low = 3.0 * r.level_spacing;
  r.recommended_high = r.bandwidth / 10.0;

  auto spread_of = [&](std::size_t a, std::size_t b) {
    double scale = 0.0, worst = 0.0;
    for (std::size_t i = a; i <= b; ++i) {
      scale = std::max(scale, spectral_norm(r.poles[i]));
      for (std::size_t j = i + 1; j <= b; ++j) {
        worst = std::max(worst, spectral_norm(r.poles[i] - r.poles[j]));
      }
    }
    return scale > 0.0 ? worst / scale : 0.0;
  };

  bool found = false;
  double best_spread = 0.0;
  for (std::size_t a = 0; a < etas.size(); ++a) {
    for (std::size_t b = a + 1; b < etas.size(); ++b) {
      const double s = spread_of(a, b);
      if (s > max_spread) break;
      const std::size_t len = b - a;
      const std::size_t best_len = r.last - r.first;
      if (!found || len > best_len || (len == best_len && s < best_spread)) {
        found = true;
        r.first = a;
        r.last = b;
        best_spread = s;
      }
    }
  }
  if (!found) {
    throw DiagnosticFailure("no eta plateau: pole varies by more than " +
                            std::to_string(max_spread) + " (relative) between every pair");
  }
  r.spread = best_spread;
  r.value = Matrix::Zero(blocks.p_block.rows(), blocks.p_block.cols());
  for (std::size_t i = r.first; i <= r.last; ++i) r.value += r.poles[i];
  r.value /= static_cast<double>(r.last - r.first + 1);
  Eigen::ComplexEigenSolver<Matrix> es(r.value);
  r.max_imag_eigenvalue = es.eigenvalues().imag().maxCoeff();
  return r;
}

Matrix ProjectedGenerator::pole() const { return xi - kI * theta; }

Matrix ProjectedGenerator::generator() const { return -kI * xi - theta; }

ProjectedGenerator dispersion_dissipation(const ProjectedBlocks& blocks, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  const Eigen::Index m = blocks.q_spectrum.size();
  Eigen::VectorXd principal(m), lorentz(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double lam = blocks.q_spectrum(i);
    const double denom = lam * lam + eta * eta;
    principal(i) = lam / denom;
    lorentz(i) = eta / denom;
  }
  ProjectedGenerator g;
  g.eta = eta;
  g.plp = blocks.p_block;
  const Matrix& w = blocks.left_couplings;
  const Matrix& wr = blocks.right_couplings;
  g.xi = g.plp - w * principal.cast<Complex>().asDiagonal() * wr;
  g.theta = w * lorentz.cast<Complex>().asDiagonal() * wr;
  g.xi_hermiticity_defect = max_abs(g.xi - g.xi.adjoint());
  g.theta_hermiticity_defect = max_abs(g.theta - g.theta.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (g.theta + g.theta.adjoint()),
                                           Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw DiagnosticFailure("theta eigendecomposition failed");
  g.theta_min_eigenvalue = es.eigenvalues().size() ? es.eigenvalues().minCoeff() : 0.0;
  return g;
}

Matrix semigroup_evolve(const ProjectedGenerator& gen, double t) {
  if (!(t >= 0.0)) throw std::domain_error("the master-equation semigroup is defined for t >= 0 only");
  const Matrix a = gen.generator() * t;
  return a.exp();
}

std::string to_string(CouplingChannel channel) {
  return channel == CouplingChannel::hopping ? "hopping" : "interaction";
}

CouplingChannel parse_coupling_channel(const std::string& name) {
  if (name == "hopping") return CouplingChannel::hopping;
  if (name == "interaction") return CouplingChannel::interaction;
  throw std::invalid_argument("unknown coupling channel '" + name + "'");
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

ComparisonTable compare_exact_vs_master(const HamiltonianSpec& spec, const Window& window,
                                        const ObservableBasis& basis,
                                        const std::vector<double>& taus,
                                        const std::vector<double>& couplings,
                                        const ComparisonOptions& options) {
  if (!(options.dt > 0.0)) throw std::invalid_argument("sampling step must be positive");
  ComparisonTable table;
  std::vector<std::vector<double>> maxima;
  for (double g : couplings) {
    const HamiltonianSpec model = with_coupling(spec, options.channel, g);
    const Superoperator l = build_superoperator(model, window);
    const ProjectedBlocks blocks = project_split(l, basis);
    ProjectedGenerator gen = dispersion_dissipation(blocks, options.eta);

    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (l.matrix + l.matrix.adjoint()));
    const Matrix left = basis.columns().adjoint() * es.eigenvectors();
    const Matrix right = es.eigenvectors().adjoint() * basis.columns();
    const Eigen::VectorXd& freq = es.eigenvalues();

    auto error_at = [&](double t) {
      Vector phases(freq.size());
      for (Eigen::Index i = 0; i < freq.size(); ++i) phases(i) = std::polar(1.0, -freq(i) * t);
      const Matrix exact = left * phases.asDiagonal() * right;
      return spectral_norm(exact - semigroup_evolve(gen, t));
    };

    std::vector<double> row_max;
    for (double tau : taus) {
      const double time = g == 0.0 ? tau : tau / (g * g);
      double worst = 0.0;
      const auto steps = static_cast<long>(std::floor(time / options.dt));
      for (long s = 0; s <= steps; ++s) worst = std::max(worst, error_at(s * options.dt));
      const double end = error_at(time);
      worst = std::max(worst, end);
      table.rows.push_back({g, tau, time, end, worst});
      row_max.push_back(worst);
    }
    maxima.push_back(std::move(row_max));
    table.generators.push_back(std::move(gen));
  }
  for (std::size_t c = 1; c < couplings.size(); ++c) {
    for (std::size_t k = 0; k < taus.size(); ++k) {
      const double from = maxima[c - 1][k];
      const double to = maxima[c][k];
      const double ratio = from > 0.0 ? to / from
                                      : (to == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
      table.ratios.push_back({taus[k], couplings[c - 1], couplings[c], ratio});
    }
  }
  return table;
}

}  // namespace qsector
