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

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qsector/algebra.hpp"
#include "qsector/dynamics.hpp"
#include "qsector/lattice.hpp"

namespace qsector {

/// Dense matrix of A -> [H_window, A] on the window's operator space, in the
/// HS-orthonormal basis of matrix units (column-stacked vec(A)).
struct Superoperator {
  Matrix matrix;
  Window window;
  FockTruncation trunc;
  std::size_t hilbert_dim = 0;
};

/// Throws CapExceeded if (window Hilbert dimension)^2 > cap.
Superoperator build_superoperator(const HamiltonianSpec& spec, const Window& window,
                                  std::size_t cap = kDefaultDenseCap);
/// Same construction from an explicit window Hamiltonian.
Superoperator superoperator_from_hamiltonian(const Matrix& hamiltonian, const Window& window,
                                             const FockTruncation& trunc);

/// Column-stacked vec(A).
Vector vectorize(const Matrix& op);
Matrix unvectorize(const Vector& v, Eigen::Index dim);

enum class BasisPreset { densities, identity_densities, currents };

std::string to_string(BasisPreset preset);
/// Throws std::invalid_argument for unknown names.
BasisPreset parse_basis_preset(const std::string& name);

/// HS-orthonormal set of slow observables on a window; P projects onto their span.
class ObservableBasis {
 public:
  static constexpr double kGramTolerance = 1e-10;

  /// Gram-Schmidt (two passes) of the embedded operators. Throws
  /// std::invalid_argument if they are linearly dependent.
  static ObservableBasis orthonormalize(const std::vector<QuasiLocalOperator>& ops,
                                        const Window& window, std::size_t cap = kDefaultDenseCap);
  /// Wraps already orthonormal columns of vec-space vectors.
  static ObservableBasis from_columns(Matrix columns);

  const Matrix& columns() const { return columns_; }
  Eigen::Index size() const { return columns_.cols(); }
  /// max |B^dagger B - 1|.
  double gram_defect() const;
  /// B B^dagger.
  Matrix projector() const;

 private:
  explicit ObservableBasis(Matrix columns);
  Matrix columns_;
};

ObservableBasis make_basis(BasisPreset preset, const HamiltonianSpec& spec, const Window& window);

/// Four-block split of L with respect to P = B B^dagger and Q = 1 - P.
struct ProjectedBlocks {
  // Full operator-space blocks.
  Matrix plp, plq, qlp, qlq;
  Matrix p, q;
  // Reduced coordinates: P space spanned by `basis`, Q space by `complement`.
  Matrix basis, complement;
  Matrix p_block;   // B^dagger L B
  Matrix pq_block;  // B^dagger L C
  Matrix qp_block;  // C^dagger L B
  Matrix q_block;   // C^dagger L C
  // Spectral form of the Q block: q_block = modes diag(q_spectrum) modes^dagger.
  Eigen::VectorXd q_spectrum;
  Matrix q_modes;
  Matrix left_couplings;   // pq_block * modes
  Matrix right_couplings;  // modes^dagger * qp_block
};

ProjectedBlocks project_split(const Superoperator& l, const ObservableBasis& basis);

/// E(z) = PLQ (z - QLQ)^{-1} QLP in basis coordinates. Throws
/// DiagnosticFailure when z is closer than `min_distance` to the Q spectrum.
Matrix self_energy(const ProjectedBlocks& blocks, Complex z, double min_distance = 1e-10);
/// B^dagger (z - L)^{-1} B by a direct solve in the full operator space.
Matrix projected_resolvent(const Superoperator& l, const ObservableBasis& basis, Complex z);

/// z0(eta) = PLP + E(i eta): the pole continued from the upper half plane,
/// so that exp(-i z0 t) decays for t > 0.
Matrix pole_at(const ProjectedBlocks& blocks, double eta);

struct PlateauReport {
  std::vector<double> etas;   // ascending
  std::vector<Matrix> poles;  // z0(eta) per eta
  std::size_t first = 0;      // plateau range [first, last]
  std::size_t last = 0;
  Matrix value;               // mean pole over the plateau
  double spread = 0.0;        // max pairwise |z0(a) - z0(b)| / max |z0| over the plateau
  double level_spacing = 0.0;
  double bandwidth = 0.0;
  double recommended_low = 0.0;   // 3 x mean level spacing of QLQ
  double recommended_high = 0.0;  // bandwidth / 10
  double max_imag_eigenvalue = 0.0;
};

/// Scans z0(eta) over the schedule and picks the longest contiguous run
/// whose relative spread is <= max_spread. Throws DiagnosticFailure if no
/// run of at least two points qualifies.
PlateauReport weak_coupling_pole(const ProjectedBlocks& blocks, std::vector<double> etas,
                                 double max_spread = 0.1);

/// z0 = xi - i theta with xi, theta Hermitian and theta >= 0.
struct ProjectedGenerator {
  Matrix plp;
  Matrix xi;     // dispersion
  Matrix theta;  // dissipation
  double eta = 0.0;
  double xi_hermiticity_defect = 0.0;
  double theta_hermiticity_defect = 0.0;
  double theta_min_eigenvalue = 0.0;

  Matrix pole() const;
  /// -i xi - theta.
  Matrix generator() const;
};

/// Lorentzian-regularized principal value and delta function of QLQ:
///   xi    = PLP - PLQ [lambda / (lambda^2 + eta^2)] QLP
///   theta = PLQ [eta / (lambda^2 + eta^2)] QLP   (= pi PLQ delta_eta(QLQ) QLP)
ProjectedGenerator dispersion_dissipation(const ProjectedBlocks& blocks, double eta);

/// exp((-i xi - theta) t). Throws std::domain_error for t < 0.
Matrix semigroup_evolve(const ProjectedGenerator& gen, double t);

/// Hamiltonian term scaled by the coupling in the exact-vs-master sweep.
enum class CouplingChannel { hopping, interaction };

std::string to_string(CouplingChannel channel);
CouplingChannel parse_coupling_channel(const std::string& name);

struct ComparisonOptions {
  double eta = 1e-2;
  double dt = 0.1;  // sampling step for the running maximum
  CouplingChannel channel = CouplingChannel::hopping;
};

struct ComparisonRow {
  double coupling = 0.0;
  double tau = 0.0;          // g^2 t
  double time = 0.0;         // tau / g^2 (tau itself when g = 0)
  double error_end = 0.0;    // |B^dagger e^{-iLt} B - T_p(t)|_2 at `time`
  double error_max = 0.0;    // max of the same over [0, time]
};

struct VanHoveRatio {
  double tau = 0.0;
  double coupling_from = 0.0;
  double coupling_to = 0.0;
  double ratio = 0.0;  // error_max(to) / error_max(from)
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;
  std::vector<VanHoveRatio> ratios;
  std::vector<ProjectedGenerator> generators;  // one per coupling
};

/// For each coupling g (in the given order) and each tau, compares projected
/// exact evolution with the master-equation semigroup at t = tau / g^2.
ComparisonTable compare_exact_vs_master(const HamiltonianSpec& spec, const Window& window,
                                        const ObservableBasis& basis,
                                        const std::vector<double>& taus,
                                        const std::vector<double>& couplings,
                                        const ComparisonOptions& options = {});

/// Operator 2-norm.
double spectral_norm(const Matrix& m);

}  // namespace qsector
