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
#include <vector>

#include "qsector/algebra.hpp"
#include "qsector/lattice.hpp"
#include "qsector/state.hpp"

namespace qsector {

/// Prefactor convention for the kinetic energy density.
enum class KineticConvention {
  standard,  // -(1/2m dx^2) * discrete Laplacian, symmetrized
  literal,   // +(1/8m dx^2) * two-term Laplacian, positive sign
};

/// Local Hamiltonian: kinetic hopping with a configurable stencil offset,
/// an on-site potential mu + tilt * i1, and density-density interaction
/// g N(I) N(J) for 0 < |I - J| <= range.
struct HamiltonianSpec {
  FockTruncation trunc{};
  int dimension = 1;
  int hopping_offset = 1;
  KineticConvention convention = KineticConvention::standard;
  double hopping = 1.0;        // multiplies the kinetic density
  double hopping_phase = 0.0;  // complex hopping phase; nonzero breaks time reversal
  double coupling = 0.0;       // g
  int range = 0;               // S, lattice units
  double chemical_potential = 0.0;
  double tilt = 0.0;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
  /// max(hopping offset, range): every local term fits in a ball of this radius.
  int locality_radius() const;
};

/// psi(I) = dx^{3/2} a and psi*(I) = dx^{3/2} a^dagger at one site.
QuasiLocalOperator field(const HamiltonianSpec& spec, const GridIndex& site);
QuasiLocalOperator field_dagger(const HamiltonianSpec& spec, const GridIndex& site);

/// N(I) = psi*(I) psi(I).
QuasiLocalOperator number_density(const HamiltonianSpec& spec, const GridIndex& site);

/// Hermitian central-difference momentum density along `axis`:
/// (psi*(I)(psi(I+e) - psi(I-e)) - (psi*(I+e) - psi*(I-e)) psi(I)) / (4 i dx).
QuasiLocalOperator momentum_density(const HamiltonianSpec& spec, const GridIndex& site, int axis);
/// psi*(I)(psi(I+e) - psi(I-e)) / (4 dx) without the -i. Not Hermitian.
QuasiLocalOperator momentum_density_literal(const HamiltonianSpec& spec, const GridIndex& site,
                                            int axis);

QuasiLocalOperator kinetic_density(const HamiltonianSpec& spec, const GridIndex& site);
/// g N(I) N(J); throws std::invalid_argument unless 0 < |I - J| <= range.
QuasiLocalOperator interaction_density(const HamiltonianSpec& spec, const GridIndex& i,
                                       const GridIndex& j);

/// The energy density h(I) split into connected pieces (hopping bonds,
/// on-site term, interaction pairs), each already scaled by dx^3. Summing
/// h(I) over all sites gives H.
std::vector<QuasiLocalOperator> local_terms(const HamiltonianSpec& spec, const GridIndex& site);
QuasiLocalOperator energy_density(const HamiltonianSpec& spec, const GridIndex& site);

/// Sum of the local terms of every window site whose support stays in the
/// window (open boundary; the outside is frozen).
QuasiLocalOperator window_hamiltonian(const HamiltonianSpec& spec, const Window& window);
/// Sum of N(I) over the window.
QuasiLocalOperator total_number(const HamiltonianSpec& spec, const Window& window);

/// L A = [H, A], summing only the local terms that overlap support(A).
QuasiLocalOperator liouville_apply(const HamiltonianSpec& spec, const QuasiLocalOperator& a);

/// Dense window Hamiltonian with a cached eigendecomposition.
class WindowPropagator {
 public:
  WindowPropagator(const HamiltonianSpec& spec, Window window,
                   std::size_t cap = kDefaultDenseCap);

  const Window& window() const { return window_; }
  const Matrix& hamiltonian() const { return hamiltonian_; }
  const Eigen::VectorXd& energies() const { return energies_; }

  /// exp(-i H t).
  Matrix propagator(double t) const;
  /// exp(-i H t) psi.
  Vector evolve(const Vector& psi, double t) const;
  /// exp(i H t) a exp(-i H t).
  Matrix heisenberg(const Matrix& a, double t) const;

 private:
  Window window_;
  Matrix hamiltonian_;
  Matrix eigenvectors_;
  Eigen::VectorXd energies_;
};

struct HeisenbergResult {
  QuasiLocalOperator op;
  /// Relative HS weight of the result acting nontrivially on boundary sites.
  double leakage;
};

struct SchrodingerResult {
  LocalVector state;
  /// Loss of boundary weight in the background state since t = 0.
  double leakage;
  double norm_drift;
};

/// A(t) = exp(iHt) A exp(-iHt) on the window. support(A) must avoid the
/// window boundary. Throws DiagnosticFailure if leakage > tol.
HeisenbergResult evolve_heisenberg(const HamiltonianSpec& spec, const QuasiLocalOperator& a,
                                   double t, const Window& window, double tol);
/// v(t) = exp(-iHt) v with the background frozen outside the window.
SchrodingerResult evolve_schrodinger(const HamiltonianSpec& spec, const LocalVector& v, double t,
                                     const Window& window, double tol);

/// Relative HS weight of `a` acting nontrivially on `sites`:
/// sqrt(|A|^2 - |tr_B A|^2 / d_B) / |A|.
double boundary_weight(const Matrix& a, const Window& window, int local_dim,
                       const std::vector<GridIndex>& sites);

}  // namespace qsector
