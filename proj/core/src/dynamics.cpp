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

#include "qsector/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "qsector/errors.hpp"

namespace qsector {
namespace {

QuasiLocalOperator hop(const HamiltonianSpec& spec, const GridIndex& to, const GridIndex& from,
                       Complex coefficient) {
  // coefficient * psi*(to) psi(from)
  const auto ladders = ladder_ops(spec.trunc);
  const double scale = spec.trunc.field_scale() * spec.trunc.field_scale();
  ProductOperator p;
  if (to == from) {
    p.factors.emplace(to, SiteOperator{ladders.raise.matrix * ladders.lower.matrix});
  } else {
    p.factors.emplace(to, ladders.raise);
    p.factors.emplace(from, ladders.lower);
  }
  return QuasiLocalOperator::product(spec.trunc, std::move(p), coefficient * scale);
}

double kinetic_prefactor(const HamiltonianSpec& spec) {
  const double dx2 = spec.trunc.dx() * spec.trunc.dx();
  const double m = spec.trunc.mass();
  // The standard form carries the 1/2 from symmetrizing the two terms.
  return spec.convention == KineticConvention::standard ? -spec.hopping / (4.0 * m * dx2)
                                                        : spec.hopping / (8.0 * m * dx2);
}

double potential_at(const HamiltonianSpec& spec, const GridIndex& site) {
  return spec.chemical_potential + spec.tilt * site.i1;
}

std::vector<GridIndex> interaction_partners(const HamiltonianSpec& spec, const GridIndex& site) {
  std::vector<GridIndex> out;
  if (spec.range <= 0) return out;
  const int s = spec.range;
  const int r2 = spec.dimension > 1 ? s : 0;
  const int r3 = spec.dimension > 2 ? s : 0;
  for (int a = -s; a <= s; ++a)
    for (int b = -r2; b <= r2; ++b)
      for (int c = -r3; c <= r3; ++c) {
        const GridIndex j{site.i1 + a, site.i2 + b, site.i3 + c};
        const int d2 = squared_distance(site, j);
        if (d2 > 0 && d2 <= s * s) out.push_back(j);
      }
  return out;
}

bool inside(const QuasiLocalOperator& op, const Window& window) {
  for (const auto& s : support(op))
    if (!window.contains(s)) return false;
  return true;
}

bool overlaps(const std::vector<GridIndex>& a, const std::vector<GridIndex>& sorted_b) {
  for (const auto& s : a)
    if (std::binary_search(sorted_b.begin(), sorted_b.end(), s)) return true;
  return false;
}

}  // namespace

void HamiltonianSpec::validate() const {
  if (dimension < 1 || dimension > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  if (hopping_offset != 1 && hopping_offset != 2) {
    throw std::invalid_argument("hopping offset must be 1 or 2");
  }
  if (range < 0) throw std::invalid_argument("interaction range must be >= 0");
  for (double x : {hopping, hopping_phase, coupling, chemical_potential, tilt}) {
    if (!std::isfinite(x)) throw std::invalid_argument("Hamiltonian parameters must be finite");
  }
}

int HamiltonianSpec::locality_radius() const { return std::max(hopping_offset, range); }

QuasiLocalOperator field(const HamiltonianSpec& spec, const GridIndex& site) {
  return QuasiLocalOperator::site(spec.trunc, site, ladder_ops(spec.trunc).lower,
                                  spec.trunc.field_scale());
}

QuasiLocalOperator field_dagger(const HamiltonianSpec& spec, const GridIndex& site) {
  return QuasiLocalOperator::site(spec.trunc, site, ladder_ops(spec.trunc).raise,
                                  spec.trunc.field_scale());
}

QuasiLocalOperator number_density(const HamiltonianSpec& spec, const GridIndex& site) {
  return hop(spec, site, site, 1.0);
}

QuasiLocalOperator momentum_density(const HamiltonianSpec& spec, const GridIndex& site, int axis) {
  const GridIndex up = site.shifted(axis, 1);
  const GridIndex down = site.shifted(axis, -1);
  QuasiLocalOperator p = hop(spec, site, up, 1.0);
  p -= hop(spec, site, down, 1.0);
  p -= hop(spec, up, site, 1.0);
  p += hop(spec, down, site, 1.0);
  p *= 1.0 / (4.0 * kI * spec.trunc.dx());
  return p;
}

QuasiLocalOperator momentum_density_literal(const HamiltonianSpec& spec, const GridIndex& site,
                                            int axis) {
  QuasiLocalOperator p = hop(spec, site, site.shifted(axis, 1), 1.0);
  p -= hop(spec, site, site.shifted(axis, -1), 1.0);
  p *= 1.0 / (4.0 * spec.trunc.dx());
  return p;
}

QuasiLocalOperator kinetic_density(const HamiltonianSpec& spec, const GridIndex& site) {
  const double c = kinetic_prefactor(spec);
  const Complex forward = std::polar(1.0, spec.hopping_phase);
  const int h = spec.hopping_offset;
  QuasiLocalOperator out(spec.trunc);
  for (int axis = 0; axis < spec.dimension; ++axis) {
    const GridIndex up = site.shifted(axis, h);
    const GridIndex down = site.shifted(axis, -h);
    out += hop(spec, site, up, c * forward);
    out += hop(spec, up, site, c * std::conj(forward));
    out += hop(spec, site, down, c * std::conj(forward));
    out += hop(spec, down, site, c * forward);
    out += hop(spec, site, site, -4.0 * c);
  }
  return out;
}

QuasiLocalOperator interaction_density(const HamiltonianSpec& spec, const GridIndex& i,
                                       const GridIndex& j) {
  const int d2 = squared_distance(i, j);
  if (d2 == 0 || d2 > spec.range * spec.range) {
    throw std::invalid_argument("interaction pair outside 0 < |I - J| <= range");
  }
  return spec.coupling * multiply(number_density(spec, i), number_density(spec, j));
}

std::vector<QuasiLocalOperator> local_terms(const HamiltonianSpec& spec, const GridIndex& site) {
  const double dx3 = std::pow(spec.trunc.dx(), 3);
  const double c = kinetic_prefactor(spec);
  const Complex forward = std::polar(1.0, spec.hopping_phase);
  const int h = spec.hopping_offset;

  std::vector<QuasiLocalOperator> out;
  QuasiLocalOperator onsite = (potential_at(spec, site) * dx3) * number_density(spec, site);
  for (int axis = 0; axis < spec.dimension; ++axis) {
    const GridIndex up = site.shifted(axis, h);
    const GridIndex down = site.shifted(axis, -h);
    if (c != 0.0) {
      out.push_back(hop(spec, site, up, dx3 * c * forward) +
                    hop(spec, up, site, dx3 * c * std::conj(forward)));
      out.push_back(hop(spec, site, down, dx3 * c * std::conj(forward)) +
                    hop(spec, down, site, dx3 * c * forward));
    }
    onsite += hop(spec, site, site, -4.0 * c * dx3);
  }
  if (!onsite.is_zero()) out.push_back(std::move(onsite));
  if (spec.coupling != 0.0) {
    for (const auto& j : interaction_partners(spec, site)) {
      out.push_back(dx3 * interaction_density(spec, site, j));
    }
  }
  return out;
}

QuasiLocalOperator energy_density(const HamiltonianSpec& spec, const GridIndex& site) {
  QuasiLocalOperator out(spec.trunc);
  for (const auto& t : local_terms(spec, site)) out += t;
  return out;
}

QuasiLocalOperator window_hamiltonian(const HamiltonianSpec& spec, const Window& window) {
  spec.validate();
  QuasiLocalOperator out(spec.trunc);
  for (const auto& site : window.sites()) {
    for (const auto& t : local_terms(spec, site)) {
      if (inside(t, window)) out += t;
    }
  }
  return out;
}

QuasiLocalOperator total_number(const HamiltonianSpec& spec, const Window& window) {
  QuasiLocalOperator out(spec.trunc);
  for (const auto& site : window.sites()) out += number_density(spec, site);
  return out;
}

QuasiLocalOperator liouville_apply(const HamiltonianSpec& spec, const QuasiLocalOperator& a) {
  spec.validate();
  if (!(a.truncation() == spec.trunc)) throw TruncationMismatch();
  const auto sup = support(a);
  QuasiLocalOperator out(spec.trunc);
  if (sup.empty()) return out;

  const int r = spec.locality_radius();
  const int r2 = spec.dimension > 1 ? r : 0;
  const int r3 = spec.dimension > 2 ? r : 0;
  std::set<GridIndex> centers;
  for (const auto& s : sup)
    for (int x = -r; x <= r; ++x)
      for (int y = -r2; y <= r2; ++y)
        for (int z = -r3; z <= r3; ++z) centers.insert({s.i1 + x, s.i2 + y, s.i3 + z});

  std::vector<OperatorTerm> terms;
  for (const auto& center : centers) {
    for (const auto& t : local_terms(spec, center)) {
      if (!overlaps(support(t), sup)) continue;
      const auto c = commutator(t, a);
      terms.insert(terms.end(), c.terms().begin(), c.terms().end());
    }
  }
  return QuasiLocalOperator::from_terms(spec.trunc, std::move(terms));
}

WindowPropagator::WindowPropagator(const HamiltonianSpec& spec, Window window, std::size_t cap)
    : window_(std::move(window)),
      hamiltonian_(embed_dense(window_hamiltonian(spec, window_), window_, cap)) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hamiltonian_);
  if (solver.info() != Eigen::Success) {
    throw DiagnosticFailure("window Hamiltonian diagonalization failed");
  }
  eigenvectors_ = solver.eigenvectors();
  energies_ = solver.eigenvalues();
}

Matrix WindowPropagator::propagator(double t) const {
  Vector phases(energies_.size());
  for (Eigen::Index k = 0; k < energies_.size(); ++k) phases(k) = std::polar(1.0, -energies_(k) * t);
  return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

Vector WindowPropagator::evolve(const Vector& psi, double t) const {
  Vector coeffs = eigenvectors_.adjoint() * psi;
  for (Eigen::Index k = 0; k < energies_.size(); ++k) coeffs(k) *= std::polar(1.0, -energies_(k) * t);
  return eigenvectors_ * coeffs;
}

Matrix WindowPropagator::heisenberg(const Matrix& a, double t) const {
  const Matrix u = propagator(t);
  return u.adjoint() * a * u;
}

double boundary_weight(const Matrix& a, const Window& window, int local_dim,
                       const std::vector<GridIndex>& sites) {
  const double total = a.squaredNorm();
  if (total == 0.0 || sites.empty()) return 0.0;
  const Matrix reduced = partial_trace(a, window, local_dim, sites);
  const double db = std::pow(static_cast<double>(local_dim), static_cast<double>(sites.size()));
  return std::sqrt(std::max(0.0, total - reduced.squaredNorm() / db) / total);
}

HeisenbergResult evolve_heisenberg(const HamiltonianSpec& spec, const QuasiLocalOperator& a,
                                   double t, const Window& window, double tol) {
  const auto boundary = window.boundary();
  for (const auto& s : support(a)) {
    if (std::find(boundary.begin(), boundary.end(), s) != boundary.end()) {
      throw WindowTooSmall("operator support touches the window boundary at " + s.to_string());
    }
  }
  const Matrix dense = embed_dense(a, window);
  const WindowPropagator prop(spec, window);
  const Matrix evolved = prop.heisenberg(dense, t);
  const double leakage = boundary_weight(evolved, window, spec.trunc.dim(), boundary);
  if (leakage > tol) {
    throw DiagnosticFailure("operator leakage " + std::to_string(leakage) +
                            " onto the window boundary exceeds tolerance");
  }
  return {from_dense(evolved, window, spec.trunc), leakage};
}

SchrodingerResult evolve_schrodinger(const HamiltonianSpec& spec, const LocalVector& v, double t,
                                     const Window& window, double tol) {
  if (!(v.background().truncation() == spec.trunc)) throw TruncationMismatch();
  const Vector psi0 = dense_state(v, window);
  const WindowPropagator prop(spec, window);
  const Vector psi = prop.evolve(psi0, t);

  ProductOperator frozen;
  for (const auto& s : window.boundary()) {
    const Vector b = v.background().state_at(s).amplitudes;
    frozen.factors.emplace(s, SiteOperator{b * b.adjoint()});
  }
  const Matrix projector =
      embed_dense(QuasiLocalOperator::product(spec.trunc, std::move(frozen)), window);
  const double n0 = psi0.squaredNorm();
  const double n1 = psi.squaredNorm();
  double leakage = 0.0;
  if (n0 > 0.0) {
    const double before = psi0.dot(projector * psi0).real() / n0;
    const double after = psi.dot(projector * psi).real() / n1;
    leakage = std::max(0.0, before - after);
  }
  if (leakage > tol) {
    throw DiagnosticFailure("state leakage " + std::to_string(leakage) +
                            " onto the window boundary exceeds tolerance");
  }
  const double drift = n0 > 0.0 ? std::abs(std::sqrt(n1) - std::sqrt(n0)) / std::sqrt(n0) : 0.0;
  return {from_dense_state(psi, window, v.background_ptr()), leakage, drift};
}

}  // namespace qsector
