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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "qsector/errors.hpp"
#include "qsector/master.hpp"
#include "qsector/random.hpp"
#include "qsector/time_reversal.hpp"

namespace {

using namespace qsector;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string num(double x) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << x;
  return s.str();
}

SiteState gas_state() {
  Vector v(2);
  v << 1.0, std::polar(1.0, std::numbers::pi / 4);
  return {v / v.norm()};
}

HamiltonianSpec interacting(int n_max) {
  HamiltonianSpec s;
  s.trunc = FockTruncation(n_max);
  s.coupling = 0.5;
  s.range = 1;
  s.tilt = 0.3;
  return s;
}

Outcome algebra_oracle() {
  RandomSource rng(1001);
  const FockTruncation trunc(2);
  double worst = 0.0;
  int checks = 0;
  for (int trial = 0; trial < 125; ++trial) {
    const Window w = Window::chain(rng.integer(2, 3));
    const auto a = rng.quasi_local(trunc, w.sites(), rng.integer(1, 4), 3);
    const auto b = rng.quasi_local(trunc, w.sites(), rng.integer(1, 4), 3);
    const Matrix da = oracle::dense(a, w), db = oracle::dense(b, w);
    worst = std::max(worst, oracle::max_abs(oracle::dense(a + b, w) - (da + db)));
    worst = std::max(worst, oracle::max_abs(oracle::dense(a * b, w) - da * db));
    worst = std::max(worst, oracle::max_abs(oracle::dense(adjoint(a), w) - da.adjoint()));
    worst = std::max(worst, oracle::max_abs(oracle::dense(commutator(a, b), w) - (da * db - db * da)));
    checks += 4;
  }
  return {worst <= 1e-12, std::to_string(checks) + " checks, max error " + num(worst) + " (tol 1e-12)"};
}

Outcome orthogonality_decay() {
  const FockTruncation trunc(1);
  const Background rho = Background::uniform(trunc, gas_state());
  const auto profile = overlap_profile(rho, reverse_background(rho), 30, 1);
  const double q = std::cos(std::numbers::pi / 4);
  double worst = 0.0;
  for (int n = 0; n <= 30; ++n) {
    const double expected = std::pow(q, 2 * n + 1);
    worst = std::max(worst, std::abs(std::abs(profile[static_cast<std::size_t>(n)]) - expected) / expected);
  }
  const double tail = std::abs(profile.back());
  return {worst <= 1e-12 && tail <= 1e-9,
          "max relative error " + num(worst) + " (tol 1e-12), |overlap(30)| = " + num(tail) +
              " (tol 1e-9)"};
}

Outcome sector_confinement() {
  RandomSource rng(1003);
  const FockTruncation trunc(1);
  HamiltonianSpec spec = interacting(1);
  const Window w = Window::chain(5, -2);
  const std::vector<GridIndex> inner{{-1, 0, 0}, {0, 0, 0}, {1, 0, 0}};
  int violations = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Background bg = rng.integer(0, 1)
                              ? Background::uniform(trunc, rng.site_state(trunc))
                              : Background::periodic(trunc, {2, 1, 1},
                                                     {rng.site_state(trunc), rng.site_state(trunc)});
    const BackgroundPtr ptr = make_background(bg);
    const SectorId id = bg.sector();
    const auto v = rng.local_vector(ptr, inner, 2, 2);
    const auto a = rng.quasi_local(trunc, inner, 2, 2);
    const double t = rng.uniform(0.0, 2.0);
    if (!(apply(a, v).sector() == id)) ++violations;
    if (!(evolve_schrodinger(spec, v, t, w, 1.0).state.sector() == id)) ++violations;
    const auto heis = evolve_heisenberg(spec, a, t, w, 1.0);
    if (!(apply(heis.op, v).sector() == id)) ++violations;
  }
  return {violations == 0, "600 sector checks over 200 random cases, " +
                               std::to_string(violations) + " violations"};
}

Outcome reversal_sign_table_check() {
  HamiltonianSpec spec = interacting(2);
  std::string signs;
  bool ok = true;
  for (const auto& row : reversal_sign_table(spec, {})) {
    const int expected = row.name == "P" ? -1 : 1;
    ok = ok && row.parity.sign == expected;
    signs += row.name + "=" + std::to_string(row.parity.sign) + " ";
  }
  const Window w = Window::chain(3);
  const double residual = check_TLT_equals_L(spec, w);
  spec.hopping_phase = 0.3;
  const double broken = check_TLT_equals_L(spec, w);
  ok = ok && residual <= 1e-12 && broken >= 1e-3;
  return {ok, signs + "|TLT-L| = " + num(residual) + " (tol 1e-12), with phase " + num(broken) +
                  " (need >= 1e-3)"};
}

Outcome sector_jump() {
  const FockTruncation trunc(1);
  const Background gas = Background::uniform(trunc, gas_state());
  const auto cls = sector_of_reversal(gas);
  const auto profile = overlap_profile(gas, reverse_background(gas), 30, 1);
  bool decaying = true;
  for (std::size_t n = 1; n < profile.size(); ++n) {
    decaying = decaying && std::abs(profile[n]) < std::abs(profile[n - 1]);
  }
  const Background vacuum = Background::uniform(trunc, number_basis_state(trunc, 0));
  const auto inv = sector_of_reversal(vacuum);
  double flat = 0.0;
  for (const Complex c : overlap_profile(vacuum, reverse_background(vacuum), 30, 1)) {
    flat = std::max(flat, std::abs(c - 1.0));
  }
  const bool ok = cls.verdict == SectorVerdict::jumped && cls.q < 1.0 && decaying &&
                  inv.verdict == SectorVerdict::invariant && flat <= 1e-15;
  return {ok, "gas: " + to_string(cls.verdict) + " q = " + num(cls.q) +
                  (decaying ? ", overlap decreasing" : ", overlap NOT decreasing") +
                  "; vacuum: " + to_string(inv.verdict) + ", max |overlap - 1| = " + num(flat)};
}

Outcome dynamics_sanity() {
  HamiltonianSpec spec = interacting(1);
  RandomSource rng(1006);
  const Window w8 = Window::chain(8, -3);
  const WindowPropagator prop(spec, w8);
  const auto bg = make_background(Background::uniform(spec.trunc, rng.site_state(spec.trunc)));
  const auto v = rng.local_vector(bg, {{-1, 0, 0}, {0, 0, 0}, {1, 0, 0}}, 3, 3);
  const Vector psi0 = dense_state(v, w8);
  const Vector psi = prop.evolve(psi0, 10.0);
  const Matrix& h = prop.hamiltonian();
  const double norm_drift = std::abs(psi.norm() - psi0.norm()) / psi0.norm();
  const double e0 = psi0.dot(h * psi0).real() / psi0.squaredNorm();
  const double e1 = psi.dot(h * psi).real() / psi.squaredNorm();
  const double energy_drift = std::abs(e1 - e0) / std::max(1.0, std::abs(e0));

  const Superoperator l = build_superoperator(spec, Window::chain(3));
  const double herm = (l.matrix - l.matrix.adjoint()).norm();

  // <v, (L A) v> = -i d/dt <v(t), A v(t)> at t = 0, by central differences.
  const Window w = Window::chain(6, -2);
  const WindowPropagator small(spec, w);
  const auto a = number_density(spec, {}) + momentum_density(spec, {}, 0);
  const Matrix da = embed_dense(a, w);
  const Vector u = dense_state(v, w).normalized();
  const double step = 1e-4;
  auto expect_at = [&](double t) {
    const Vector ut = small.evolve(u, t);
    return ut.dot(da * ut);
  };
  const Complex fd = (expect_at(step) - expect_at(-step)) / (2 * step);
  const Complex direct = u.dot(embed_dense(liouville_apply(spec, a), w) * u);
  const double picture = std::abs(direct - (-kI) * fd);
  const Matrix heis_fd = (small.heisenberg(da, step) - small.heisenberg(da, -step)) / (2 * step);
  // A(t) = e^{iHt} A e^{-iHt} moves with +i L.
  const double heis = oracle::max_abs(heis_fd - kI * embed_dense(liouville_apply(spec, a), w));

  const bool ok = norm_drift <= 1e-9 && energy_drift <= 1e-9 && herm <= 1e-10 && picture <= 1e-6 &&
                  heis <= 1e-6;
  return {ok, "norm drift " + num(norm_drift) + ", energy drift " + num(energy_drift) +
                  " (tol 1e-9); L Hermiticity defect " + num(herm) + " (tol 1e-10); picture " +
                  num(std::max(picture, heis)) + " (tol 1e-6)"};
}

struct MasterModel {
  HamiltonianSpec spec = interacting(1);
  Window window = Window::chain(3);
  Superoperator l = build_superoperator(spec, window);
  ObservableBasis basis = make_basis(BasisPreset::identity_densities, spec, window);
  ProjectedBlocks blocks = project_split(l, basis);
};

Outcome resolvent_identity() {
  const MasterModel m;
  RandomSource rng(1007);
  const Matrix id = Matrix::Identity(m.basis.size(), m.basis.size());
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Complex z{rng.uniform(-4.0, 4.0), rng.uniform(0.05, 3.0) * (k % 2 ? 1.0 : -1.0)};
    const Matrix direct = projected_resolvent(m.l, m.basis, z);
    const Matrix split = (z * id - m.blocks.p_block - self_energy(m.blocks, z)).inverse();
    worst = std::max(worst, (direct - split).norm());
  }
  return {worst <= 1e-8, "20 random z, max |PR(z)P - (z - PLP - E(z))^-1| = " + num(worst) +
                             " (tol 1e-8)"};
}

Outcome dissipation_operator() {
  const MasterModel m;
  double herm = 0.0, min_eig = INFINITY, zero_mode = 0.0, consistency = 0.0;
  bool ok = true;
  for (double eta : {1e-3, 1e-2, 1e-1}) {
    const ProjectedGenerator g = dispersion_dissipation(m.blocks, eta);
    herm = std::max({herm, g.xi_hermiticity_defect, g.theta_hermiticity_defect});
    min_eig = std::min(min_eig, g.theta_min_eigenvalue);
    Eigen::SelfAdjointEigenSolver<Matrix> es(g.theta, Eigen::EigenvaluesOnly);
    const double smallest = es.eigenvalues().cwiseAbs().minCoeff();
    zero_mode = std::max(zero_mode, smallest / eta);
    ok = ok && smallest <= eta * 1e-2;
    const Matrix z0 = pole_at(m.blocks, eta);
    const Matrix im = (z0 - z0.adjoint()) / (2.0 * kI);
    consistency = std::max(consistency, oracle::max_abs(g.theta + im));
  }
  ok = ok && herm <= 1e-10 && min_eig >= -1e-10 && consistency <= 1e-10;
  return {ok, "Hermiticity " + num(herm) + ", min eig(theta) " + num(min_eig) +
                  ", smallest |eig|/eta " + num(zero_mode) + " (tol 1e-2), |theta + Im z0| " +
                  num(consistency)};
}

Outcome semigroup() {
  const MasterModel m;
  const ProjectedGenerator g = dispersion_dissipation(m.blocks, 0.05);
  RandomSource rng(1009);
  double group = 0.0, sv = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double t = rng.uniform(0.0, 10.0), s = rng.uniform(0.0, 10.0);
    group = std::max(group, spectral_norm(semigroup_evolve(g, t + s) -
                                          semigroup_evolve(g, t) * semigroup_evolve(g, s)));
    sv = std::max(sv, spectral_norm(semigroup_evolve(g, t)));
  }
  bool rejected = false;
  try {
    semigroup_evolve(g, -1.0);
  } catch (const std::domain_error&) {
    rejected = true;
  }
  return {group <= 1e-8 && sv <= 1 + 1e-10 && rejected,
          "group-law defect " + num(group) + " (tol 1e-8), max singular value " + num(sv) +
              (rejected ? ", t < 0 rejected" : ", t < 0 ACCEPTED")};
}

Outcome van_hove() {
  const auto start = std::chrono::steady_clock::now();
  HamiltonianSpec spec;
  spec.trunc = FockTruncation(1);
  spec.tilt = 1.0;
  const Window w = Window::chain(3);
  const ObservableBasis basis = make_basis(BasisPreset::densities, spec, w);
  ComparisonOptions opt;
  opt.eta = 1e-3;
  opt.dt = 0.1;
  const auto table = compare_exact_vs_master(spec, w, basis, {0.5, 1.0, 2.0}, {0.2, 0.1, 0.05}, opt);
  double worst = 0.0;
  for (const auto& r : table.ratios) worst = std::max(worst, r.ratio);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst < 1.0 && secs <= 300.0,
          std::to_string(table.ratios.size()) + " ratios at g^2 t in {0.5, 1, 2}, largest " +
              num(worst) + " (need < 1), " + num(secs) + " s"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "qsector_acceptance_determinism";
  fs::remove_all(root);
  const fs::path configs = QSECTOR_CONFIG_DIR;
  const std::vector<std::pair<std::string, std::string>> runs{
      {"master-eq", "master_eq.yaml"},
      {"sector-overlap", "gas_overlap.yaml"},
      {"time-reversal-demo", "gas_reversal.yaml"},
      {"evolve", "evolve.yaml"},
      {"oracle-check", "oracle.json"},
  };
  int compared = 0;
  for (const auto& [cmd, cfg] : runs) {
    for (const char* rep : {"a", "b"}) {
      const fs::path out = root / rep / cmd;
      const std::string line = std::string("\"") + QSECTOR_CLI_PATH + "\" " + cmd + " --config \"" +
                               (configs / cfg).string() + "\" --seed 17 --out \"" + out.string() +
                               "\" > /dev/null";
      if (std::system(line.c_str()) != 0) return {false, cmd + " exited with an error"};
    }
    for (const auto& entry : fs::directory_iterator(root / "a" / cmd)) {
      const fs::path twin = root / "b" / cmd / entry.path().filename();
      if (!fs::exists(twin) || slurp(entry.path()) != slurp(twin)) {
        return {false, entry.path().filename().string() + " differs between runs"};
      }
      ++compared;
    }
  }
  return {compared >= 5, std::to_string(compared) + " output files byte-identical across two runs"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 algebra oracle suite", algebra_oracle},
      {"2 sector orthogonality decay", orthogonality_decay},
      {"3 sector confinement", sector_confinement},
      {"4 time reversal sign table", reversal_sign_table_check},
      {"5 time-reversal sector jump", sector_jump},
      {"6 dynamics sanity", dynamics_sanity},
      {"7 resolvent identity", resolvent_identity},
      {"8 dissipation operator", dissipation_operator},
      {"9 semigroup", semigroup},
      {"10 Van Hove weak coupling", van_hove},
      {"11 determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << name << "] " << o.detail << std::endl;
  }
  std::cout << (failures ? "acceptance: " + std::to_string(failures) + " criteria failed"
                         : std::string("acceptance: all criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}
