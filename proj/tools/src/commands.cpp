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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "output.hpp"
#include "qsector/errors.hpp"
#include "qsector/functional.hpp"
#include "qsector/master.hpp"
#include "qsector/random.hpp"
#include "qsector/time_reversal.hpp"

namespace qsector::cli {
namespace {

using nlohmann::json;

std::string site_label(const GridIndex& s, int dimension) {
  std::string out = std::to_string(s.i1);
  if (dimension > 1) out += "_" + std::to_string(s.i2);
  if (dimension > 2) out += "_" + std::to_string(s.i3);
  return out;
}

std::vector<double> time_grid(double t_max, double dt) {
  std::vector<double> out;
  const auto steps = static_cast<long>(std::floor(t_max / dt + 1e-9));
  for (long k = 0; k <= steps; ++k) out.push_back(static_cast<double>(k) * dt);
  return out;
}

double expectation_dense(const Vector& psi, const Matrix& a) {
  return psi.dot(a * psi).real() / psi.squaredNorm();
}

HamiltonianSpec scaled_model(HamiltonianSpec spec, CouplingChannel channel, double g) {
  if (channel == CouplingChannel::hopping) {
    spec.hopping = g;
  } else {
    spec.coupling = g;
  }
  return spec;
}

Eigen::VectorXd hermitian_spectrum(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

json parity_json(const ReversalParity& p) {
  return {{"sign", p.sign}, {"even_residual", p.even_residual}, {"odd_residual", p.odd_residual}};
}

}  // namespace

int run_sector_overlap(const ExperimentConfig& c, std::ostream& log) {
  const Background rho1 = build_background(c, c.background);
  Background rho2 = rho1;
  if (c.overlap.compare == "reversed") {
    rho2 = reverse_background(rho1);
  } else if (c.overlap.compare == "background") {
    rho2 = build_background(c, *c.overlap.other);
  }
  const int d = c.hamiltonian.dimension;
  const auto profile = overlap_profile(rho1, rho2, c.overlap.max_radius, d);
  CsvWriter csv({"n", "sites", "abs_overlap", "re", "im"});
  for (std::size_t n = 0; n < profile.size(); ++n) {
    const int radius = static_cast<int>(n);
    csv.row({static_cast<double>(n), static_cast<double>(sites_within(radius, d)),
             std::abs(profile[n]), profile[n].real(), profile[n].imag()});
  }
  const auto path = c.output / "sector_overlap.csv";
  write_atomic(path, csv.text());
  log << "sector-overlap: |overlap(" << c.overlap.max_radius
      << ")| = " << format_number(std::abs(profile.back())) << " -> " << path.string() << "\n";
  return 0;
}

int run_time_reversal_demo(const ExperimentConfig& c, std::ostream& log) {
  const Background rho = build_background(c, c.background);
  const ReversalClassification cls = sector_of_reversal(rho);
  const Window w = make_window(c, c.window.size);
  const double residual = check_TLT_equals_L(c.hamiltonian, w, c.cap);

  json table = json::object();
  for (const auto& row : reversal_sign_table(c.hamiltonian, GridIndex{})) {
    table[row.name] = parity_json(row.parity);
  }
  json doc = {
      {"verdict", to_string(cls.verdict)},
      {"q", cls.q},
      {"pattern_overlaps", cls.pattern_overlaps},
      {"sector", rho.sector().describe()},
      {"reversed_sector", reverse_background(rho).sector().describe()},
      {"tlt_residual", residual},
      {"tlt_window_sites", w.size()},
      {"hopping_phase", c.hamiltonian.hopping_phase},
      {"sign_table", table},
  };
  const auto path = c.output / "time_reversal.json";
  write_json(path, doc);
  log << "time-reversal-demo: " << to_string(cls.verdict) << ", q = " << format_number(cls.q)
      << ", |TLT - L| = " << format_number(residual) << " -> " << path.string() << "\n";
  return 0;
}

int run_evolve(const ExperimentConfig& c, std::ostream& log) {
  const HamiltonianSpec& spec = c.hamiltonian;
  const Window w = make_window(c, c.window.size);
  const BackgroundPtr bg = make_background(build_background(c, c.background));
  const LocalVector v = LocalVector::from(PureStateVector{bg, c.initial});
  const Vector psi0 = dense_state(v, w, c.cap);
  if (!(psi0.norm() > 0.0)) throw DiagnosticFailure("initial state vanishes on the window");
  const WindowPropagator prop(spec, w, c.cap);
  const Matrix& h = prop.hamiltonian();

  const int d = spec.dimension;
  std::vector<std::string> header{"t"};
  std::vector<Matrix> observables;
  for (const auto& s : w.sites()) {
    header.push_back("N@" + site_label(s, d));
    observables.push_back(embed_dense(number_density(spec, s), w, c.cap));
  }
  for (const auto& s : w.sites()) {
    const QuasiLocalOperator p = momentum_density(spec, s, 0);
    const auto sup = support(p);
    if (!std::all_of(sup.begin(), sup.end(), [&](const GridIndex& x) { return w.contains(x); })) {
      continue;
    }
    header.push_back("P@" + site_label(s, d));
    observables.push_back(embed_dense(p, w, c.cap));
  }
  for (const char* name : {"energy", "total_number", "norm_drift", "energy_drift", "leakage"}) {
    header.emplace_back(name);
  }
  const Matrix number = embed_dense(total_number(spec, w), w, c.cap);

  ProductOperator frozen;
  for (const auto& s : w.boundary()) {
    const Vector b = bg->state_at(s).amplitudes;
    frozen.factors.emplace(s, SiteOperator{b * b.adjoint()});
  }
  const Matrix edge = embed_dense(QuasiLocalOperator::product(spec.trunc, std::move(frozen)), w, c.cap);

  const double n0 = psi0.norm();
  const double e0 = expectation_dense(psi0, h);
  const double edge0 = expectation_dense(psi0, edge);
  double worst_leak = 0.0;
  CsvWriter csv(header);
  for (double t : time_grid(c.time.t_max, c.time.dt)) {
    const Vector psi = prop.evolve(psi0, t);
    std::vector<double> row{t};
    for (const auto& a : observables) row.push_back(expectation_dense(psi, a));
    const double e = expectation_dense(psi, h);
    const double leak = std::max(0.0, edge0 - expectation_dense(psi, edge));
    worst_leak = std::max(worst_leak, leak);
    row.push_back(e);
    row.push_back(expectation_dense(psi, number));
    row.push_back(std::abs(psi.norm() - n0) / n0);
    row.push_back(std::abs(e - e0) / std::max(1.0, std::abs(e0)));
    row.push_back(leak);
    csv.row(row);
  }
  const auto path = c.output / "evolve.csv";
  write_atomic(path, csv.text());
  log << "evolve: " << w.size() << " sites, max leakage " << format_number(worst_leak) << " -> "
      << path.string() << "\n";
  if (c.time.leakage_tol && worst_leak > *c.time.leakage_tol) {
    throw DiagnosticFailure("boundary leakage " + format_number(worst_leak) +
                            " exceeds time.leakage_tol");
  }
  return 0;
}

int run_master_eq(const ExperimentConfig& c, std::ostream& log) {
  const Window w = make_window(c, c.window.size);
  const std::size_t dim = w.hilbert_dim(c.hamiltonian.trunc.dim(), c.cap);
  if (dim == 0 || dim * dim > c.cap) {
    throw CapExceeded("operator space of the window exceeds cap " + std::to_string(c.cap));
  }
  const ObservableBasis basis = make_basis(c.master.basis, c.hamiltonian, w);

  const double g0 = c.master.couplings.front();
  const HamiltonianSpec model = scaled_model(c.hamiltonian, c.master.channel, g0);
  const ProjectedBlocks blocks = project_split(build_superoperator(model, w, c.cap), basis);
  const PlateauReport plateau =
      weak_coupling_pole(blocks, c.master.eta_schedule, c.master.plateau_spread);

  ComparisonOptions options;
  options.eta = c.master.eta;
  options.dt = c.master.sample_dt;
  options.channel = c.master.channel;
  const ComparisonTable table =
      compare_exact_vs_master(c.hamiltonian, w, basis, c.master.taus, c.master.couplings, options);

  CsvWriter errors({"coupling", "tau", "time", "error_end", "error_max"});
  for (const auto& r : table.rows) errors.row({r.coupling, r.tau, r.time, r.error_end, r.error_max});
  CsvWriter ratios({"tau", "coupling_from", "coupling_to", "ratio"});
  json ratio_json = json::array();
  for (const auto& r : table.ratios) {
    ratios.row({r.tau, r.coupling_from, r.coupling_to, r.ratio});
    ratio_json.push_back(
        {{"tau", r.tau}, {"coupling_from", r.coupling_from}, {"coupling_to", r.coupling_to},
         {"ratio", r.ratio}});
  }

  json generators = json::array();
  for (std::size_t k = 0; k < table.generators.size(); ++k) {
    const ProjectedGenerator& g = table.generators[k];
    generators.push_back({
        {"coupling", c.master.couplings[k]},
        {"eta", g.eta},
        {"xi", matrix_json(g.xi)},
        {"theta", matrix_json(g.theta)},
        {"xi_spectrum", vector_json(hermitian_spectrum(g.xi))},
        {"theta_spectrum", vector_json(hermitian_spectrum(g.theta))},
        {"theta_min_eigenvalue", g.theta_min_eigenvalue},
        {"xi_hermiticity_defect", g.xi_hermiticity_defect},
        {"theta_hermiticity_defect", g.theta_hermiticity_defect},
    });
  }
  json doc = {
      {"basis", to_string(c.master.basis)},
      {"channel", to_string(c.master.channel)},
      {"window_sites", w.size()},
      {"basis_size", basis.size()},
      {"generators", generators},
      {"van_hove_ratios", ratio_json},
      {"plateau",
       {{"coupling", g0},
        {"etas", plateau.etas},
        {"eta_low", plateau.etas[plateau.first]},
        {"eta_high", plateau.etas[plateau.last]},
        {"spread", plateau.spread},
        {"level_spacing", plateau.level_spacing},
        {"bandwidth", plateau.bandwidth},
        {"recommended_low", plateau.recommended_low},
        {"recommended_high", plateau.recommended_high},
        {"max_imag_eigenvalue", plateau.max_imag_eigenvalue},
        {"pole", matrix_json(plateau.value)}}},
  };
  write_atomic(c.output / "master_eq.csv", errors.text());
  write_atomic(c.output / "van_hove.csv", ratios.text());
  write_json(c.output / "master_eq.json", doc);
  log << "master-eq: plateau eta in [" << format_number(plateau.etas[plateau.first]) << ", "
      << format_number(plateau.etas[plateau.last]) << "], " << table.ratios.size()
      << " Van Hove ratios -> " << c.output.string() << "\n";
  return 0;
}

int run_oracle_check(const ExperimentConfig& c, std::ostream& log) {
  RandomSource rng(c.seed);
  const FockTruncation& trunc = c.hamiltonian.trunc;
  const Window w = Window::chain(3);
  const auto& sites = w.sites();

  struct Check {
    double tol;
    double worst = 0.0;
  };
  std::map<std::string, Check> checks{
      {"add", {1e-12}},          {"multiply", {1e-12}},   {"adjoint", {1e-12}},
      {"commutator", {1e-12}},   {"apply", {1e-12}},      {"inner_product", {1e-12}},
      {"reverse", {1e-12}},      {"liouville", {1e-12}},  {"resolvent", {1e-8}},
      {"pictures", {1e-10}},
  };
  auto note = [&](const char* name, double err) {
    auto& ch = checks.at(name);
    ch.worst = std::max(ch.worst, std::isnan(err) ? INFINITY : err);
  };
  auto dense = [&](const QuasiLocalOperator& a) { return embed_dense(a, w, c.cap); };
  auto diff = [](const Matrix& x, const Matrix& y) { return (x - y).cwiseAbs().maxCoeff(); };

  HamiltonianSpec spec = c.hamiltonian;
  spec.dimension = 1;
  const Window big = Window::chain(3 + 2 * spec.locality_radius(), -spec.locality_radius());
  const Matrix h_big = embed_dense(window_hamiltonian(spec, big), big, c.cap);
  const WindowPropagator prop(spec, w, c.cap);

  const ObservableBasis basis = make_basis(BasisPreset::densities, spec, w);
  const Superoperator l = build_superoperator(spec, w, c.cap);
  const ProjectedBlocks blocks = project_split(l, basis);
  const Matrix id = Matrix::Identity(basis.size(), basis.size());

  for (int trial = 0; trial < c.oracle.trials; ++trial) {
    const QuasiLocalOperator a = rng.quasi_local(trunc, sites, 3, 3);
    const QuasiLocalOperator b = rng.quasi_local(trunc, sites, 3, 3);
    const Matrix da = dense(a), db = dense(b);
    note("add", diff(dense(a + b), da + db));
    note("multiply", diff(dense(a * b), da * db));
    note("adjoint", diff(dense(adjoint(a)), da.adjoint()));
    note("commutator", diff(dense(commutator(a, b)), da * db - db * da));
    note("reverse", diff(dense(reverse_operator(a)), da.conjugate()));

    const BackgroundPtr bg = make_background(Background::uniform(trunc, rng.site_state(trunc)));
    const LocalVector u = rng.local_vector(bg, sites, 2, 2);
    const LocalVector v = rng.local_vector(bg, sites, 2, 2);
    const Vector dv = dense_state(v, w, c.cap);
    note("apply", (dense_state(apply(a, v), w, c.cap) - da * dv).cwiseAbs().maxCoeff());
    note("inner_product", std::abs(inner_product(u, v) - dense_state(u, w, c.cap).dot(dv)));

    const Matrix la = embed_dense(liouville_apply(spec, a), big, c.cap);
    const Matrix ab = embed_dense(a, big, c.cap);
    note("liouville", diff(la, h_big * ab - ab * h_big));

    const Complex z{rng.uniform(-3.0, 3.0), rng.uniform(0.1, 2.0) * (rng.integer(0, 1) ? 1 : -1)};
    const Matrix direct = projected_resolvent(l, basis, z);
    const Matrix split = (z * id - blocks.p_block - self_energy(blocks, z)).inverse();
    note("resolvent", (direct - split).norm() / std::max(1.0, direct.norm()));

    const double t = rng.uniform(0.0, 5.0);
    const Vector psi = dv / dv.norm();
    const Matrix herm = 0.5 * (da + da.adjoint());
    const Vector psi_t = prop.evolve(psi, t);
    note("pictures", std::abs(psi_t.dot(herm * psi_t) - psi.dot(prop.heisenberg(herm, t) * psi)));
  }

  bool all_pass = true;
  json report = json::object();
  for (const auto& [name, ch] : checks) {
    const bool pass = ch.worst <= ch.tol;
    all_pass = all_pass && pass;
    report[name] = {{"max_error", ch.worst}, {"tolerance", ch.tol}, {"pass", pass}};
    log << (pass ? "PASS " : "FAIL ") << name << " max_error=" << format_number(ch.worst)
        << " tol=" << format_number(ch.tol) << "\n";
  }
  json doc = {{"seed", c.seed}, {"trials", c.oracle.trials}, {"checks", report}, {"pass", all_pass}};
  write_json(c.output / "oracle_check.json", doc);
  if (!all_pass) throw DiagnosticFailure("oracle check failed");
  return 0;
}

}  // namespace qsector::cli
