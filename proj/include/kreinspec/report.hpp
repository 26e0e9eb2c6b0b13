#pragma once

// End-to-end analysis of a Hamiltonian (optionally with a user metric):
// biorthogonal eigensystem, spectral metric, PT classification, doublet
// extraction and Krein assembly, collected into a reproducible report.
// Every numeric claim in the report carries its residual.

#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kreinspec/antilinear.hpp"
#include "kreinspec/biortho.hpp"
#include "kreinspec/io.hpp"
#include "kreinspec/kreindeg.hpp"
#include "kreinspec/matrix.hpp"
#include "kreinspec/metric.hpp"
#include "kreinspec/tolerances.hpp"

namespace kreinspec {

struct MetricSection {
  std::string label;
  bool hermitian = false;
  std::string signature;  // "(p,m) Definiteness" or the classification error
  double pseudo_hermiticity_residual = 0.0;
  bool pseudo_hermitian = false;
  std::optional<EtaPtRelation> pt_relation;  // absent when PT is undefined (odd dim)
};

struct DoubletRow {
  double value = 0.0;
  double eta_norm_psi = 0.0;
  double eta_norm_pt_psi = 0.0;
  double orthogonality_residual = 0.0;
  double gram_det = 0.0;
};

struct AnalysisReport {
  std::string input_label;
  ComplexMatrix hamiltonian;
  Tolerances tols;

  std::vector<Complex> eigenvalues;  // sorted
  struct Cluster {
    Complex value;
    std::size_t multiplicity;
  };
  std::vector<Cluster> spectrum;
  double max_imag = 0.0;
  PtPhase phase = PtPhase::Unbroken;
  BiorthoResiduals biortho;

  bool pt_defined = false;  // PT requires even dimension
  double pt_commutation_residual = 0.0;
  bool pt_symmetric = false;

  std::optional<MetricSection> supplied_metric;
  std::optional<MetricSection> spectral;  // absent when the spectrum is complex

  std::vector<DoubletRow> doublets;
  std::string doublet_note;  // why extraction was skipped, when it was
  std::optional<KreinVerification> krein;
};

inline AnalysisReport analyze(const ComplexMatrix& h, const std::optional<ComplexMatrix>& eta,
                              const Tolerances& tols = {},
                              const std::string& input_label = "<matrix>") {
  if (!h.is_square()) throw DimensionMismatch("analyze: matrix not square");
  if (!h.all_finite()) throw InvalidValue("analyze: non-finite entries");
  if (eta && (!eta->is_square() || eta->rows() != h.rows()))
    throw DimensionMismatch("analyze: metric dimension does not match matrix");

  AnalysisReport rep;
  rep.input_label = input_label;
  rep.hamiltonian = h;
  rep.tols = tols;

  const BiorthoSystem sys = build_biortho(h, tols.group_tol, tols.rtol);  // Defective escapes
  rep.biortho = biortho_residuals(sys, h);
  for (const BiorthoLevel& l : sys.levels) {
    rep.eigenvalues.push_back(l.value);
    rep.max_imag = std::max(rep.max_imag, std::abs(l.value.imag()));
  }
  for (const std::vector<std::size_t>& c : sys.clusters)
    rep.spectrum.push_back({sys.levels[c.front()].value, c.size()});
  std::sort(rep.spectrum.begin(), rep.spectrum.end(),
            [](const AnalysisReport::Cluster& a, const AnalysisReport::Cluster& b) {
              if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
              return a.value.imag() < b.value.imag();
            });

  const bool real_spectrum = rep.max_imag <= tols.imag_tol * sys.h_norm;
  rep.phase = real_spectrum ? PtPhase::Unbroken : PtPhase::Broken;

  std::optional<AntilinearOp> pt;
  if (h.rows() % 2 == 0) {
    pt = build_pt(h.rows());
    rep.pt_defined = true;
    rep.pt_commutation_residual = commutation_residual(*pt, h);
    rep.pt_symmetric = rep.pt_commutation_residual <= tols.rtol * std::max(sys.h_norm, 1.0);
  }

  auto metric_section = [&](const ComplexMatrix& m, const std::string& label) {
    MetricSection s;
    s.label = label;
    try {
      const MetricReport sig = metric_signature(m);
      s.hermitian = sig.is_hermitian;
      s.signature = "(" + std::to_string(sig.n_plus) + "," + std::to_string(sig.n_minus) + ") " +
                    to_string(sig.definiteness);
    } catch (const Error& e) {
      s.signature = e.what();
    }
    s.pseudo_hermiticity_residual = pseudo_hermiticity_residual(h, m);
    s.pseudo_hermitian = s.pseudo_hermiticity_residual <= tols.rtol * std::max(sys.h_norm, 1.0);
    if (pt) s.pt_relation = eta_pt_relation(m, *pt, tols.relation_tol);
    return s;
  };

  if (real_spectrum) {
    const ComplexMatrix eta_plus = spectral_metric(sys, tols.imag_tol);
    rep.spectral = metric_section(eta_plus, "spectral eta+");
  }
  if (eta) rep.supplied_metric = metric_section(*eta, "supplied eta");

  if (!eta) {
    rep.doublet_note = "no metric supplied; doublet extraction needs an anticommuting metric";
  } else if (!pt) {
    rep.doublet_note = "PT undefined in odd dimension";
  } else if (!rep.supplied_metric->pt_relation ||
             rep.supplied_metric->pt_relation->value != EtaPtValue::Anticommute) {
    rep.doublet_note = "supplied metric does not anticommute with PT; no doublet structure";
  } else if (!real_spectrum) {
    rep.doublet_note = "spectrum not real; PT phase is broken";
  } else {
    const std::vector<PtDoublet> ds = find_pt_doublets(h, *eta, *pt, tols);
    for (const PtDoublet& d : ds)
      rep.doublets.push_back({d.value.real(), d.eta_norm_psi, d.eta_norm_pt_psi,
                              d.orthogonality_residual, d.gram_det});
    if (!ds.empty()) {
      const KreinDecomposition kd = build_krein(ds, *pt, tols.rtol);
      rep.krein = verify_krein(kd, h, *eta, *pt);
    }
  }
  return rep;
}

namespace detail {

inline std::string fmt_complex_short(Complex z) {
  std::ostringstream os;
  os << std::setprecision(12) << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? "-" : "+") << std::setprecision(12)
                          << std::abs(z.imag()) << "i";
  return os.str();
}

inline std::string fmt_residual(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", r);
  return buf;
}

}  // namespace detail

inline void print_report(std::ostream& out, const AnalysisReport& rep) {
  out << "kreinspec analysis: " << rep.input_label << "\n";
  out << "  dimension " << rep.hamiltonian.rows() << ", |H|_F = "
      << format_real(rep.hamiltonian.frobenius_norm()) << "\n";
  out << "  tolerances: rtol " << rep.tols.rtol << ", group " << rep.tols.group_tol
      << ", imag " << rep.tols.imag_tol << ", relation " << rep.tols.relation_tol << "\n";

  out << "spectrum (" << rep.spectrum.size() << " distinct):\n";
  for (const auto& c : rep.spectrum)
    out << "  E = " << detail::fmt_complex_short(c.value) << "  multiplicity " << c.multiplicity
        << "\n";
  out << "pt phase: " << to_string(rep.phase) << " (max |Im E| = "
      << detail::fmt_residual(rep.max_imag) << ")\n";
  if (rep.pt_defined)
    out << "[H, PT] residual: " << detail::fmt_residual(rep.pt_commutation_residual) << " -> "
        << (rep.pt_symmetric ? "PT-symmetric" : "not PT-symmetric") << "\n";
  else
    out << "PT operator undefined (odd dimension)\n";

  out << "biortho residuals: eig " << detail::fmt_residual(rep.biortho.eigen_psi) << " / "
      << detail::fmt_residual(rep.biortho.eigen_phi) << ", biorthonormality "
      << detail::fmt_residual(rep.biortho.biorthonormality) << ", completeness "
      << detail::fmt_residual(rep.biortho.completeness) << ", spectral-rep "
      << detail::fmt_residual(rep.biortho.spectral_rep) << "\n";

  auto print_metric = [&](const MetricSection& s) {
    out << "metric [" << s.label << "]: signature " << s.signature << "\n";
    out << "  pseudo-hermiticity residual " << detail::fmt_residual(s.pseudo_hermiticity_residual)
        << " -> " << (s.pseudo_hermitian ? "pseudo-Hermitian" : "NOT pseudo-Hermitian") << "\n";
    if (s.pt_relation)
      out << "  PT relation: " << to_string(s.pt_relation->value) << " (commute "
          << detail::fmt_residual(s.pt_relation->commute_residual) << ", anticommute "
          << detail::fmt_residual(s.pt_relation->anticommute_residual) << ")\n";
  };
  if (rep.spectral) print_metric(*rep.spectral);
  if (rep.supplied_metric) print_metric(*rep.supplied_metric);

  if (!rep.doublets.empty()) {
    out << "pt doublets (" << rep.doublets.size() << "):\n";
    for (const DoubletRow& d : rep.doublets)
      out << "  E = " << format_real(d.value) << "  eta-norms (" << format_real(d.eta_norm_psi)
          << ", " << format_real(d.eta_norm_pt_psi) << ")  |<phi|PTpsi>| "
          << detail::fmt_residual(d.orthogonality_residual) << "  gram det "
          << format_real(d.gram_det) << "\n";
  } else if (!rep.doublet_note.empty()) {
    out << "pt doublets: none (" << rep.doublet_note << ")\n";
  }
  if (rep.krein) {
    out << "krein decomposition: PT-invariance " << detail::fmt_residual(rep.krein->max_pt_invariance)
        << ", eigen residual " << detail::fmt_residual(rep.krein->max_eigen_residual)
        << ", cross eta-inner " << detail::fmt_residual(rep.krein->max_cross_eta_inner)
        << ", stacked sigma_min " << format_real(rep.krein->min_stack_singular) << "\n";
  }

  out << "input matrix echo:\n";
  write_matrix(out, rep.hamiltonian);
}

inline nlohmann::ordered_json to_json(const AnalysisReport& rep) {
  using json = nlohmann::ordered_json;
  json j;
  j["input"] = rep.input_label;
  j["dimension"] = rep.hamiltonian.rows();
  j["tolerances"] = {{"rtol", rep.tols.rtol},
                     {"group_tol", rep.tols.group_tol},
                     {"imag_tol", rep.tols.imag_tol},
                     {"relation_tol", rep.tols.relation_tol}};

  json spec = json::array();
  for (const auto& c : rep.spectrum)
    spec.push_back({{"re", c.value.real()}, {"im", c.value.imag()}, {"multiplicity", c.multiplicity}});
  j["spectrum"] = spec;
  j["phase"] = to_string(rep.phase);
  j["max_imag"] = rep.max_imag;
  j["biortho_residuals"] = {{"eigen_psi", rep.biortho.eigen_psi},
                            {"eigen_phi", rep.biortho.eigen_phi},
                            {"biorthonormality", rep.biortho.biorthonormality},
                            {"completeness", rep.biortho.completeness},
                            {"spectral_rep", rep.biortho.spectral_rep}};
  j["pt_defined"] = rep.pt_defined;
  if (rep.pt_defined) {
    j["pt_commutation_residual"] = rep.pt_commutation_residual;
    j["pt_symmetric"] = rep.pt_symmetric;
  }

  auto metric_json = [](const MetricSection& s) {
    json m;
    m["label"] = s.label;
    m["signature"] = s.signature;
    m["pseudo_hermiticity_residual"] = s.pseudo_hermiticity_residual;
    m["pseudo_hermitian"] = s.pseudo_hermitian;
    if (s.pt_relation)
      m["pt_relation"] = {{"value", to_string(s.pt_relation->value)},
                          {"commute_residual", s.pt_relation->commute_residual},
                          {"anticommute_residual", s.pt_relation->anticommute_residual}};
    return m;
  };
  if (rep.spectral) j["spectral_metric"] = metric_json(*rep.spectral);
  if (rep.supplied_metric) j["supplied_metric"] = metric_json(*rep.supplied_metric);

  json ds = json::array();
  for (const DoubletRow& d : rep.doublets)
    ds.push_back({{"value", d.value},
                  {"eta_norm_psi", d.eta_norm_psi},
                  {"eta_norm_pt_psi", d.eta_norm_pt_psi},
                  {"orthogonality_residual", d.orthogonality_residual},
                  {"gram_det", d.gram_det}});
  j["doublets"] = ds;
  if (!rep.doublet_note.empty()) j["doublet_note"] = rep.doublet_note;
  if (rep.krein)
    j["krein"] = {{"max_pt_invariance", rep.krein->max_pt_invariance},
                  {"max_eigen_residual", rep.krein->max_eigen_residual},
                  {"max_cross_eta_inner", rep.krein->max_cross_eta_inner},
                  {"min_stack_singular", rep.krein->min_stack_singular}};

  json rows = json::array();
  for (std::size_t i = 0; i < rep.hamiltonian.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < rep.hamiltonian.cols(); ++k)
      row.push_back(format_complex(rep.hamiltonian(i, k)));
    rows.push_back(row);
  }
  j["matrix"] = rows;
  return j;
}

}  // namespace kreinspec
