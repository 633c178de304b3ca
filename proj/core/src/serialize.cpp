#include "ptspec/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace ptspec {

namespace {

using json = nlohmann::ordered_json;

json number(double v) {
  if (!std::isfinite(v)) return json(nullptr);
  return json(v);
}

json complex_json(cplx z) { return json{{"re", number(z.real())}, {"im", number(z.imag())}}; }

json header_json(const Header& header) {
  json cfg = json::object();
  for (const auto& [k, v] : header) cfg[k] = v;
  return cfg;
}

json optional_number(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

json grid_json(const Grid& g) {
  json j{{"kind", grid_kind_name(g.kind())},
         {"x_min", number(g.x_min())},
         {"x_max", number(g.x_max())},
         {"n", g.size()},
         {"h", number(g.spacing())}};
  return j;
}

json entry_json(const SpectrumEntry& e, std::size_t k) {
  json j{{"k", k},
         {"energy", complex_json(e.energy)},
         {"raw_energy", complex_json(e.raw_energy)},
         {"extrapolated", e.extrapolated ? complex_json(*e.extrapolated) : json(nullptr)},
         {"class", eigen_class_name(e.cls)},
         {"partner", e.partner >= 0 ? json(e.partner) : json(nullptr)},
         {"boundary_mass", number(e.boundary_mass)},
         {"box_stability", number(e.box_stability)},
         {"condition", number(e.condition)},
         {"refined", e.refined}};
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

json report_json(const SpectrumReport& r) {
  json entries = json::array();
  for (std::size_t k = 0; k < r.entries.size(); ++k) entries.push_back(entry_json(r.entries[k], k));
  return json{{"route", eigen_route_name(r.route)},
              {"grid_kind", grid_kind_name(r.grid_kind)},
              {"x_min", number(r.x_min)},
              {"x_max", number(r.x_max)},
              {"n", r.n},
              {"stencil", stencil_name(r.stencil)},
              {"richardson", r.richardson},
              {"box_checked", r.box_checked},
              {"refined", r.refined},
              {"counts",
               {{"real", r.count(EigenClass::Real)},
                {"conjugate_pair", r.count(EigenClass::ConjugatePair)},
                {"complex", r.count(EigenClass::Complex)},
                {"spurious", r.count(EigenClass::Spurious)}}},
              {"entries", std::move(entries)}};
}

json index_list(const std::vector<std::size_t>& v) {
  json a = json::array();
  for (std::size_t k : v) a.push_back(k);
  return a;
}

json symmetry_json(const SymmetryReport& s) {
  return json{{"pt_residual", optional_number(s.pt_residual)},
              {"re_even_residual", optional_number(s.re_even_residual)},
              {"im_odd_residual", optional_number(s.im_odd_residual)},
              {"im_sign_pattern", sign_pattern_name(s.im_sign_pattern)},
              {"max_abs_potential", number(s.max_abs_potential)}};
}

json well_json(const WellReport& w) {
  json minima = json::array();
  for (std::size_t k = 0; k < w.minima.size(); ++k) {
    minima.push_back(json{{"x", number(w.minima[k].x)},
                          {"re_v", number(w.minima[k].value)},
                          {"depth", number(w.depths[k])}});
  }
  return json{{"shape", well_shape_name(w.shape)},
              {"asymptotic_value", number(w.asymptotic_value)},
              {"minima", std::move(minima)},
              {"im_sign_pattern", sign_pattern_name(w.im_sign_pattern)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string class_cell(const SpectrumEntry& e) { return std::string(eigen_class_name(e.cls)); }

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_header(const Header& header) {
  std::string out;
  for (const auto& [k, v] : header) out += "# " + k + " = " + v + "\n";
  return out;
}

std::string spectrum_csv_rows(const SpectrumReport& rep) {
  std::string out = "k,re_E,im_E,raw_re,raw_im,class,partner,boundary_mass,box_stability,condition,refined\n";
  for (std::size_t k = 0; k < rep.entries.size(); ++k) {
    const SpectrumEntry& e = rep.entries[k];
    out += std::to_string(k) + ',' + format_double(e.energy.real()) + ',' +
           format_double(e.energy.imag()) + ',' + format_double(e.raw_energy.real()) + ',' +
           format_double(e.raw_energy.imag()) + ',' + class_cell(e) + ',' +
           std::to_string(e.partner) + ',' + format_double(e.boundary_mass) + ',' +
           format_double(e.box_stability) + ',' + format_double(e.condition) + ',' +
           (e.refined ? "1" : "0") + '\n';
  }
  return out;
}

std::string spectrum_csv(const SpectrumReport& rep, const Header& header) {
  return csv_header(header) + spectrum_csv_rows(rep);
}

std::string timeseries_csv(const TimeSeries& series, const Header& header) {
  std::string out = csv_header(header) + "t,N,dN_dt,sink_integral,max_defect\n";
  for (const auto& s : series.samples) {
    out += format_double(s.t) + ',' + format_double(s.norm) + ',' + format_double(s.dn_dt) + ',' +
           format_double(s.sink_integral) + ',' + format_double(s.max_defect) + '\n';
  }
  return out;
}

std::string profile_csv(const Potential& spec, const Grid& grid, const Header& header) {
  std::string out = csv_header(header) + "x,re_V,im_V\n";
  for (int j = 0; j < grid.size(); ++j) {
    const double x = grid.x(j);
    if (spec.is_singular_at(x)) continue;
    const cplx v = spec.eval(x);
    out += format_double(x) + ',' + format_double(v.real()) + ',' + format_double(v.imag()) + '\n';
  }
  return out;
}

std::string spectrum_json(const SpectrumReport& rep, const Header& header) {
  return dump(json{{"config", header_json(header)}, {"spectrum", report_json(rep)}});
}

std::string claim_json(const ClaimReport& rep, const Header& header) {
  json shifts = json::array();
  for (const auto& s : rep.level_shifts) {
    shifts.push_back(json{{"k", s.k},
                          {"full", complex_json(s.full)},
                          {"realpart", complex_json(s.realpart)},
                          {"shift", complex_json(s.shift)}});
  }
  json scan = json::array();
  for (const auto& c : rep.cutoff_scan) {
    scan.push_back(json{{"cutoff", number(c.cutoff)},
                        {"reality_verdict", c.reality_verdict},
                        {"bound", index_list(c.bound)},
                        {"spectrum", report_json(c.spectrum)}});
  }
  json doc{{"config", header_json(header)},
           {"label", rep.label},
           {"grid", grid_json(rep.grid)},
           {"levels", rep.levels},
           {"reality_verdict", rep.reality_verdict},
           {"claim_tolerance", number(rep.claim_tolerance)},
           {"max_bound_imag", number(rep.max_bound_imag)},
           {"claim_holds", rep.claim_holds},
           {"symmetry", symmetry_json(rep.symmetry)},
           {"well", well_json(rep.well)},
           {"full_bound", index_list(rep.full_bound)},
           {"realpart_bound", index_list(rep.realpart_bound)},
           {"level_shifts", std::move(shifts)},
           {"full_spectrum", report_json(rep.full_spectrum)},
           {"realpart_spectrum", report_json(rep.realpart_spectrum)},
           {"cutoff_scan", std::move(scan)}};
  return dump(doc);
}

std::string partner_json(const PartnerReport& rep, const Header& header) {
  json matches = json::array();
  for (const auto& m : rep.matches) {
    matches.push_back(json{{"minus", m.minus},
                           {"plus", m.plus},
                           {"e_minus", complex_json(rep.minus.entries[m.minus].energy)},
                           {"e_plus", complex_json(rep.plus.entries[m.plus].energy)},
                           {"mismatch", number(m.mismatch)}});
  }
  json doc{{"config", header_json(header)},
           {"max_mismatch", number(rep.max_mismatch)},
           {"matches", std::move(matches)},
           {"unpaired_minus", index_list(rep.unpaired_minus)},
           {"unpaired_plus", index_list(rep.unpaired_plus)},
           {"minus_bound", index_list(rep.minus_bound)},
           {"plus_bound", index_list(rep.plus_bound)},
           {"minus", report_json(rep.minus)},
           {"plus", report_json(rep.plus)}};
  return dump(doc);
}

}  // namespace ptspec
