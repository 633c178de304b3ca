#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ptspec/analysis.hpp"
#include "ptspec/classify.hpp"
#include "ptspec/dynamics.hpp"
#include "ptspec/grid.hpp"
#include "ptspec/potentials.hpp"

namespace ptspec {

/// Ordered key/value pairs describing the resolved run configuration.
using Header = std::vector<std::pair<std::string, std::string>>;

/// printf "%.17g".
std::string format_double(double v);

/// "# key = value" lines.
std::string csv_header(const Header& header);

/// Columns: k, re_E, im_E, raw_re, raw_im, class, partner, boundary_mass,
/// box_stability, condition, refined.
std::string spectrum_csv_rows(const SpectrumReport& rep);
std::string spectrum_csv(const SpectrumReport& rep, const Header& header);

/// Columns: t, N, dN_dt, sink_integral, max_defect.
std::string timeseries_csv(const TimeSeries& series, const Header& header);

/// Columns: x, re_V, im_V; singular nodes are skipped.
std::string profile_csv(const Potential& spec, const Grid& grid, const Header& header);

/// JSON documents with the header as a leading "config" object.
std::string spectrum_json(const SpectrumReport& rep, const Header& header);
std::string claim_json(const ClaimReport& rep, const Header& header);
std::string partner_json(const PartnerReport& rep, const Header& header);

}  // namespace ptspec
