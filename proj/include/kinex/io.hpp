#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "kinex/expfit.hpp"
#include "kinex/distribution.hpp"
#include "kinex/relaxation.hpp"
#include "kinex/specs.hpp"

namespace kinex {

std::uint64_t fnv1a64(std::string_view bytes) noexcept;
std::string hex64(std::uint64_t value);

/// Shortest text that reads back to the same double ("%.17g").
std::string format_double(double value);

nlohmann::json to_json(const ModelSpec& spec);
ModelSpec model_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RrnSpec& spec);
RrnSpec rrn_spec_from_json(const nlohmann::json& j);

/// FNV-1a of the canonical JSON text of the spec.
std::uint64_t spec_hash(const ModelSpec& spec);
std::uint64_t spec_hash(const RrnSpec& spec);

// Series files: '#' comment lines carrying provenance, then "t,x_mean".
void write_series_csv(std::ostream& out, const RelaxationSeries& series);
RelaxationSeries read_series_csv(std::istream& in);

/// One row of a fit report; either a fit or the error code that stopped it.
struct FitRow {
  std::string label;
  FitForm form = FitForm::PureDecay;
  std::optional<ExpFitResult> fit;
  std::string status = "ok";
};

void write_fit_csv(std::ostream& out, const std::vector<FitRow>& rows);
void write_histogram_csv(std::ostream& out, const Histogram& hist);

/// Writes `content` to `path` (creating parent directories) and returns its
/// FNV-1a digest. Throws IoError.
std::uint64_t write_file(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace kinex
