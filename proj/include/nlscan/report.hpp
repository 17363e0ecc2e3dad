#pragma once

#include <filesystem>
#include <string>

#include "nlscan/armodel.hpp"
#include "nlscan/epochs.hpp"
#include "nlscan/nonlin.hpp"
#include "nlscan/series.hpp"
#include "nlscan/testing.hpp"

namespace nlscan {

inline constexpr int kReportSchemaVersion = 1;

// Everything cmd_analyze produces for one instrument.
struct InstrumentReport {
    std::string instrument_id;
    SummaryStats summary;
    TestOutcome adf_outcome;
    TestOutcome rals_outcome;
    ARFit ar_fit;
    BatteryReport battery;
    ScanReport scan;
};

std::string to_json(const InstrumentReport& report);

// Static timeline: return trace with significant windows shaded.
std::string render_svg(const ReturnSeries& returns, const ScanReport& scan);

// Writes via a temp file + rename so readers never see partial output.
void atomic_write(const std::filesystem::path& path, const std::string& content);

}  // namespace nlscan
