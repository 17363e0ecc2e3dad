#include "nlscan/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace nlscan {

std::string to_json(const InstrumentReport& r) {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["instrument_id"] = r.instrument_id;
    j["summary_stats"] = nlohmann::ordered_json::parse(to_json(r.summary));
    j["adf"] = nlohmann::ordered_json::parse(to_json(r.adf_outcome));
    j["rals"] = nlohmann::ordered_json::parse(to_json(r.rals_outcome));
    j["ar_fit"] = nlohmann::ordered_json::parse(to_json(r.ar_fit));
    j["battery"] = nlohmann::ordered_json::parse(to_json(r.battery));
    j["scan"] = nlohmann::ordered_json::parse(to_json(r.scan));
    return j.dump(2);
}

std::string render_svg(const ReturnSeries& returns, const ScanReport& scan) {
    const int width = 960, height = 240, margin = 10;
    const auto& obs = returns.observations;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\">\n";

    if (!obs.empty()) {
        double lo = obs[0].value, hi = obs[0].value;
        for (const auto& o : obs) {
            lo = std::min(lo, o.value);
            hi = std::max(hi, o.value);
        }
        if (hi <= lo) hi = lo + 1.0;
        auto xpix = [&](std::size_t i) {
            return margin + (width - 2.0 * margin) * static_cast<double>(i) /
                                static_cast<double>(obs.size() - 1);
        };
        auto ypix = [&](double v) {
            return height - margin - (height - 2.0 * margin) * (v - lo) / (hi - lo);
        };

        // Shade significant windows. Window index i covers residuals
        // [i*n, (i+1)*n), offset by the AR order relative to the returns.
        const std::size_t offset = scan.ar_order_used;
        for (const auto& w : scan.windows) {
            if (!w.significant) continue;
            const std::size_t a = offset + w.index * w.n;
            const std::size_t b = std::min(a + w.n, obs.size() - 1);
            if (a >= obs.size()) continue;
            os << "  <rect x=\"" << xpix(a) << "\" y=\"" << margin << "\" width=\""
               << xpix(b) - xpix(a) << "\" height=\"" << height - 2 * margin
               << "\" fill=\"#f4a1a1\" fill-opacity=\"0.5\"/>\n";
        }

        os << "  <polyline fill=\"none\" stroke=\"#27415e\" stroke-width=\"0.6\" points=\"";
        for (std::size_t i = 0; i < obs.size(); ++i) {
            if (i) os << ' ';
            os << xpix(i) << ',' << ypix(obs[i].value);
        }
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const auto tmp = path.parent_path() / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace nlscan
