#pragma once

#include <string>
#include <vector>

#include "edgetransit/hub/reports.hpp"

namespace edgetransit::hub {

/// All exporters write atomically (temp file + rename), emit byte-identical
/// output for identical input (stable ordering, 1-decimal precision), and
/// return the written path. They throw std::runtime_error when the
/// directory is unwritable.

std::string export_daily_csv(const std::vector<DailyReport>& days, const std::string& out_dir);
std::string export_missing_csv(const std::vector<ScheduleEntry>& missing,
                               const std::string& out_dir);
std::string export_boxplot_csv(const BoxplotReport& report, const std::string& out_dir);

std::string export_daily_svg(const std::vector<DailyReport>& days, const std::string& out_dir);
std::string export_boxplot_svg(const BoxplotReport& report, const std::string& out_dir);

}  // namespace edgetransit::hub
