#pragma once

#include <string>

#include "benchsim/state.hpp"

namespace benchsim {

// Shortest decimal text that round-trips the exact double value.
std::string format_double(double v);

// One row per control tick; pressure columns appear only when the series has them.
// Values render at full precision so a read-back equals the source bit for bit.
void write_run_csv(const TimeSeries& ts, const std::string& path);
std::string run_csv_text(const TimeSeries& ts);

TimeSeries read_run_csv(const std::string& path);
TimeSeries parse_run_csv(const std::string& text, const std::string& origin);

}  // namespace benchsim
