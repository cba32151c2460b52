#include "benchsim/csv.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <system_error>

namespace benchsim {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

constexpr const char* kBaseHeader = "time_s,reference,force_meas_n,position_m,velocity_mps,command";
constexpr const char* kPressureCols = ",p_a_pa,p_b_pa";

double parse_double_field(const std::string& field, const std::string& origin,
                          std::size_t line_no) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last) {
        throw SimError(origin + ":" + std::to_string(line_no) + ": bad numeric field '" +
                       field + "'");
    }
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::string run_csv_text(const TimeSeries& ts) {
    if (ts.size() == 0) {
        throw SimError("refusing to write an empty time series");
    }
    std::string out;
    out.reserve(ts.size() * 96);
    out += kBaseHeader;
    if (ts.has_pressures) {
        out += kPressureCols;
    }
    out += ",flags\n";
    for (std::size_t i = 0; i < ts.size(); ++i) {
        out += format_double(ts.time_s[i]);
        out += ',';
        out += format_double(ts.reference[i]);
        out += ',';
        out += format_double(ts.force_meas_n[i]);
        out += ',';
        out += format_double(ts.position_m[i]);
        out += ',';
        out += format_double(ts.velocity_mps[i]);
        out += ',';
        out += format_double(ts.command[i]);
        out += ',';
        if (ts.has_pressures) {
            out += format_double(ts.p_a_pa[i]);
            out += ',';
            out += format_double(ts.p_b_pa[i]);
            out += ',';
        }
        out += std::to_string(ts.flags[i]);
        out += '\n';
    }
    return out;
}

void write_run_csv(const TimeSeries& ts, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw SimError("cannot open for writing: " + path);
    }
    f << run_csv_text(ts);
    if (!f) {
        throw SimError("write failed: " + path);
    }
}

TimeSeries parse_run_csv(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw SimError(origin + ": empty file");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    TimeSeries ts;
    const std::string with_p = std::string(kBaseHeader) + kPressureCols + ",flags";
    const std::string without_p = std::string(kBaseHeader) + ",flags";
    if (line == with_p) {
        ts.has_pressures = true;
    } else if (line == without_p) {
        ts.has_pressures = false;
    } else {
        throw SimError(origin + ": unrecognized header row");
    }
    const std::size_t ncols = ts.has_pressures ? 9 : 7;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != ncols) {
            throw SimError(origin + ":" + std::to_string(line_no) + ": expected " +
                           std::to_string(ncols) + " columns, found " +
                           std::to_string(fields.size()));
        }
        std::size_t k = 0;
        ts.time_s.push_back(parse_double_field(fields[k++], origin, line_no));
        ts.reference.push_back(parse_double_field(fields[k++], origin, line_no));
        ts.force_meas_n.push_back(parse_double_field(fields[k++], origin, line_no));
        ts.position_m.push_back(parse_double_field(fields[k++], origin, line_no));
        ts.velocity_mps.push_back(parse_double_field(fields[k++], origin, line_no));
        ts.command.push_back(parse_double_field(fields[k++], origin, line_no));
        if (ts.has_pressures) {
            ts.p_a_pa.push_back(parse_double_field(fields[k++], origin, line_no));
            ts.p_b_pa.push_back(parse_double_field(fields[k++], origin, line_no));
        }
        std::uint32_t fl = 0;
        const std::string& ff = fields[k];
        const auto res = std::from_chars(ff.data(), ff.data() + ff.size(), fl);
        if (res.ec != std::errc{} || res.ptr != ff.data() + ff.size()) {
            throw SimError(origin + ":" + std::to_string(line_no) + ": bad flags field '" +
                           ff + "'");
        }
        ts.flags.push_back(fl);
        if (ts.size() >= 2 && !(ts.time_s[ts.size() - 1] > ts.time_s[ts.size() - 2])) {
            throw SimError(origin + ":" + std::to_string(line_no) +
                           ": time column not strictly increasing");
        }
    }
    if (ts.size() == 0) {
        throw SimError(origin + ": no data rows");
    }
    return ts;
}

TimeSeries read_run_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw SimError("cannot open: " + path);
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_run_csv(ss.str(), path);
}

}  // namespace benchsim
