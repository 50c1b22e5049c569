#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "thinsets/signal.hpp"

namespace thinsets {

// Shortest round-trip decimal form, '.' decimal point, locale-independent.
std::string fmt_double(double v);

// RFC-4180-style CSV: header row, comma separated, LF line endings.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<std::string>& fields);
    static std::string num(double v) { return fmt_double(v); }
    static std::string num(int64_t v) { return std::to_string(v); }

private:
    struct Impl;
    Impl* impl_;
};

// "x,value" rows (header allowed) -> Signal.
Signal read_signal_csv(const std::string& path);
void write_signal_csv(const std::string& path, const Signal& s,
                      const std::string& value_header = "value");

// Minimal hand-emitted SVG polyline chart; advisory output, CSV is canonical.
void write_svg_line_chart(const std::string& path, const std::string& title,
                          const std::vector<double>& xs, const std::vector<double>& ys,
                          bool log_x = false, bool log_y = false);

}  // namespace thinsets
