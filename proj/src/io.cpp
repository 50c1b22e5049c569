#include "thinsets/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace thinsets {

std::string fmt_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

struct CsvWriter::Impl {
    std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : impl_(new Impl) {
    impl_->out.open(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!impl_->out) fail(Errc::io_error, "cannot open '" + path + "' for writing");
    row(header);
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) impl_->out << ',';
        impl_->out << fields[i];
    }
    impl_->out << '\n';
    if (!impl_->out) fail(Errc::io_error, "write failure");
}

Signal read_signal_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::io_error, "cannot open '" + path + "'");
    std::vector<std::pair<int64_t, double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) fail(Errc::io_error, "bad signal row: " + line);
        try {
            int64_t x = std::stoll(line.substr(0, comma));
            double v = std::stod(line.substr(comma + 1));
            rows.emplace_back(x, v);
        } catch (const std::exception&) {
            // header row
            continue;
        }
    }
    if (rows.empty()) fail(Errc::io_error, "no rows in '" + path + "'");
    int64_t lo = rows.front().first, hi = rows.front().first;
    for (auto& [x, v] : rows) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    if (hi - lo > (int64_t(1) << 26)) fail(Errc::io_error, "signal span too large");
    Signal s = Signal::zeros(lo, hi);
    for (auto& [x, v] : rows) s.ref(x) = v;
    return s;
}

void write_signal_csv(const std::string& path, const Signal& s, const std::string& value_header) {
    CsvWriter w(path, {"x", value_header});
    for (int64_t x = s.lo(); x <= s.hi(); ++x)
        if (s.at(x) != 0.0) w.row({CsvWriter::num(x), CsvWriter::num(s.at(x))});
}

void write_svg_line_chart(const std::string& path, const std::string& title,
                          const std::vector<double>& xs, const std::vector<double>& ys,
                          bool log_x, bool log_y) {
    if (xs.size() != ys.size() || xs.empty()) fail(Errc::io_error, "chart needs matching x/y");
    auto tx = [&](double v) { return log_x ? std::log10(std::max(v, 1e-300)) : v; };
    auto ty = [&](double v) { return log_y ? std::log10(std::max(v, 1e-300)) : v; };
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (size_t i = 0; i < xs.size(); ++i) {
        xmin = std::min(xmin, tx(xs[i]));
        xmax = std::max(xmax, tx(xs[i]));
        ymin = std::min(ymin, ty(ys[i]));
        ymax = std::max(ymax, ty(ys[i]));
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    const double W = 640, H = 400, m = 50;
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::io_error, "cannot open '" + path + "'");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
        << title << "</text>\n";
    out << "<line x1=\"" << m << "\" y1=\"" << H - m << "\" x2=\"" << W - m << "\" y2=\""
        << H - m << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << m << "\" y1=\"" << m << "\" x2=\"" << m << "\" y2=\"" << H - m
        << "\" stroke=\"black\"/>\n";
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < xs.size(); ++i) {
        double px = m + (tx(xs[i]) - xmin) / (xmax - xmin) * (W - 2 * m);
        double py = H - m - (ty(ys[i]) - ymin) / (ymax - ymin) * (H - 2 * m);
        out << px << ',' << py << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"" << m << "\" y=\"" << H - m + 16 << "\" font-size=\"10\">"
        << fmt_double(log_x ? std::pow(10, xmin) : xmin) << "</text>\n";
    out << "<text x=\"" << W - m << "\" y=\"" << H - m + 16
        << "\" text-anchor=\"end\" font-size=\"10\">"
        << fmt_double(log_x ? std::pow(10, xmax) : xmax) << "</text>\n";
    out << "<text x=\"" << m - 4 << "\" y=\"" << H - m << "\" text-anchor=\"end\" font-size=\"10\">"
        << fmt_double(log_y ? std::pow(10, ymin) : ymin) << "</text>\n";
    out << "<text x=\"" << m - 4 << "\" y=\"" << m << "\" text-anchor=\"end\" font-size=\"10\">"
        << fmt_double(log_y ? std::pow(10, ymax) : ymax) << "</text>\n";
    out << "</svg>\n";
}

}  // namespace thinsets
