#pragma once

// Text artifacts: CSV (12 significant digits), SVG (9 significant digits), ASCII PGM.
// All output uses LF line endings and a fixed field order.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "wulff/core/errors.hpp"
#include "wulff/core/vec.hpp"
#include "wulff/series/int_series.hpp"

namespace wulff::io {

inline constexpr int kCsvDigits = 12;
inline constexpr int kSvgDigits = 9;

inline std::string number(double v, int digits = kCsvDigits) {
    if (v == 0.0) return "0";  // avoids "-0"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& header) : columns_(header.size()) { row(header); }

    CsvWriter& row(const std::vector<std::string>& cells) {
        if (cells.size() != columns_) throw ContractViolation("csv row has the wrong number of fields");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) text_ += ',';
            text_ += quoted(cells[i]);
        }
        text_ += '\n';
        return *this;
    }

    CsvWriter& row(const std::vector<double>& values) {
        std::vector<std::string> cells;
        for (double v : values) cells.push_back(number(v));
        return row(cells);
    }

    const std::string& str() const { return text_; }

private:
    static std::string quoted(const std::string& c) {
        if (c.find_first_of(",\"\n") == std::string::npos) return c;
        std::string q = "\"";
        for (char ch : c) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + "\"";
    }

    std::size_t columns_;
    std::string text_;
};

inline std::string points_csv(const std::vector<Vec2>& pts) {
    CsvWriter w({"x", "y"});
    for (const Vec2& p : pts) w.row(std::vector<double>{p.x, p.y});
    return w.str();
}

inline std::string points_csv(const std::vector<Vec3>& pts) {
    CsvWriter w({"x", "y", "z"});
    for (const Vec3& p : pts) w.row(std::vector<double>{p.x, p.y, p.z});
    return w.str();
}

/// Exact integer coefficients, one row per degree.
inline std::string coefficients_csv(const std::vector<BigInt>& coeffs) {
    CsvWriter w({"degree", "coefficient"});
    for (std::size_t k = 0; k < coeffs.size(); ++k) w.row(std::vector<std::string>{std::to_string(k), coeffs[k].str()});
    return w.str();
}

struct SvgPath {
    std::vector<Vec2> points;
    bool closed = false;
    std::string stroke = "black";
};

/// Static drawing with viewBox [-1.2 R, 1.2 R]^2, y pointing up.
inline std::string svg(const std::vector<SvgPath>& paths, double radius) {
    if (!(radius > 0.0)) throw InvalidParameter("svg radius must be positive");
    const double half = 1.2 * radius;
    auto n = [](double v) { return number(v, kSvgDigits); };
    std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + n(-half) + " " + n(-half) + " " + n(2 * half) + " " +
         n(2 * half) + "\" width=\"600\" height=\"600\">\n";
    s += "<g fill=\"none\" stroke-width=\"" + n(radius / 200) + "\" transform=\"scale(1,-1)\">\n";
    for (const auto& p : paths) {
        s += std::string(p.closed ? "<polygon" : "<polyline") + " stroke=\"" + p.stroke + "\" points=\"";
        for (std::size_t i = 0; i < p.points.size(); ++i) {
            if (i) s += ' ';
            s += n(p.points[i].x) + "," + n(p.points[i].y);
        }
        s += "\"/>\n";
    }
    s += "</g>\n</svg>\n";
    return s;
}

/// Plain (P2) greymap of a square spin array: +1 white, -1 black.
inline std::string pgm(const std::vector<std::int8_t>& spins, int side) {
    if (static_cast<long long>(side) * side != static_cast<long long>(spins.size())) {
        throw InvalidParameter("pgm needs side * side spins");
    }
    std::string s = "P2\n" + std::to_string(side) + " " + std::to_string(side) + "\n255\n";
    // row y = side - 1 first so the image has y pointing up
    for (int y = side - 1; y >= 0; --y) {
        for (int x = 0; x < side; ++x) {
            if (x) s += ' ';
            s += spins[static_cast<std::size_t>(y * side + x)] > 0 ? "255" : "0";
        }
        s += '\n';
    }
    return s;
}

/// 64-bit FNV-1a, printed as 16 hex digits.
inline std::string fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Writes the bytes verbatim (binary mode, so LF stays LF) and returns their digest.
inline std::string write_artifact(const std::filesystem::path& path, const std::string& bytes) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidParameter("cannot open " + path.string() + " for writing");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw InvalidParameter("failed writing " + path.string());
    return fnv1a(bytes);
}

}  // namespace wulff::io
