#include "semd/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace semd {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

}  // namespace

CsvData read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open CSV file: " + path);

    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw ParseError("CSV is empty", path + ", line 1");
    ++line_no;
    CsvData out;
    for (const std::string& f : split_fields(line)) out.header.push_back(trim(f));
    const std::size_t cols = out.header.size();

    std::vector<Signal> columns(cols);
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const std::vector<std::string> fields = split_fields(line);
        const std::string where = path + ", line " + std::to_string(line_no);
        if (fields.size() != cols)
            throw ParseError("expected " + std::to_string(cols) + " fields, got " +
                                 std::to_string(fields.size()),
                             where);
        for (std::size_t j = 0; j < cols; ++j) {
            const std::string field = trim(fields[j]);
            if (field.empty()) throw ParseError("empty numeric field", where);
            char* end = nullptr;
            const double v = std::strtod(field.c_str(), &end);
            if (end != field.c_str() + field.size())
                throw ParseError("cannot parse number '" + field + "'", where);
            if (!std::isfinite(v)) throw ParseError("non-finite value '" + field + "'", where);
            columns[j].push_back(v);
        }
    }
    if (columns.empty() || columns[0].empty())
        throw ParseError("CSV has a header but no data rows", path + ", line " + std::to_string(line_no));

    out.data = MultiSignal::from_channels(columns);
    return out;
}

void write_csv(const std::string& path, const MultiSignal& data,
               const std::vector<std::string>& header) {
    if (header.size() != data.channels())
        throw InvalidInput("write_csv: header size does not match channel count");

    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open file for writing: " + path);

    for (std::size_t j = 0; j < header.size(); ++j)
        out << (j ? "," : "") << header[j];
    out << '\n';

    char buf[40];
    for (std::size_t i = 0; i < data.rows(); ++i) {
        for (std::size_t j = 0; j < data.channels(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", data(i, j));
            out << (j ? "," : "") << buf;
        }
        out << '\n';
    }
    if (!out) throw InvalidInput("write failed: " + path);
}

namespace {

/// PNM header token reader: skips whitespace and '#' comments, tracking
/// the byte offset for error messages.
std::string next_pnm_token(std::istream& in, const std::string& path) {
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (!std::isspace(c)) {
            break;
        }
        c = in.get();
    }
    if (c == EOF)
        throw ParseError("unexpected end of PGM header",
                         path + ", byte " + std::to_string(in.tellg() == -1 ? 0 : (long)in.tellg()));
    std::string tok;
    while (c != EOF && !std::isspace(c)) {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    }
    return tok;
}

}  // namespace

Image read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open PGM file: " + path);

    auto fail = [&path, &in](const std::string& msg) -> ParseError {
        const long pos = in.tellg() == std::streampos(-1) ? 0 : static_cast<long>(in.tellg());
        return ParseError(msg, path + ", byte " + std::to_string(pos));
    };

    const std::string magic = next_pnm_token(in, path);
    if (magic != "P5") throw fail("not a binary PGM (magic '" + magic + "', expected P5)");

    auto parse_uint = [&fail](const std::string& tok, const char* what) -> std::size_t {
        char* end = nullptr;
        const unsigned long v = std::strtoul(tok.c_str(), &end, 10);
        if (end != tok.c_str() + tok.size() || v == 0)
            throw fail(std::string("bad ") + what + " '" + tok + "'");
        return static_cast<std::size_t>(v);
    };
    const std::size_t width = parse_uint(next_pnm_token(in, path), "width");
    const std::size_t height = parse_uint(next_pnm_token(in, path), "height");
    const std::size_t maxval = parse_uint(next_pnm_token(in, path), "maxval");
    if (maxval != 255) throw fail("unsupported maxval " + std::to_string(maxval) + " (expected 255)");
    // next_pnm_token consumed exactly one whitespace byte after maxval;
    // pixel data starts here.

    std::vector<unsigned char> bytes(width * height);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (static_cast<std::size_t>(in.gcount()) != bytes.size())
        throw fail("truncated pixel data (" + std::to_string(in.gcount()) + " of " +
                   std::to_string(bytes.size()) + " bytes)");

    Image img(height, width);
    for (std::size_t p = 0; p < bytes.size(); ++p) img.data()[p] = static_cast<double>(bytes[p]);
    return img;
}

void write_pgm(const std::string& path, const Image& img, bool rescale) {
    if (img.rows() == 0 || img.cols() == 0) throw InvalidInput("write_pgm: empty image");

    double lo = img.data()[0], hi = img.data()[0];
    if (rescale) {
        for (double v : img.data()) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot open file for writing: " + path);
    out << "P5\n" << img.cols() << " " << img.rows() << "\n255\n";

    std::vector<unsigned char> bytes(img.data().size());
    for (std::size_t p = 0; p < bytes.size(); ++p) {
        double v = img.data()[p];
        if (rescale) v = hi > lo ? 255.0 * (v - lo) / (hi - lo) : 0.0;
        const long q = std::lround(v);
        bytes[p] = static_cast<unsigned char>(std::clamp(q, 0L, 255L));
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw InvalidInput("write failed: " + path);
}

}  // namespace semd
