#include "labourflow/csv.hpp"

#include "labourflow/errors.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace labourflow {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

namespace {

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

} // namespace

CsvReader::CsvReader(const std::string& path, const std::string& header)
    : path_(path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    buffer_ = ss.str();

    std::size_t eol = buffer_.find('\n');
    std::string first = strip_cr(eol == std::string::npos ? buffer_
                                                         : buffer_.substr(0, eol));
    if (first != header) {
        throw InputError(path + ": expected header \"" + header +
                         "\", found \"" + first + "\"");
    }
    n_fields_ = split_csv_line(header).size();
    pos_ = (eol == std::string::npos) ? buffer_.size() : eol + 1;
    row_ = 1;
}

bool CsvReader::next(std::vector<std::string>& fields) {
    while (pos_ < buffer_.size()) {
        std::size_t eol = buffer_.find('\n', pos_);
        std::string line = strip_cr(eol == std::string::npos
                                        ? buffer_.substr(pos_)
                                        : buffer_.substr(pos_, eol - pos_));
        pos_ = (eol == std::string::npos) ? buffer_.size() : eol + 1;
        ++row_;
        if (line.empty()) continue;
        fields = split_csv_line(line);
        if (fields.size() != n_fields_) {
            fail("expected " + std::to_string(n_fields_) + " fields, found " +
                 std::to_string(fields.size()));
        }
        return true;
    }
    return false;
}

void CsvReader::fail(const std::string& what) const {
    throw InputError(path_ + ":" + std::to_string(row_) + ": " + what);
}

std::string fmt_double(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        char whole[32];
        std::snprintf(whole, sizeof(whole), "%.0f", v);
        return whole;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    double back = std::strtod(buf, nullptr);
    if (back == v) {
        // Prefer the shortest representation that still round-trips.
        for (int prec = 1; prec < 17; ++prec) {
            char shorter[40];
            std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
            if (std::strtod(shorter, nullptr) == v) return shorter;
        }
    }
    return buf;
}

long long parse_count(const std::string& s, const std::string& context) {
    if (s.empty()) throw InputError(context + ": empty integer field");
    if (std::isspace(static_cast<unsigned char>(s.front()))) {
        throw InputError(context + ": not an integer: \"" + s + "\"");
    }
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (errno != 0 || end != s.c_str() + s.size()) {
        throw InputError(context + ": not an integer: \"" + s + "\"");
    }
    return v;
}

int parse_int(const std::string& s, const std::string& context) {
    long long v = parse_count(s, context);
    if (v < -2147483648LL || v > 2147483647LL) {
        throw InputError(context + ": integer out of range: \"" + s + "\"");
    }
    return static_cast<int>(v);
}

double parse_real(const std::string& s, const std::string& context) {
    if (s.empty()) throw InputError(context + ": empty numeric field");
    if (std::isspace(static_cast<unsigned char>(s.front()))) {
        throw InputError(context + ": not a number: \"" + s + "\"");
    }
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (errno != 0 || end != s.c_str() + s.size()) {
        throw InputError(context + ": not a number: \"" + s + "\"");
    }
    return v;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path);
    out << content;
    if (!out) throw InputError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace labourflow
