#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace labourflow {

// Minimal CSV support for the engine's file formats. Fields are plain
// tokens (no quoting); identifiers may not contain ',' or ':'.

class CsvReader {
public:
    // Opens the file and checks the header line matches `header` exactly.
    CsvReader(const std::string& path, const std::string& header);

    // Reads the next data row into `fields`. Returns false at EOF.
    // Throws InputError on wrong arity, naming the 1-based row number.
    bool next(std::vector<std::string>& fields);

    // 1-based line number of the row most recently returned.
    long row_number() const { return row_; }
    const std::string& path() const { return path_; }

    [[noreturn]] void fail(const std::string& what) const;

private:
    std::string path_;
    std::string buffer_;
    std::size_t pos_ = 0;
    std::size_t n_fields_ = 0;
    long row_ = 0;
};

// Splits one line on commas. Keeps empty fields.
std::vector<std::string> split_csv_line(const std::string& line);

// Locale-independent numeric formatting: shortest round-trip form.
std::string fmt_double(double v);

// Strict parsers; throw InputError with `context` on failure.
long long parse_count(const std::string& s, const std::string& context);
double parse_real(const std::string& s, const std::string& context);
int parse_int(const std::string& s, const std::string& context);

// Writes `content` to `path`, throwing InputError if the file cannot
// be opened.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace labourflow
