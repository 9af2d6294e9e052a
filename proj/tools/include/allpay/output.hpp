#pragma once

#include <string>
#include <vector>

namespace allpay::cli {

// Locale-independent formatting with 12 significant digits.
std::string format_number(double v);

// RFC-4180-style CSV assembly: header row first, fields quoted only when
// they contain a comma, quote or newline.
class CsvBuilder {
public:
    explicit CsvBuilder(std::vector<std::string> header);
    void add_row(std::vector<std::string> fields);
    const std::string& str() const { return buf_; }

private:
    void append_row(const std::vector<std::string>& fields);
    std::string buf_;
    std::size_t columns_ = 0;
};

// Atomic artifact write: temp file in the target directory, then rename.
// Creates parent directories. An empty path streams to stdout instead.
void write_artifact(const std::string& path, const std::string& content);

}  // namespace allpay::cli
