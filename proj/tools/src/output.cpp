#include "allpay/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "allpay/errors.hpp"

namespace allpay::cli {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

CsvBuilder::CsvBuilder(std::vector<std::string> header) : columns_(header.size()) {
    append_row(header);
}

void CsvBuilder::add_row(std::vector<std::string> fields) {
    if (fields.size() != columns_)
        throw DomainError("csv: row width does not match the header");
    append_row(fields);
}

void CsvBuilder::append_row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) buf_ += ',';
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\n\r") == std::string::npos) {
            buf_ += f;
        } else {
            buf_ += '"';
            for (char c : f) {
                if (c == '"') buf_ += '"';
                buf_ += c;
            }
            buf_ += '"';
        }
    }
    buf_ += '\n';
}

void write_artifact(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DomainError("cannot open output file: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw DomainError("failed writing output file: " + tmp.string());
    }
    fs::rename(tmp, target);
}

}  // namespace allpay::cli
