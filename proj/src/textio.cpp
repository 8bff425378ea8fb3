#include "textio.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rarenet {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string& token) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || errno == ERANGE)
        throw std::runtime_error("bad number: '" + token + "'");
    while (*end == ' ' || *end == '\r' || *end == '\t') ++end;
    if (*end != '\0') throw std::runtime_error("bad number: '" + token + "'");
    return v;
}

long long parse_int(const std::string& token) {
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(token.c_str(), &end, 10);
    if (end == token.c_str() || errno == ERANGE)
        throw std::runtime_error("bad integer: '" + token + "'");
    while (*end == ' ' || *end == '\r' || *end == '\t') ++end;
    if (*end != '\0') throw std::runtime_error("bad integer: '" + token + "'");
    return v;
}

std::string audit_comment_block(const std::string& audit_json) {
    if (audit_json.empty()) return {};
    std::string out;
    out += "# config ";
    for (char c : audit_json)
        out += (c == '\n') ? ' ' : c;
    out += '\n';
    return out;
}

}  // namespace rarenet
