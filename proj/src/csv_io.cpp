#include "repoconv/csv_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace repoconv {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& s, const std::string& where, int line_no) {
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r')) --end;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw std::runtime_error(where + ": line " + std::to_string(line_no) +
                                 ": cannot parse number '" + s + "'");
    }
    return value;
}

std::string trimmed(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n' || s.back() == ' ')) {
        s.pop_back();
    }
    return s;
}

}  // namespace

DiscountCurve read_curve_csv(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line) || trimmed(line) != "time,df") {
        throw std::runtime_error(name + ": expected header 'time,df'");
    }
    std::vector<CurvePillar> pillars;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trimmed(line).empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 2) {
            throw std::runtime_error(name + ": line " + std::to_string(line_no) +
                                     ": expected two fields");
        }
        pillars.push_back({parse_double(fields[0], name, line_no),
                           parse_double(fields[1], name, line_no)});
    }
    return DiscountCurve(0.0, std::move(pillars));
}

DiscountCurve read_curve_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open curve file: " + path);
    return read_curve_csv(in, path);
}

std::string write_curve_csv(const DiscountCurve& curve) {
    std::string out = "time,df\n";
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", curve.valuation_time(), 1.0);
    out += buf;
    for (const auto& p : curve.pillars()) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p.time, p.df);
        out += buf;
    }
    return out;
}

std::vector<RepoQuote> read_quote_csv(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line) || trimmed(line) != "start,end,rate,accrual") {
        throw std::runtime_error(name + ": expected header 'start,end,rate,accrual'");
    }
    std::vector<RepoQuote> quotes;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trimmed(line).empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 4) {
            throw std::runtime_error(name + ": line " + std::to_string(line_no) +
                                     ": expected four fields");
        }
        RepoQuote q{parse_double(fields[0], name, line_no),
                    parse_double(fields[1], name, line_no),
                    parse_double(fields[2], name, line_no),
                    parse_double(fields[3], name, line_no)};
        q.validate();
        quotes.push_back(q);
    }
    return quotes;
}

std::vector<RepoQuote> read_quote_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open quote file: " + path);
    return read_quote_csv(in, path);
}

}  // namespace repoconv
