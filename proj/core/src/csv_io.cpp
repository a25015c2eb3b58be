#include "bwa/csv_io.hpp"

#include "bwa/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bwa {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r' && c != ' ') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

double to_double(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw io_error(std::string("CSV parse: bad ") + what + " value '" + s + "'");
    }
}

} // namespace

std::string field_csv(const LatticeField& u) {
    std::ostringstream os;
    os << "n,x,re1,im1,re2,im2\n";
    for (std::size_t j = 0; j < u.size(); ++j) {
        os << u.index(j) << ',' << fmt_double(u.x(j)) << ',' << fmt_double(u.c1[j].real()) << ','
           << fmt_double(u.c1[j].imag()) << ',' << fmt_double(u.c2[j].real()) << ','
           << fmt_double(u.c2[j].imag()) << '\n';
    }
    return os.str();
}

LatticeField parse_field_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || split_line(line).front() != "n")
        throw io_error("lattice CSV: missing mandatory header row n,x,re1,im1,re2,im2");
    LatticeField u;
    bool first = true;
    long prev_n = 0;
    double first_x = 0.0, prev_x = 0.0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cells = split_line(line);
        if (cells.size() != 6) throw io_error("lattice CSV: expected 6 columns");
        const long n = static_cast<long>(to_double(cells[0], "index"));
        const double x = to_double(cells[1], "x");
        if (first) {
            u.origin = n;
            first_x = x;
            first = false;
        } else if (n != prev_n + 1) {
            throw io_error("lattice CSV: indices must be consecutive");
        }
        prev_n = n;
        prev_x = x;
        u.c1.emplace_back(to_double(cells[2], "re1"), to_double(cells[3], "im1"));
        u.c2.emplace_back(to_double(cells[4], "re2"), to_double(cells[5], "im2"));
    }
    if (u.c1.empty()) throw io_error("lattice CSV: no data rows");
    if (u.c1.size() > 1)
        u.h = (prev_x - first_x) / static_cast<double>(u.c1.size() - 1);
    else if (u.origin != 0)
        u.h = prev_x / static_cast<double>(u.origin);
    else
        u.h = 1.0; // single row at n = 0 leaves the spacing undetermined
    check_valid(u);
    return u;
}

std::string continuum_csv(const ContinuumField& f) {
    std::ostringstream os;
    os << "x,re1,im1,re2,im2\n";
    for (std::size_t j = 0; j < f.N(); ++j) {
        os << fmt_double(f.x(j)) << ',' << fmt_double(f.c1[j].real()) << ','
           << fmt_double(f.c1[j].imag()) << ',' << fmt_double(f.c2[j].real()) << ','
           << fmt_double(f.c2[j].imag()) << '\n';
    }
    return os.str();
}

ContinuumField parse_continuum_csv(const std::string& text, double L) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || split_line(line).front() != "x")
        throw io_error("continuum CSV: missing mandatory header row x,re1,im1,re2,im2");
    ContinuumField f;
    f.L = L;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cells = split_line(line);
        if (cells.size() != 5) throw io_error("continuum CSV: expected 5 columns");
        f.c1.emplace_back(to_double(cells[1], "re1"), to_double(cells[2], "im1"));
        f.c2.emplace_back(to_double(cells[3], "re2"), to_double(cells[4], "im2"));
    }
    check_valid(f);
    return f;
}

std::string profile_csv(const WaveProfile& p) {
    std::ostringstream os;
    os << "x,u,v\n";
    for (std::size_t i = 0; i < p.size(); ++i)
        os << fmt_double(p.xs[i]) << ',' << fmt_double(p.us[i]) << ',' << fmt_double(p.vs[i]) << '\n';
    return os.str();
}

std::string norms_csv(const std::vector<NormRecord>& norms) {
    std::ostringstream os;
    os << "z,l2h,h1h,linf\n";
    for (const auto& r : norms)
        os << fmt_double(r.z) << ',' << fmt_double(r.l2h) << ',' << fmt_double(r.h1h) << ','
           << fmt_double(r.linf) << '\n';
    return os.str();
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot write " + tmp.string());
        out << content;
        if (!out.good()) throw io_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) throw io_error("rename failed for " + path.string() + ": " + ec.message());
}

} // namespace bwa
