#include "fpd/sweep_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fpd {

namespace {

std::string format_freq(double f) {
    char buf[40];
    if (f == std::floor(f) && std::abs(f) < 1e15) {
        std::snprintf(buf, sizeof(buf), "%.0f", f);
    } else {
        std::snprintf(buf, sizeof(buf), "%.3f", f);
    }
    return buf;
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

double parse_double(const std::string& tok, int line) {
    const char* begin = tok.data();
    const char* end = begin + tok.size();
    if (begin != end && *begin == '+') ++begin;
    double v = 0.0;
    auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end)
        throw ParseError("bad number '" + tok + "'", line);
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed for " + path);
}

}  // namespace

std::string touchstone_text(const SParamSweep& sweep) {
    sweep.validate();
    const int np = sweep.port_count();
    std::string out;
    {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "# HZ S RI R %g\n", sweep.z_ref);
        out += buf;
    }
    char num[64];
    for (int k = 0; k < sweep.points(); ++k) {
        std::string line = format_freq(sweep.freqs[k]);
        int pairs_on_line = 0;
        for (int q = 0; q < np; ++q) {
            for (int p = 0; p < np; ++p) {
                if (pairs_on_line == 4) {
                    out += line + "\n";
                    line = " ";
                    pairs_on_line = 0;
                }
                const std::complex<double> v = sweep.s[k](q, p);
                std::snprintf(num, sizeof(num), " %.9f %.9f", v.real(), v.imag());
                line += num;
                ++pairs_on_line;
            }
        }
        out += line + "\n";
    }
    return out;
}

void write_touchstone(const SParamSweep& sweep, const std::string& path) {
    write_file(path, touchstone_text(sweep));
}

SParamSweep parse_touchstone(const std::string& text, int nports) {
    if (nports < 1) throw InvalidSpecError("port count must be positive");

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool have_options = false;
    double unit_scale = 1e9;  // standard default unit is GHz
    double z_ref = 50.0;
    std::vector<double> numbers;

    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const size_t bang = raw.find('!');
        std::string line = bang == std::string::npos ? raw : raw.substr(0, bang);
        std::istringstream toks(line);
        std::string tok;
        std::vector<std::string> tokens;
        while (toks >> tok) tokens.push_back(tok);
        if (tokens.empty()) continue;

        if (tokens[0][0] == '#') {
            if (have_options) throw ParseError("duplicate options line", lineno);
            have_options = true;
            if (tokens[0].size() > 1) tokens[0].erase(0, 1);  // allow "#HZ"
            else tokens.erase(tokens.begin());
            for (size_t i = 0; i < tokens.size(); ++i) {
                const std::string t = lower(tokens[i]);
                if (t == "hz") unit_scale = 1.0;
                else if (t == "khz") unit_scale = 1e3;
                else if (t == "mhz") unit_scale = 1e6;
                else if (t == "ghz") unit_scale = 1e9;
                else if (t == "s") continue;
                else if (t == "ri") continue;
                else if (t == "ma" || t == "db")
                    throw ParseError("unsupported data format '" + tokens[i] + "'; need RI", lineno);
                else if (t == "y" || t == "z" || t == "h" || t == "g")
                    throw ParseError("unsupported parameter type '" + tokens[i] + "'", lineno);
                else if (t == "r") {
                    if (i + 1 >= tokens.size())
                        throw ParseError("reference impedance missing after R", lineno);
                    z_ref = parse_double(tokens[++i], lineno);
                    if (!(z_ref > 0.0)) throw ParseError("reference impedance must be positive", lineno);
                } else {
                    throw ParseError("unknown option token '" + tokens[i] + "'", lineno);
                }
            }
            continue;
        }

        if (!have_options) throw ParseError("data before the options line", lineno);
        for (const std::string& t : tokens) numbers.push_back(parse_double(t, lineno));
    }

    if (!have_options) throw ParseError("missing options line");
    const size_t chunk = 1 + 2 * static_cast<size_t>(nports) * nports;
    if (numbers.empty()) throw ParseError("file holds no data");
    if (numbers.size() % chunk != 0)
        throw ParseError("inconsistent column counts: " + std::to_string(numbers.size()) +
                         " values do not form " + std::to_string(chunk) + "-value points");

    SParamSweep sweep;
    sweep.z_ref = z_ref;
    const size_t npts = numbers.size() / chunk;
    for (size_t t = 0; t < npts; ++t) {
        const double* v = numbers.data() + t * chunk;
        const double f = v[0] * unit_scale;
        if (!sweep.freqs.empty() && !(f > sweep.freqs.back()))
            throw ParseError("non-ascending frequency at point " + std::to_string(t + 1));
        sweep.freqs.push_back(f);
        Eigen::MatrixXcd s(nports, nports);
        size_t ix = 1;
        for (int q = 0; q < nports; ++q)
            for (int p = 0; p < nports; ++p) {
                s(q, p) = std::complex<double>(v[ix], v[ix + 1]);
                ix += 2;
            }
        sweep.s.push_back(std::move(s));
    }
    try {
        sweep.validate();
    } catch (const InvalidSpecError& e) {
        throw ParseError(std::string("invalid sweep data: ") + e.what());
    }
    return sweep;
}

int ports_from_touchstone_path(const std::string& path) {
    const size_t dot = path.rfind('.');
    if (dot != std::string::npos) {
        const std::string ext = lower(path.substr(dot + 1));
        if (ext.size() >= 3 && ext.front() == 's' && ext.back() == 'p') {
            int n = 0;
            const char* begin = ext.data() + 1;
            const char* end = ext.data() + ext.size() - 1;
            auto res = std::from_chars(begin, end, n);
            if (res.ec == std::errc() && res.ptr == end && n >= 1) return n;
        }
    }
    throw IoError("cannot infer port count from '" + path + "' (need a .sNp extension)");
}

SParamSweep read_touchstone(const std::string& path) {
    const int nports = ports_from_touchstone_path(path);
    return parse_touchstone(read_file(path), nports);
}

std::string csv_text(const SParamSweep& sweep) {
    sweep.validate();
    const int np = sweep.port_count();
    std::string out = "freq_hz";
    for (int p = 1; p <= np; ++p)
        for (int q = 1; q <= np; ++q)
            out += ",S" + std::to_string(q) + std::to_string(p) + "_db";
    out += "\n";
    char num[32];
    for (int k = 0; k < sweep.points(); ++k) {
        out += format_freq(sweep.freqs[k]);
        for (int p = 0; p < np; ++p) {
            for (int q = 0; q < np; ++q) {
                const double db =
                    20.0 * std::log10(std::max(std::abs(sweep.s[k](q, p)), 1e-10));
                std::snprintf(num, sizeof(num), ",%.2f", db);
                out += num;
            }
        }
        out += "\n";
    }
    return out;
}

void write_csv(const SParamSweep& sweep, const std::string& path) {
    write_file(path, csv_text(sweep));
}

}  // namespace fpd
