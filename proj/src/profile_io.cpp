#include "radshock/profile_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace radshock {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& s) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw io_error("trailing characters in number: " + s);
        return v;
    } catch (const std::exception&) {
        throw io_error("profile csv: bad number '" + s + "'");
    }
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

void write_profile_csv(const Profile& p, std::ostream& os) {
    os << "# radshock profile v1\n";
    os << "# kind=" << (p.sys.is_gas ? "gas" : "baby") << "\n";
    os << "# a=" << fmt(p.sys.a) << "\n";
    os << "# f_coeffs=";
    for (int i = 0; i <= 7; ++i)
        os << (i ? "," : "") << fmt(p.sys.f_coeffs[i]);
    os << "\n";
    if (p.sys.is_gas) {
        os << "# gamma=" << fmt(p.sys.gamma) << "\n";
        os << "# R=" << fmt(p.sys.R) << "\n";
        os << "# j=" << fmt(p.sys.j) << "\n";
        os << "# C1=" << fmt(p.sys.C1) << "\n";
        os << "# C2=" << fmt(p.C2) << "\n";
        os << "# sigma=" << fmt(p.sigma) << "\n";
        os << "# v_minus=" << fmt(p.v_minus) << "\n";
        os << "# v_plus=" << fmt(p.v_plus) << "\n";
    }
    if (p.sys.is_gas && p.has_fields) {
        os << "xi,v_hat,w,v,rho,u,e,theta,P,q,n\n";
        for (std::size_t i = 0; i < p.size(); ++i) {
            os << fmt(p.xi[i]) << ',' << fmt(p.v_hat[i]) << ',' << fmt(p.w[i])
               << ',' << fmt(p.v[i]) << ',' << fmt(p.rho[i]) << ','
               << fmt(p.u[i]) << ',' << fmt(p.e[i]) << ',' << fmt(p.theta[i])
               << ',' << fmt(p.P[i]) << ',' << fmt(p.q[i]) << ','
               << fmt(p.n[i]) << '\n';
        }
    } else {
        os << "xi,v_hat,w,q\n";
        for (std::size_t i = 0; i < p.size(); ++i) {
            os << fmt(p.xi[i]) << ',' << fmt(p.v_hat[i]) << ',' << fmt(p.w[i])
               << ',' << fmt(p.q.empty() ? 0.0 : p.q[i]) << '\n';
        }
    }
}

Profile read_profile_csv(std::istream& is) {
    std::map<std::string, std::string> meta;
    std::string line;
    std::vector<std::string> header;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto eq = line.find('=');
            if (eq != std::string::npos) {
                std::string key = line.substr(2, eq - 2);
                meta[key] = line.substr(eq + 1);
            }
            continue;
        }
        header = split(line, ',');
        break;
    }
    if (header.empty()) throw io_error("profile csv: missing header row");
    if (!meta.count("kind") || !meta.count("a") || !meta.count("f_coeffs"))
        throw io_error("profile csv: missing metadata (kind/a/f_coeffs)");

    Profile p;
    p.sys.is_gas = meta["kind"] == "gas";
    p.sys.a = parse_double(meta["a"]);
    auto fc = split(meta["f_coeffs"], ',');
    if (fc.size() != 8) throw io_error("profile csv: f_coeffs needs 8 entries");
    for (int i = 0; i <= 7; ++i) p.sys.f_coeffs[i] = parse_double(fc[i]);
    const double f0 = p.sys.f0();
    const double disc = f0 * f0 - 2.0 * p.sys.a * p.sys.a;
    if (!(disc > 0.0)) throw io_error("profile csv: inconsistent system (discriminant <= 0)");
    p.w0 = -p.sys.a * p.sys.a / (f0 + std::sqrt(disc));

    if (p.sys.is_gas) {
        for (const char* key : {"gamma", "R", "j", "C1", "C2", "sigma",
                                "v_minus", "v_plus"})
            if (!meta.count(key))
                throw io_error(std::string("profile csv: missing gas key ") + key);
        p.sys.gamma = parse_double(meta["gamma"]);
        p.sys.R = parse_double(meta["R"]);
        p.sys.j = parse_double(meta["j"]);
        p.sys.C1 = parse_double(meta["C1"]);
        p.C2 = parse_double(meta["C2"]);
        p.sigma = parse_double(meta["sigma"]);
        p.v_minus = parse_double(meta["v_minus"]);
        p.v_plus = parse_double(meta["v_plus"]);
    }

    const bool gas_cols = header.size() == 11;
    if (gas_cols != p.sys.is_gas && !(header.size() == 4 && !p.sys.is_gas))
        throw io_error("profile csv: column count does not match kind");

    const double w1 = -p.sys.f_coeffs[1] * p.w0 / (f0 + 3.0 * p.w0);
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cols = split(line, ',');
        if (cols.size() != header.size())
            throw io_error("profile csv: row width mismatch");
        p.xi.push_back(parse_double(cols[0]));
        p.v_hat.push_back(parse_double(cols[1]));
        p.w.push_back(parse_double(cols[2]));
        if (gas_cols) {
            p.v.push_back(parse_double(cols[3]));
            p.rho.push_back(parse_double(cols[4]));
            p.u.push_back(parse_double(cols[5]));
            p.e.push_back(parse_double(cols[6]));
            p.theta.push_back(parse_double(cols[7]));
            p.P.push_back(parse_double(cols[8]));
            p.q.push_back(parse_double(cols[9]));
            p.n.push_back(parse_double(cols[10]));
        } else {
            p.q.push_back(parse_double(cols[3]));
        }
        const double vh = p.v_hat.back();
        p.slope.push_back(vh == 0.0 ? w1 : (p.w.back() - p.w0) / vh);
    }
    if (p.size() < 5) throw io_error("profile csv: too few rows");
    p.has_fields = gas_cols;
    return p;
}

void write_profile_csv_file(const Profile& p, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open for writing: " + path);
    write_profile_csv(p, os);
    if (!os) throw io_error("write failed: " + path);
}

Profile read_profile_csv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open: " + path);
    return read_profile_csv(is);
}

} // namespace radshock
