#include "vlt/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "vlt/error.hpp"

namespace vlt::io {

namespace {

class Writer {
public:
    explicit Writer(const std::string& path) : path_(path), out_(path, std::ios::binary) {
        if (!out_) throw IoError("cannot open '" + path + "' for writing");
    }
    void magic(const char* m) { out_.write(m, 4); }
    void u32(std::uint32_t v) {
        unsigned char b[4];
        for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
        out_.write(reinterpret_cast<const char*>(b), 4);
    }
    void f64(double d) {
        std::uint64_t v;
        std::memcpy(&v, &d, 8);
        unsigned char b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
        out_.write(reinterpret_cast<const char*>(b), 8);
    }
    void finish() {
        out_.flush();
        if (!out_) throw IoError("write to '" + path_ + "' failed");
    }

private:
    std::string path_;
    std::ofstream out_;
};

class Reader {
public:
    explicit Reader(const std::string& path) : path_(path), in_(path, std::ios::binary) {
        if (!in_) throw IoError("cannot open '" + path + "'");
    }
    void expect_magic(const char* m) {
        char b[4];
        read(b, 4);
        if (std::memcmp(b, m, 4) != 0) throw IoError("'" + path_ + "' is not a " + std::string(m, 4) + " file");
    }
    std::uint32_t u32() {
        unsigned char b[4];
        read(reinterpret_cast<char*>(b), 4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
        return v;
    }
    double f64() {
        unsigned char b[8];
        read(reinterpret_cast<char*>(b), 8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
        double d;
        std::memcpy(&d, &v, 8);
        return d;
    }
    double finite() {
        const double d = f64();
        if (!std::isfinite(d)) throw IoError("'" + path_ + "' contains a non-finite value");
        return d;
    }
    void expect_end() {
        if (in_.peek() != std::char_traits<char>::eof()) throw IoError("'" + path_ + "' has trailing bytes");
    }
    const std::string& path() const { return path_; }

private:
    void read(char* b, std::streamsize n) {
        in_.read(b, n);
        if (in_.gcount() != n) throw IoError("'" + path_ + "' is truncated");
    }
    std::string path_;
    std::ifstream in_;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string format_real(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

void write_field(const std::string& path, const std::vector<ScalarField>& comps) {
    if (comps.empty() || comps.size() > 2) throw IoError("VLT1 files hold one or two components");
    const Grid2D& g = comps[0].grid();
    for (const ScalarField& c : comps)
        if (!(c.grid() == g)) throw IoError("components of a VLT1 file must share one grid");
    Writer w(path);
    w.magic("VLT1");
    w.u32(static_cast<std::uint32_t>(g.nx));
    w.u32(static_cast<std::uint32_t>(g.ny));
    w.f64(g.h);
    w.f64(g.origin.x);
    w.f64(g.origin.y);
    w.f64(g.r1);
    w.f64(g.r2);
    w.u32(static_cast<std::uint32_t>(comps.size()));
    for (const ScalarField& c : comps)
        for (double v : c.values()) w.f64(v);
    w.finish();
}

std::vector<ScalarField> read_field(const std::string& path) {
    Reader r(path);
    r.expect_magic("VLT1");
    Grid2D g;
    const std::uint32_t nx = r.u32(), ny = r.u32();
    if (nx > (1u << 16) || ny > (1u << 16)) throw IoError("'" + path + "' declares an implausible grid size");
    g.nx = static_cast<int>(nx);
    g.ny = static_cast<int>(ny);
    g.h = r.finite();
    g.origin.x = r.finite();
    g.origin.y = r.finite();
    g.r1 = r.finite();
    g.r2 = r.finite();
    try {
        g.validate();
    } catch (const ConfigError& e) {
        throw IoError("'" + path + "' has an invalid grid: " + e.what());
    }
    const std::uint32_t nc = r.u32();
    if (nc != 1 && nc != 2) throw IoError("'" + path + "' declares " + std::to_string(nc) + " components");
    std::vector<ScalarField> out;
    for (std::uint32_t c = 0; c < nc; ++c) {
        std::vector<double> v(g.size());
        for (double& x : v) x = r.finite();
        out.emplace_back(g, std::move(v));
    }
    r.expect_end();
    return out;
}

void write_scalar(const std::string& path, const ScalarField& h) { write_field(path, {h}); }

void write_vector(const std::string& path, const VectorField& f) { write_field(path, {f.f1, f.f2}); }

ScalarField read_scalar(const std::string& path) {
    auto c = read_field(path);
    if (c.size() != 1) throw IoError("'" + path + "' must hold a scalar field");
    return std::move(c[0]);
}

VectorField read_vector(const std::string& path) {
    auto c = read_field(path);
    if (c.size() != 2) throw IoError("'" + path + "' must hold a vector field");
    return VectorField(std::move(c[0]), std::move(c[1]));
}

void write_sinogram(const std::string& path, const Sinogram& sg) {
    Writer w(path);
    w.magic("VLS1");
    w.u32(static_cast<std::uint32_t>(sg.n_angles));
    w.u32(static_cast<std::uint32_t>(sg.n_offsets));
    w.u32(static_cast<std::uint32_t>(sg.ncomp));
    w.f64(sg.ds);
    w.f64(sg.angle0);
    w.f64(sg.dangle);
    for (double v : sg.values) w.f64(v);
    w.finish();
}

Sinogram read_sinogram(const std::string& path) {
    Reader r(path);
    r.expect_magic("VLS1");
    const std::uint32_t na = r.u32(), no = r.u32(), nc = r.u32();
    if (na == 0 || no == 0 || na > (1u << 20) || no > (1u << 20) || (nc != 1 && nc != 2))
        throw IoError("'" + path + "' declares an invalid sinogram layout");
    const double ds = r.finite(), a0 = r.finite(), da = r.finite();
    Sinogram sg;
    try {
        sg = Sinogram(static_cast<int>(na), static_cast<int>(no), static_cast<int>(nc), ds, a0, da);
    } catch (const ConfigError& e) {
        throw IoError("'" + path + "': " + e.what());
    }
    for (double& v : sg.values) v = r.finite();
    r.expect_end();
    return sg;
}

void write_csv(const std::string& path, const std::vector<ScalarField>& comps) {
    if (comps.empty() || comps.size() > 2) throw IoError("CSV export takes one or two components");
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    const Grid2D& g = comps[0].grid();
    out << (comps.size() == 1 ? "x,y,v1\n" : "x,y,v1,v2\n");
    out << std::setprecision(17);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const Vec2 p = g.point(i, j);
            out << p.x << ',' << p.y;
            for (const ScalarField& c : comps) out << ',' << c(i, j);
            out << '\n';
        }
    if (!out) throw IoError("write to '" + path + "' failed");
}

std::multimap<std::string, std::string> read_key_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::multimap<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        kv.emplace(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return kv;
}

std::vector<double> parse_reals(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ConfigError("'" + text + "' is not a comma-separated list of numbers");
        }
        if (used != item.size() || !std::isfinite(v))
            throw ConfigError("'" + text + "' is not a comma-separated list of numbers");
        out.push_back(v);
    }
    return out;
}

Direction checked_direction(double x, double y, const std::string& what, std::vector<std::string>* warnings) {
    const double n = std::hypot(x, y);
    if (!(n > 0.0)) throw GeometryError(what + " is the zero vector");
    if (std::abs(n - 1.0) > 1e-6 && warnings)
        warnings->push_back(what + " has length " + format_real(n) + "; normalized");
    return Direction::normalized({x, y});
}

VLineGeometry read_vline_geometry(const std::string& path, std::vector<std::string>* warnings) {
    const auto kv = read_key_values(path);
    auto dir = [&](const std::string& key) {
        if (kv.count(key) != 1) throw ConfigError(path + ": expected exactly one '" + key + " = x,y' line");
        const auto v = parse_reals(kv.find(key)->second);
        if (v.size() != 2) throw ConfigError(path + ": '" + key + "' needs two components");
        return checked_direction(v[0], v[1], key, warnings);
    };
    return VLineGeometry(dir("u"), dir("v"));
}

void write_vline_geometry(const std::string& path, const VLineGeometry& g) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "u = " << format_real(g.u().x()) << ',' << format_real(g.u().y()) << '\n';
    out << "v = " << format_real(g.v().x()) << ',' << format_real(g.v().y()) << '\n';
    if (!out) throw IoError("write to '" + path + "' failed");
}

StarGeometry read_star_geometry(const std::string& path, std::vector<std::string>* warnings) {
    const auto kv = read_key_values(path);
    std::vector<Direction> g;
    std::vector<double> c;
    const auto [b, e] = kv.equal_range("ray");
    for (auto it = b; it != e; ++it) {
        const auto v = parse_reals(it->second);
        if (v.size() != 3) throw ConfigError(path + ": 'ray' needs gx,gy,c");
        g.push_back(checked_direction(v[0], v[1], "ray " + std::to_string(g.size()), warnings));
        c.push_back(v[2]);
    }
    return StarGeometry(std::move(g), std::move(c));
}

void write_star_geometry(const std::string& path, const StarGeometry& g) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    for (int i = 0; i < g.size(); ++i) {
        const Direction& d = g.gammas()[static_cast<std::size_t>(i)];
        out << "ray = " << format_real(d.x()) << ',' << format_real(d.y()) << ','
            << format_real(g.weights()[static_cast<std::size_t>(i)]) << '\n';
    }
    if (!out) throw IoError("write to '" + path + "' failed");
}

bool is_star_geometry_file(const std::string& path) { return read_key_values(path).count("ray") > 0; }

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for hashing");
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
        EVP_MD_CTX_free(ctx);
        throw IoError("SHA-256 unavailable");
    }
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof buf);
        if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, md, &len);
    EVP_MD_CTX_free(ctx);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return os.str();
}

}  // namespace vlt::io
