#include "vlt/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "vlt/error.hpp"

namespace vlt::render {

namespace {

Image blank(const Grid2D& g, int channels) {
    Image img;
    img.width = g.nx;
    img.height = g.ny;
    img.channels = channels;
    img.pixels.assign(g.size() * static_cast<std::size_t>(channels), 0);
    return img;
}

unsigned char to_byte(double v) { return static_cast<unsigned char>(std::clamp(std::lround(v), 0L, 255L)); }

}  // namespace

Image scalar_image(const ScalarField& h) {
    const Grid2D& g = h.grid();
    Image img = blank(g, 1);
    const double m = h.max_abs();
    const double scale = m > 0.0 ? 127.5 / m : 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            img.pixels[static_cast<std::size_t>(g.ny - 1 - j) * g.nx + i] = to_byte(127.5 + scale * h(i, j));
    return img;
}

Image magnitude_image(const VectorField& f) {
    const Grid2D& g = f.grid();
    Image img = blank(g, 1);
    const double m = f.max_abs();
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            img.pixels[static_cast<std::size_t>(g.ny - 1 - j) * g.nx + i] =
                m > 0.0 ? to_byte(255.0 * std::hypot(f.f1(i, j), f.f2(i, j)) / m) : 128;
    return img;
}

Image direction_image(const VectorField& f) {
    const Grid2D& g = f.grid();
    Image img = blank(g, 3);
    const double m = f.max_abs();
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double a = f.f1(i, j), b = f.f2(i, j);
            const double val = m > 0.0 ? std::hypot(a, b) / m : 0.0;
            double hue = std::atan2(b, a) / (2.0 * std::numbers::pi);
            if (hue < 0.0) hue += 1.0;
            const double h6 = hue * 6.0;
            const int sector = std::min(static_cast<int>(h6), 5);
            const double frac = h6 - sector;
            const double p = 0.0, q = val * (1.0 - frac), t = val * frac;
            double r, gr, bl;
            switch (sector) {
                case 0: r = val; gr = t; bl = p; break;
                case 1: r = q; gr = val; bl = p; break;
                case 2: r = p; gr = val; bl = t; break;
                case 3: r = p; gr = q; bl = val; break;
                case 4: r = t; gr = p; bl = val; break;
                default: r = val; gr = p; bl = q; break;
            }
            unsigned char* px = &img.pixels[(static_cast<std::size_t>(g.ny - 1 - j) * g.nx + i) * 3];
            px[0] = to_byte(255.0 * r);
            px[1] = to_byte(255.0 * gr);
            px[2] = to_byte(255.0 * bl);
        }
    return img;
}

void write_pnm(const std::string& path, const Image& img) {
    if (img.channels != 1 && img.channels != 3) throw IoError("images must have one or three channels");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << (img.channels == 1 ? "P5\n" : "P6\n") << img.width << ' ' << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
    if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace vlt::render
