#pragma once

#include <string>
#include <vector>

#include "vlt/grid.hpp"

namespace vlt::render {

/// 8-bit image, row-major from the top row (largest x2) down.
struct Image {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<unsigned char> pixels;

    unsigned char at(int col, int row, int ch = 0) const {
        return pixels[(static_cast<std::size_t>(row) * width + col) * channels + ch];
    }
};

/// Signed gray map: 0 is mid-gray (128), +max|h| white, -max|h| black.
Image scalar_image(const ScalarField& h);

/// Magnitude |f| scaled so the largest sample is 255. A zero field renders
/// as uniform mid-gray.
Image magnitude_image(const VectorField& f);

/// Direction as hue (angle of f from 0 at +x1 to 360 degrees, red at 0),
/// full saturation, brightness |f| / max|f|.
Image direction_image(const VectorField& f);

/// Binary PGM (P5) for one channel, binary PPM (P6) for three.
void write_pnm(const std::string& path, const Image& img);

}  // namespace vlt::render
