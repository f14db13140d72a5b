#pragma once

#include <map>
#include <string>
#include <vector>

#include "vlt/geometry.hpp"
#include "vlt/grid.hpp"
#include "vlt/radon.hpp"
#include "vlt/star.hpp"

namespace vlt::io {

// VLT1 grid files: magic "VLT1", u32 nx, u32 ny, f64 h, f64 origin_x,
// f64 origin_y, f64 r1, f64 r2, u32 ncomp (1 or 2), then ncomp * nx * ny
// f64 values, component-major and row-major within a component. All
// numbers little-endian. Errors raise IoError.

void write_field(const std::string& path, const std::vector<ScalarField>& components);
std::vector<ScalarField> read_field(const std::string& path);

void write_scalar(const std::string& path, const ScalarField& h);
void write_vector(const std::string& path, const VectorField& f);
/// Reads a file that must hold exactly one component.
ScalarField read_scalar(const std::string& path);
/// Reads a file that must hold exactly two components.
VectorField read_vector(const std::string& path);

// VLS1 sinogram files: magic "VLS1", u32 n_angles, u32 n_offsets, u32 ncomp,
// f64 ds, f64 angle0, f64 dangle, then values in Sinogram storage order.

void write_sinogram(const std::string& path, const Sinogram& sg);
Sinogram read_sinogram(const std::string& path);

/// One line "x,y,v1[,v2]" per sample, header included.
void write_csv(const std::string& path, const std::vector<ScalarField>& components);

/// Parses "key = value" lines; blank lines and '#' comments are skipped.
/// Repeated keys keep every value in order.
std::multimap<std::string, std::string> read_key_values(const std::string& path);

/// Comma-separated reals.
std::vector<double> parse_reals(const std::string& text);

/// Direction from raw components. Vectors off unit length by more than 1e-6
/// are normalized and a warning is appended.
Direction checked_direction(double x, double y, const std::string& what, std::vector<std::string>* warnings);

/// V-line geometry text: "u = ux,uy" and "v = vx,vy".
VLineGeometry read_vline_geometry(const std::string& path, std::vector<std::string>* warnings = nullptr);
void write_vline_geometry(const std::string& path, const VLineGeometry& g);

/// Star geometry text: one "ray = gx,gy,c" line per ray.
StarGeometry read_star_geometry(const std::string& path, std::vector<std::string>* warnings = nullptr);
void write_star_geometry(const std::string& path, const StarGeometry& g);

/// True when the file declares star rays rather than a V-line pair.
bool is_star_geometry_file(const std::string& path);

/// Lowercase hex SHA-256 of the file contents.
std::string sha256_file(const std::string& path);

}  // namespace vlt::io
