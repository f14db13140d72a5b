#include "vlt/radon.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "vlt/error.hpp"
#include "vlt/geometry.hpp"
#include "vlt/parallel.hpp"

namespace vlt {

Sinogram::Sinogram(int na, int no, int nc, double ds_, double a0, double da)
    : n_angles(na), n_offsets(no), ncomp(nc), ds(ds_), angle0(a0), dangle(da),
      values(static_cast<std::size_t>(na) * no * nc, 0.0) {
    if (na < 1 || no < 1 || nc < 1 || nc > 2) throw ConfigError("invalid sinogram dimensions");
    if (!(ds_ > 0.0) || !(da > 0.0)) throw ConfigError("sinogram spacings must be positive");
}

Sinogram Sinogram::component(int c) const {
    if (c < 0 || c >= ncomp) throw ConfigError("sinogram component out of range");
    Sinogram out(n_angles, n_offsets, 1, ds, angle0, dangle);
    std::copy(values.begin() + static_cast<std::ptrdiff_t>(index(c, 0, 0)),
              values.begin() + static_cast<std::ptrdiff_t>(index(c, 0, 0) + out.values.size()), out.values.begin());
    return out;
}

bool Sinogram::same_layout(const Sinogram& o) const {
    return n_angles == o.n_angles && n_offsets == o.n_offsets && ds == o.ds && angle0 == o.angle0 &&
           dangle == o.dangle;
}

Sinogram stack_components(const Sinogram& a, const Sinogram& b) {
    if (a.ncomp != 1 || b.ncomp != 1 || !a.same_layout(b)) throw ConfigError("cannot stack sinograms");
    Sinogram out(a.n_angles, a.n_offsets, 2, a.ds, a.angle0, a.dangle);
    std::copy(a.values.begin(), a.values.end(), out.values.begin());
    std::copy(b.values.begin(), b.values.end(), out.values.begin() + static_cast<std::ptrdiff_t>(a.values.size()));
    return out;
}

Sinogram make_sinogram(const Grid2D& g, const RadonOptions& opt, int ncomp) {
    if (opt.n_angles < 1) throw ConfigError("need at least one projection angle");
    const double ds = opt.ds > 0.0 ? opt.ds : g.h;
    const int n_off = opt.n_offsets > 0 ? opt.n_offsets : 2 * static_cast<int>(std::ceil(g.r2 / ds - 1e-9)) + 1;
    const double span = opt.full_circle ? 2.0 * std::numbers::pi : std::numbers::pi;
    return Sinogram(opt.n_angles, n_off, ncomp, ds, 0.0, span / opt.n_angles);
}

namespace {

struct Line {
    Vec2 base;  // s psi
    Vec2 dir;   // psi^perp
};

Line make_line(Vec2 psi, double s) { return {psi * s, perp(psi)}; }

template <class Sampler>
double lattice_sum(const Sampler& sample, const Line& line, double lo, double hi, double step) {
    const auto k0 = static_cast<long>(std::floor(lo / step));
    const auto k1 = static_cast<long>(std::ceil(hi / step));
    double s = 0.0;
    for (long k = k0; k <= k1; ++k) {
        const double t = static_cast<double>(k) * step;
        s += sample(Vec2{line.base.x + t * line.dir.x, line.base.y + t * line.dir.y});
    }
    return s;
}

// Merged parameter intervals of the line where strip-extended data can be nonzero.
std::vector<std::pair<double, double>> extended_intervals(const StripExtension& ext, Vec2 psi, double s) {
    const double cap = 64.0 * ext.data_radius();
    std::vector<std::pair<double, double>> iv;
    const double r2 = ext.data_radius();
    if (std::abs(s) < r2) {
        const double c = std::sqrt(r2 * r2 - s * s);
        iv.emplace_back(-c, c);
    }
    const Vec2 along = perp(psi);
    for (const Vec2& ray : ext.rays()) {
        const Vec2 n = perp(ray);
        const double a = s * dot(psi, n);
        const double c = dot(along, n);
        const double rs = ext.support_radius();
        if (c == 0.0) {
            if (std::abs(a) < rs) iv.emplace_back(-cap, cap);
            continue;
        }
        double lo = (-rs - a) / c;
        double hi = (rs - a) / c;
        if (lo > hi) std::swap(lo, hi);
        lo = std::max(lo, -cap);
        hi = std::min(hi, cap);
        if (!(lo < hi)) continue;
        iv.emplace_back(lo, hi);
    }
    std::sort(iv.begin(), iv.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& x : iv) {
        if (!merged.empty() && x.first <= merged.back().second)
            merged.back().second = std::max(merged.back().second, x.second);
        else
            merged.push_back(x);
    }
    return merged;
}

}  // namespace

Sinogram radon_forward(const ScalarField& h, const RadonOptions& opt) {
    const Grid2D& g = h.grid();
    Sinogram sg = make_sinogram(g, opt);
    const double step = opt.step > 0.0 ? opt.step : 0.5 * g.h;
    const double R = interpolant_support(g);
    auto sample = [&](Vec2 p) { return h.sample(p); };
    par::for_each(sg.n_angles, [&](std::ptrdiff_t aa) {
        const int a = static_cast<int>(aa);
        const Vec2 psi = Direction::from_angle(sg.angle(a)).vec();
        for (int k = 0; k < sg.n_offsets; ++k) {
            const double s = sg.offset(k);
            if (std::abs(s) >= R) continue;
            const double c = std::sqrt(R * R - s * s);
            sg.at(0, a, k) = lattice_sum(sample, make_line(psi, s), -c, c, step) * step;
        }
    });
    return sg;
}

Sinogram radon_forward(const StripExtension& data, const RadonOptions& opt, const std::vector<char>& active) {
    const Grid2D& g = data.grid();
    Sinogram sg = make_sinogram(g, opt);
    if (!active.empty() && active.size() != static_cast<std::size_t>(sg.n_angles))
        throw ConfigError("angle mask size does not match the angle count");
    const double step = opt.step > 0.0 ? opt.step : 0.5 * g.h;
    par::for_each(sg.n_angles, [&](std::ptrdiff_t aa) {
        const int a = static_cast<int>(aa);
        if (!active.empty() && !active[static_cast<std::size_t>(a)]) return;
        const Vec2 psi = Direction::from_angle(sg.angle(a)).vec();
        for (int k = 0; k < sg.n_offsets; ++k) {
            const double s = sg.offset(k);
            const Line line = make_line(psi, s);
            double sum = 0.0;
            for (const auto& [lo, hi] : extended_intervals(data, psi, s)) {
                // Lattice points of disjoint intervals never coincide.
                const auto k0 = static_cast<long>(std::ceil(lo / step));
                const auto k1 = static_cast<long>(std::floor(hi / step));
                for (long m = k0; m <= k1; ++m) {
                    const double t = static_cast<double>(m) * step;
                    sum += data(Vec2{line.base.x + t * line.dir.x, line.base.y + t * line.dir.y});
                }
            }
            sg.at(0, a, k) = sum * step;
        }
    });
    return sg;
}

Sinogram sinogram_dds(const Sinogram& sg) {
    if (sg.n_offsets < 3) throw ConfigError("d/ds needs at least three offsets");
    Sinogram out = sg;
    const double inv = 1.0 / (2.0 * sg.ds);
    const int n = sg.n_offsets;
    for (int c = 0; c < sg.ncomp; ++c)
        for (int a = 0; a < sg.n_angles; ++a) {
            out.at(c, a, 0) = (-3.0 * sg.at(c, a, 0) + 4.0 * sg.at(c, a, 1) - sg.at(c, a, 2)) * inv;
            for (int k = 1; k < n - 1; ++k) out.at(c, a, k) = (sg.at(c, a, k + 1) - sg.at(c, a, k - 1)) * inv;
            out.at(c, a, n - 1) = (3.0 * sg.at(c, a, n - 1) - 4.0 * sg.at(c, a, n - 2) + sg.at(c, a, n - 3)) * inv;
        }
    return out;
}

double ramlak_kernel(int k, double ds) {
    if (k == 0) return 1.0 / (4.0 * ds * ds);
    if (k % 2 == 0) return 0.0;
    const double pk = std::numbers::pi * k * ds;
    return -1.0 / (pk * pk);
}

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

ScalarField fbp_inverse(const Sinogram& sg, const Grid2D& grid, const FbpOptions& opt, int comp) {
    if (comp < 0 || comp >= sg.ncomp) throw ConfigError("sinogram component out of range");
    if (sg.n_angles < 16) throw ConfigError("filtered backprojection needs at least 16 angles");
    const double cover = sg.n_angles * sg.dangle;
    const bool half = std::abs(cover - std::numbers::pi) <= 1e-9;
    const bool full = std::abs(cover - 2.0 * std::numbers::pi) <= 1e-9;
    if (!half && !full) throw ConfigError("sinogram angles must cover a half or a full turn");

    const int n = sg.n_offsets;
    int P = 1;
    while (P < 2 * n) P *= 2;
    const int nc = P / 2 + 1;

    // Spectrum of the kernel, scaled so that a forward/backward FFT pair
    // yields ds * (p conv kernel).
    std::vector<double> spectrum(static_cast<std::size_t>(nc));
    double* kbuf = fftw_alloc_real(static_cast<std::size_t>(P));
    fftw_complex* kspec = fftw_alloc_complex(static_cast<std::size_t>(nc));
    double* work = fftw_alloc_real(static_cast<std::size_t>(P));
    fftw_complex* wspec = fftw_alloc_complex(static_cast<std::size_t>(nc));
    fftw_plan fwd, bwd, kplan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        kplan = fftw_plan_dft_r2c_1d(P, kbuf, kspec, FFTW_ESTIMATE);
        fwd = fftw_plan_dft_r2c_1d(P, work, wspec, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(P, wspec, work, FFTW_ESTIMATE);
    }
    for (int m = 0; m < P; ++m) {
        const int lag = m <= P / 2 ? m : m - P;
        kbuf[m] = std::abs(lag) < n ? ramlak_kernel(lag, sg.ds) : 0.0;
    }
    fftw_execute(kplan);
    // The kernel is even, so its transform is real.
    for (int m = 0; m < nc; ++m) {
        double w = kspec[m][0] * sg.ds / P;
        if (opt.hann) w *= 0.5 * (1.0 + std::cos(2.0 * std::numbers::pi * m / P));
        spectrum[static_cast<std::size_t>(m)] = w;
    }

    // Filtering is cheap next to backprojection and stays serial.
    std::vector<double> filtered(static_cast<std::size_t>(sg.n_angles) * n);
    for (int a = 0; a < sg.n_angles; ++a) {
        for (int k = 0; k < P; ++k) work[k] = k < n ? sg.at(comp, a, k) : 0.0;
        fftw_execute(fwd);
        for (int m = 0; m < nc; ++m) {
            wspec[m][0] *= spectrum[static_cast<std::size_t>(m)];
            wspec[m][1] *= spectrum[static_cast<std::size_t>(m)];
        }
        fftw_execute(bwd);
        std::copy(work, work + n, filtered.begin() + static_cast<std::ptrdiff_t>(a) * n);
    }
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(kplan);
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }
    fftw_free(kbuf);
    fftw_free(kspec);
    fftw_free(work);
    fftw_free(wspec);

    std::vector<Vec2> normals(static_cast<std::size_t>(sg.n_angles));
    for (int a = 0; a < sg.n_angles; ++a) normals[static_cast<std::size_t>(a)] = Direction::from_angle(sg.angle(a)).vec();
    const double weight = std::numbers::pi / sg.n_angles;
    const double center = 0.5 * (n - 1);
    ScalarField out(grid);
    const double r2sq = grid.r2 * grid.r2;
    par::for_each(grid.ny, [&](std::ptrdiff_t jj) {
        const int j = static_cast<int>(jj);
        for (int i = 0; i < grid.nx; ++i) {
            const Vec2 x = grid.point(i, j);
            if (dot(x, x) > r2sq) continue;
            double sum = 0.0;
            for (int a = 0; a < sg.n_angles; ++a) {
                const double pos = dot(x, normals[static_cast<std::size_t>(a)]) / sg.ds + center;
                if (!(pos >= 0.0 && pos <= n - 1)) continue;
                const int k = std::min(static_cast<int>(pos), n - 2);
                const double t = pos - k;
                const double* row = filtered.data() + static_cast<std::ptrdiff_t>(a) * n;
                sum += row[k] + t * (row[k + 1] - row[k]);
            }
            out(i, j) = sum * weight;
        }
    });
    return out;
}

}  // namespace vlt
