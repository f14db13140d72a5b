#include "vlt/star.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vlt/error.hpp"
#include "vlt/geometry.hpp"
#include "vlt/parallel.hpp"

namespace vlt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    return a < 0.0 ? a + kTwoPi : a;
}

}  // namespace

StarGeometry::StarGeometry(std::vector<Direction> gammas, std::vector<double> weights)
    : gammas_(std::move(gammas)), weights_(std::move(weights)) {
    if (gammas_.size() != weights_.size()) throw ConfigError("star needs one weight per ray");
    if (gammas_.size() < 2) throw GeometryError("star needs at least two rays");
    for (double c : weights_)
        if (!(c != 0.0) || !std::isfinite(c)) throw ConfigError("star weights must be finite and nonzero");
    for (std::size_t i = 0; i < gammas_.size(); ++i)
        for (std::size_t j = i + 1; j < gammas_.size(); ++j)
            if (norm(gammas_[i].vec() - gammas_[j].vec()) <= 1e-10)
                throw GeometryError("star rays " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
}

StarGeometry StarGeometry::equiangular(int m, double weight, double angle0) {
    std::vector<Direction> g;
    for (int i = 0; i < m; ++i) g.push_back(Direction::from_angle(angle0 + kTwoPi * i / m));
    return StarGeometry(std::move(g), std::vector<double>(static_cast<std::size_t>(std::max(m, 0)), weight));
}

std::vector<Vec2> StarGeometry::rays() const {
    std::vector<Vec2> r;
    for (const Direction& d : gammas_) r.push_back(d.vec());
    return r;
}

double StarGeometry::min_r2(double r1) const {
    const std::vector<Vec2> r = rays();
    return r1 / std::sin(0.5 * min_pairwise_angle(r));
}

void StarGeometry::check_grid(const Grid2D& grid) const {
    const double need = min_r2(grid.r1);
    if (grid.r2 < need * (1.0 - 1e-12))
        throw ConfigError("grid r2 = " + std::to_string(grid.r2) + " is below the required " + std::to_string(need) +
                          " for this star geometry");
}

Vec2 gamma_of_psi(const StarGeometry& sg, Vec2 psi) {
    Vec2 g;
    for (int i = 0; i < sg.size(); ++i) {
        const Vec2 gi = sg.gammas()[static_cast<std::size_t>(i)];
        const double pg = dot(psi, gi);
        if (std::abs(pg) < 1e-9)
            throw SingularDirectionError(SingularDirectionError::Type::orthogonal_ray, i,
                                         "direction is orthogonal to star ray " + std::to_string(i));
        g = g - gi * (sg.weights()[static_cast<std::size_t>(i)] / pg);
    }
    return g;
}

Mat2 pre_q_of_psi(const StarGeometry& sg, Vec2 psi) {
    const Vec2 g = gamma_of_psi(sg, psi);
    const Vec2 gp = perp(g);
    return {{{g.x, g.y}, {gp.x, gp.y}}};
}

Mat2 q_of_psi(const StarGeometry& sg, Vec2 psi) {
    const Vec2 g = gamma_of_psi(sg, psi);
    const double n2 = dot(g, g);
    if (std::sqrt(n2) < 1e-9)
        throw SingularDirectionError(SingularDirectionError::Type::vanishing_gamma, -1,
                                     "gamma(psi) vanishes: Q(psi) is singular");
    return {{{g.x / n2, -g.y / n2}, {g.y / n2, g.x / n2}}};
}

double q_gain(const StarGeometry& sg, Vec2 psi) { return 1.0 / norm(gamma_of_psi(sg, psi)); }

Mat2 multiply(const Mat2& a, const Mat2& b) {
    Mat2 c{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return c;
}

StarClass classify(const StarGeometry& sg) {
    const int m = sg.size();
    if (m % 2 != 0) return StarClass::invertible;
    const auto& g = sg.gammas();
    const auto& c = sg.weights();
    for (int i = 0; i < m; ++i) {
        int partner = -1;
        for (int j = 0; j < m; ++j)
            if (j != i && norm(g[static_cast<std::size_t>(i)].vec() + g[static_cast<std::size_t>(j)].vec()) <= 1e-10)
                partner = j;
        if (partner < 0) return StarClass::invertible;
        const double ci = c[static_cast<std::size_t>(i)], cj = c[static_cast<std::size_t>(partner)];
        if (std::abs(ci + cj) > 1e-10 * std::max(std::abs(ci), std::abs(cj))) return StarClass::invertible;
    }
    return StarClass::symmetric;
}

Vec2 StarPolynomial::operator()(Vec2 psi) const {
    const std::size_t n = p1.size();
    Vec2 r;
    for (std::size_t k = 0; k < n; ++k) {
        const double mono = std::pow(psi.x, static_cast<double>(n - 1 - k)) * std::pow(psi.y, static_cast<double>(k));
        r.x += p1[k] * mono;
        r.y += p2[k] * mono;
    }
    return r;
}

bool StarPolynomial::identically_zero(double weight_scale) const {
    const double tol = 1e-10 * weight_scale;
    for (std::size_t k = 0; k < p1.size(); ++k)
        if (std::abs(p1[k]) > tol || std::abs(p2[k]) > tol) return false;
    return true;
}

StarPolynomial star_polynomial(const StarGeometry& sg) {
    const int m = sg.size();
    StarPolynomial P{std::vector<double>(static_cast<std::size_t>(m), 0.0),
                     std::vector<double>(static_cast<std::size_t>(m), 0.0)};
    for (int i = 0; i < m; ++i) {
        std::vector<double> poly{1.0};
        for (int j = 0; j < m; ++j) {
            if (j == i) continue;
            const Vec2 gj = sg.gammas()[static_cast<std::size_t>(j)];
            std::vector<double> next(poly.size() + 1, 0.0);
            for (std::size_t k = 0; k < poly.size(); ++k) {
                next[k] += gj.x * poly[k];
                next[k + 1] += gj.y * poly[k];
            }
            poly = std::move(next);
        }
        const Vec2 gi = sg.gammas()[static_cast<std::size_t>(i)];
        const double ci = sg.weights()[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < poly.size(); ++k) {
            P.p1[k] += ci * gi.x * poly[k];
            P.p2[k] += ci * gi.y * poly[k];
        }
    }
    return P;
}

bool polynomial_vanishes(const StarGeometry& sg) {
    double scale = 0.0;
    for (double c : sg.weights()) scale += std::abs(c);
    return star_polynomial(sg).identically_zero(scale);
}

SingularDirections singular_directions(const StarGeometry& sg, int samples) {
    if (samples < 8) throw ConfigError("need at least 8 samples to locate singular directions");
    SingularDirections out;
    for (const Direction& g : sg.gammas()) {
        out.z1.push_back(wrap_angle(g.angle() + 0.5 * std::numbers::pi));
        out.z1.push_back(wrap_angle(g.angle() - 0.5 * std::numbers::pi));
    }
    std::sort(out.z1.begin(), out.z1.end());
    if (polynomial_vanishes(sg)) {
        out.degenerate = true;
        return out;
    }

    const StarPolynomial P = star_polynomial(sg);
    auto comp = [&](double th, int c) {
        const Vec2 v = P(Vec2{std::cos(th), std::sin(th)});
        return c == 0 ? v.x : v.y;
    };
    std::vector<double> cand;
    for (int c = 0; c < 2; ++c)
        for (int n = 0; n < samples; ++n) {
            double a = kTwoPi * n / samples;
            double b = kTwoPi * (n + 1) / samples;
            double fa = comp(a, c), fb = comp(b, c);
            if (fa == 0.0) {
                cand.push_back(a);
                continue;
            }
            if ((fa < 0.0) == (fb < 0.0) || fb == 0.0) continue;
            while (b - a > 1e-12) {
                const double mid = 0.5 * (a + b);
                const double fm = comp(mid, c);
                if (fm == 0.0) {
                    a = b = mid;
                    break;
                }
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            cand.push_back(0.5 * (a + b));
        }

    for (double th : cand) {
        const Vec2 psi{std::cos(th), std::sin(th)};
        bool on_z1 = false;
        for (const Direction& g : sg.gammas()) on_z1 = on_z1 || std::abs(dot(psi, g.vec())) < 1e-9;
        if (on_z1) continue;
        if (norm(gamma_of_psi(sg, psi)) <= 1e-9) out.z2.push_back(wrap_angle(th));
    }
    std::sort(out.z2.begin(), out.z2.end());
    std::vector<double> unique;
    for (double th : out.z2)
        if (unique.empty() || th - unique.back() > 1e-9) unique.push_back(th);
    if (unique.size() > 1 && unique.front() + kTwoPi - unique.back() <= 1e-9) unique.pop_back();
    out.z2 = std::move(unique);
    return out;
}

TransformField forward_star(const VectorField& f, const StarGeometry& sg, const RayQuadrature& q) {
    sg.check_grid(f.grid());
    ScalarField a(f.grid()), b(f.grid());
    for (int i = 0; i < sg.size(); ++i) {
        const Vec2 g = sg.gammas()[static_cast<std::size_t>(i)];
        const double c = sg.weights()[static_cast<std::size_t>(i)];
        ScalarField la = beam_field(project(f, g), g, q);
        ScalarField lb = beam_field(project(f, perp(g)), g, q);
        if (i == 0) {
            a = c * std::move(la);
            b = c * std::move(lb);
        } else {
            a += c * std::move(la);
            b += c * std::move(lb);
        }
    }
    return TransformField(TransformKind::star, std::move(a), std::move(b));
}

std::vector<char> guarded_angles(const StarGeometry& sg, const Sinogram& layout, double guard_degrees) {
    const SingularDirections sd = singular_directions(sg);
    std::vector<double> sing = sd.z1;
    sing.insert(sing.end(), sd.z2.begin(), sd.z2.end());
    const double guard = guard_degrees * std::numbers::pi / 180.0;
    std::vector<char> mask(static_cast<std::size_t>(layout.n_angles), 0);
    for (int a = 0; a < layout.n_angles; ++a) {
        const double th = layout.angle(a);
        for (double z : sing) {
            double d = std::fmod(std::abs(th - z), std::numbers::pi);
            d = std::min(d, std::numbers::pi - d);
            if (d < guard) mask[static_cast<std::size_t>(a)] = 1;
        }
    }
    return mask;
}

Sinogram star_filtered_sinogram(const TransformField& Sf, const StarGeometry& sg, const StarInversionOptions& opt,
                                std::vector<char>* guarded_out) {
    if (classify(sg) == StarClass::symmetric)
        throw NonInvertibleError("symmetric star configuration: the transform is not invertible");
    if (Sf.ncomp() != 2) throw ConfigError("star transform data must have two components");
    const Grid2D& grid = Sf.grid();
    sg.check_grid(grid);

    RadonOptions ropt;
    ropt.n_angles = opt.n_angles;
    ropt.step = opt.quadrature.step;
    Sinogram layout = make_sinogram(grid, ropt);
    std::vector<char> guarded = guarded_angles(sg, layout, opt.guard_degrees);

    // Angles where Q cannot be formed are treated like guarded ones.
    std::vector<Mat2> q(static_cast<std::size_t>(layout.n_angles));
    for (int a = 0; a < layout.n_angles; ++a) {
        if (guarded[static_cast<std::size_t>(a)]) continue;
        try {
            q[static_cast<std::size_t>(a)] = q_of_psi(sg, Direction::from_angle(layout.angle(a)).vec());
        } catch (const SingularDirectionError&) {
            guarded[static_cast<std::size_t>(a)] = 1;
        }
    }
    const auto survivors = std::count(guarded.begin(), guarded.end(), 0);
    if (survivors < 16)
        throw ConfigError("only " + std::to_string(survivors) + " angles survive the guard bands; need 16");

    std::vector<char> active(guarded.size());
    for (std::size_t a = 0; a < guarded.size(); ++a) active[a] = guarded[a] ? 0 : 1;
    const std::vector<Vec2> rays = sg.rays();
    const StripExtension e1(Sf.components[0], rays);
    const StripExtension e2(Sf.components[1], rays);
    const Sinogram d1 = sinogram_dds(radon_forward(e1, ropt, active));
    const Sinogram d2 = sinogram_dds(radon_forward(e2, ropt, active));

    Sinogram out(layout.n_angles, layout.n_offsets, 2, layout.ds, layout.angle0, layout.dangle);
    const int na = out.n_angles, no = out.n_offsets;
    for (int a = 0; a < na; ++a) {
        if (guarded[static_cast<std::size_t>(a)]) continue;
        const Mat2& Q = q[static_cast<std::size_t>(a)];
        for (int k = 0; k < no; ++k) {
            const double x = d1.at(0, a, k), y = d2.at(0, a, k);
            out.at(0, a, k) = Q[0][0] * x + Q[0][1] * y;
            out.at(1, a, k) = Q[1][0] * x + Q[1][1] * y;
        }
    }

    // Refill guarded angles. Unwrapped index a + n n_a stands for angle
    // psi_a + n pi, whose data is the offset-reversed column of a.
    auto value = [&](int c, int idx, int k) {
        const int wrapped = ((idx % na) + na) % na;
        const int turns = (idx - wrapped) / na;
        return out.at(c, wrapped, turns % 2 == 0 ? k : no - 1 - k);
    };
    for (int a = 0; a < na; ++a) {
        if (!guarded[static_cast<std::size_t>(a)]) continue;
        int lo = a - 1;
        while (guarded[static_cast<std::size_t>(((lo % na) + na) % na)]) --lo;
        int hi = a + 1;
        while (guarded[static_cast<std::size_t>(hi % na)]) ++hi;
        const double t = static_cast<double>(a - lo) / (hi - lo);
        for (int c = 0; c < 2; ++c)
            for (int k = 0; k < no; ++k) out.at(c, a, k) = (1.0 - t) * value(c, lo, k) + t * value(c, hi, k);
    }
    if (guarded_out) *guarded_out = std::move(guarded);
    return out;
}

VectorField invert_star(const TransformField& Sf, const StarGeometry& sg, const StarInversionOptions& opt) {
    if (classify(sg) == StarClass::symmetric)
        throw NonInvertibleError("symmetric star configuration: the transform is not invertible");
    const Sinogram rf = star_filtered_sinogram(Sf, sg, opt);
    const Grid2D& grid = Sf.grid();
    VectorField f(fbp_inverse(rf, grid, opt.fbp, 0), fbp_inverse(rf, grid, opt.fbp, 1));
    return mask_to_disc(std::move(f), grid.r1);
}

}  // namespace vlt
