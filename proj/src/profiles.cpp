#include "qpigeon/profiles.hpp"

#include <cmath>

namespace qpigeon {

namespace {

void require_width(double sigma) {
    if (!(sigma > 0.0)) throw NonpositiveWidth("sigma must be > 0");
}

void require_strength(double a) {
    if (a < 0.0) throw NegativeStrength("kick length a must be >= 0");
}

// Cyclic relabeling paired with the +2pi/3 rotation: new_center[j] picks up
// old center p(j). Chosen so u_overlap(LLL) == 1.
constexpr std::array<int, 3> kUPerm = {2, 0, 1};

} // namespace

double profile_width(Convention c, double sigma) {
    require_width(sigma);
    return c == Convention::Eq7 ? std::sqrt(2.0) * sigma : sigma;
}

std::array<Vec2, 3> triangle_vectors() {
    const double h = std::sqrt(3.0) / 2.0;
    return {Vec2{1.0, 0.0}, Vec2{-0.5, h}, Vec2{-0.5, -h}};
}

std::array<Vec2, 3> kick_displacements(PathConfig b) {
    const auto v = triangle_vectors();
    std::array<Vec2, 3> d{};
    for (int i = 0; i < 3; ++i) {
        Vec2 push{0.0, 0.0};
        for (int j = 0; j < 3; ++j)
            if (j != i && b.arm(j) == b.arm(i)) push = push + v[static_cast<std::size_t>(j)];
        d[static_cast<std::size_t>(i)] = -push;
    }
    return d;
}

double GaussianProfile::value(Vec2 r) const {
    const double s = width();
    const double d2 = norm_squared(r - center);
    return 1.0 / (s * std::sqrt(M_PI)) * std::exp(-d2 / (2.0 * s * s));
}

double overlap(Vec2 u, Vec2 w, double a, double sigma, Convention c) {
    require_strength(a);
    const double s = profile_width(c, sigma);
    return std::exp(-a * a * norm_squared(u - w) / (4.0 * s * s));
}

Gram gram_matrix(double a, double sigma, Convention c) {
    require_strength(a);
    const double s = profile_width(c, sigma);
    std::array<std::array<Vec2, 3>, PathConfig::kCount> d{};
    for (auto b : PathConfig::all()) d[static_cast<std::size_t>(b.index())] = kick_displacements(b);

    Gram g{};
    for (int b = 0; b < PathConfig::kCount; ++b) {
        for (int b2 = b; b2 < PathConfig::kCount; ++b2) {
            double sum = 0.0;
            for (int i = 0; i < 3; ++i)
                sum += norm_squared(d[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)] -
                                    d[static_cast<std::size_t>(b2)][static_cast<std::size_t>(i)]);
            const double val = std::exp(-a * a * sum / (4.0 * s * s));
            g[static_cast<std::size_t>(b)][static_cast<std::size_t>(b2)] = val;
            g[static_cast<std::size_t>(b2)][static_cast<std::size_t>(b)] = val;
        }
    }
    return g;
}

Vec2 rotate_third_turn(Vec2 v) {
    const double c = -0.5;
    const double s = std::sqrt(3.0) / 2.0;
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

std::array<Vec2, 3> u_image_centers(const std::array<Vec2, 3>& centers) {
    std::array<Vec2, 3> out{};
    for (int j = 0; j < 3; ++j)
        out[static_cast<std::size_t>(j)] =
            rotate_third_turn(centers[static_cast<std::size_t>(kUPerm[static_cast<std::size_t>(j)])]);
    return out;
}

double u_overlap(PathConfig b, double a, double sigma, Convention c) {
    require_strength(a);
    const double s = profile_width(c, sigma);
    const auto d = kick_displacements(b);
    std::array<Vec2, 3> centers{};
    for (int i = 0; i < 3; ++i) centers[static_cast<std::size_t>(i)] = a * d[static_cast<std::size_t>(i)];
    const auto image = u_image_centers(centers);
    double mismatch = 0.0;
    for (int i = 0; i < 3; ++i)
        mismatch += norm_squared(centers[static_cast<std::size_t>(i)] - image[static_cast<std::size_t>(i)]);
    return std::exp(-mismatch / (4.0 * s * s));
}

BranchProfile BranchProfile::make(PathConfig b, double a, double sigma, Convention c) {
    require_strength(a);
    require_width(sigma);
    const auto d = kick_displacements(b);
    BranchProfile p;
    p.branch = b;
    for (int i = 0; i < 3; ++i)
        p.factors[static_cast<std::size_t>(i)] =
            GaussianProfile{a * d[static_cast<std::size_t>(i)], sigma, c};
    return p;
}

double BranchProfile::value(const std::array<double, 6>& point) const {
    double v = 1.0;
    for (int i = 0; i < 3; ++i)
        v *= factors[static_cast<std::size_t>(i)].value(
            Vec2{point[static_cast<std::size_t>(2 * i)], point[static_cast<std::size_t>(2 * i + 1)]});
    return v;
}

DressedState DressedState::after_interaction(double a, double sigma, Convention c) {
    require_strength(a);
    require_width(sigma);
    DressedState st;
    st.a = a;
    st.sigma = sigma;
    st.convention = c;
    // sqrt(0.125) is correctly rounded, so coeff * coeff == 0.125 exactly.
    const double coeff = std::sqrt(0.125);
    for (auto b : PathConfig::all()) {
        st.coefficients[static_cast<std::size_t>(b.index())] = coeff;
        st.branches[static_cast<std::size_t>(b.index())] = BranchProfile::make(b, a, sigma, c);
    }
    return st;
}

} // namespace qpigeon
