#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

#include "qpigeon/errors.hpp"
#include "qpigeon/pathspace.hpp"

using namespace qpigeon;

namespace {

constexpr double kInvTwoRootTwo = 0.35355339059327376;

// Deterministic generator for property tests (xorshift64*).
struct TestRng {
    std::uint64_t s;

    std::uint64_t next() {
        s ^= s >> 12;
        s ^= s << 25;
        s ^= s >> 27;
        return s * 0x2545f4914f6cdd1dULL;
    }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    complex amp() { return {2.0 * unit() - 1.0, 2.0 * unit() - 1.0}; }

    DiscreteState state() {
        DiscreteState st{};
        for (auto& a : st.amplitudes) a = amp();
        double n = std::sqrt(st.norm_squared());
        for (auto& a : st.amplitudes) a /= n;
        return st;
    }
};

// Strong-measurement outcome rate computed the long way: collapse onto the
// projector support (or its complement), then post-select each collapsed
// state separately.
double enumerated_conditional_rate(const DiagonalProjector& p, const DiscreteState& pre,
                                   const DiscreteState& post) {
    complex hit = 0.0;
    complex miss = 0.0;
    for (auto b : PathConfig::all()) {
        complex term = std::conj(post[b]) * pre[b];
        (p.contains(b) ? hit : miss) += term;
    }
    double ph = std::norm(hit);
    double pm = std::norm(miss);
    return ph / (ph + pm);
}

} // namespace

TEST_CASE("path configurations index, label, and complement consistently") {
    REQUIRE(PathConfig::kCount == 8);
    const std::array<const char*, 8> labels = {"LLL", "LLR", "LRL", "LRR",
                                               "RLL", "RLR", "RRL", "RRR"};
    for (int i = 0; i < 8; ++i) {
        PathConfig b(i);
        CHECK(b.index() == i);
        CHECK(b.label() == labels[static_cast<std::size_t>(i)]);
        CHECK(b.complement().index() == 7 - i);
        CHECK(b.complement().complement() == b);

        int r = 0;
        for (int k = 0; k < 3; ++k)
            if (b.arm(k) == Arm::R) ++r;
        CHECK(b.r_count() == r);
    }
    CHECK(PathConfig::from_arms(Arm::L, Arm::L, Arm::R) == PathConfig(1));
    CHECK(PathConfig::from_arms(Arm::R, Arm::L, Arm::L) == PathConfig(4));
    CHECK(PathConfig::from_arms(Arm::R, Arm::R, Arm::R) == PathConfig(7));
}

TEST_CASE("hamming distance counts differing arms") {
    for (auto a : PathConfig::all()) {
        for (auto b : PathConfig::all()) {
            int expect = 0;
            for (int k = 0; k < 3; ++k)
                if (a.arm(k) != b.arm(k)) ++expect;
            CHECK(hamming(a, b) == expect);
            CHECK(hamming(a, b) == hamming(b, a));
        }
        CHECK(hamming(a, a) == 0);
        CHECK(hamming(a, a.complement()) == 3);
    }
}

TEST_CASE("uniform superposition and detection states are frozen") {
    const auto pre = plus_state();
    const auto post = post_state(kAllPlus);
    CHECK(pre.normalized());
    CHECK(post.normalized());

    const std::array<complex, 8> phases = {
        complex{1, 0}, complex{0, 1},  complex{0, 1},  complex{-1, 0},
        complex{0, 1}, complex{-1, 0}, complex{-1, 0}, complex{0, -1}};
    const auto computed = detector_phases(kAllPlus);
    for (int i = 0; i < 8; ++i) {
        auto idx = static_cast<std::size_t>(i);
        CHECK(pre.amplitudes[idx] == complex{kInvTwoRootTwo, 0.0});
        CHECK(computed[idx] == phases[idx]);
        CHECK(std::abs(post.amplitudes[idx] - phases[idx] * kInvTwoRootTwo) <= 1e-16);
    }

    // The summed amplitude products carry a few ulp of residue because
    // fl(sqrt(0.125))^2 is one ulp above 0.125.
    const complex ov = inner(post, pre);
    CHECK(std::abs(ov - complex{-0.25, -0.25}) <= 5e-16);
    CHECK(std::abs(std::norm(ov) - 0.125) <= 5e-16);
}

TEST_CASE("detector phases multiply per particle for every sign pattern") {
    const complex iunit{0.0, 1.0};
    for (int s0 : {+1, -1})
        for (int s1 : {+1, -1})
            for (int s2 : {+1, -1}) {
                SignTriple signs{s0, s1, s2};
                auto phases = detector_phases(signs);
                for (auto b : PathConfig::all()) {
                    complex expect = 1.0;
                    for (int k = 0; k < 3; ++k)
                        if (b.arm(k) == Arm::R)
                            expect *= static_cast<double>(signs[static_cast<std::size_t>(k)]) *
                                      iunit;
                    CHECK(std::abs(phases[static_cast<std::size_t>(b.index())] - expect) <=
                          1e-16);
                }
            }
}

TEST_CASE("pairwise weak values vanish while the triple weak value is -1/2") {
    const auto pre = plus_state();
    const auto post = post_state(kAllPlus);

    CHECK(std::abs(weak_value(DiagonalProjector::same_pair(0, 1), pre, post)) <= 1e-14);
    CHECK(std::abs(weak_value(DiagonalProjector::same_pair(0, 2), pre, post)) <= 1e-14);
    CHECK(std::abs(weak_value(DiagonalProjector::same_pair(1, 2), pre, post)) <= 1e-14);
    CHECK(std::abs(weak_value(DiagonalProjector::same_all(), pre, post) -
                   complex{-0.5, 0.0}) <= 1e-14);

    CHECK(std::abs(weak_value(DiagonalProjector::identity(), pre, post) -
                   complex{1.0, 0.0}) <= 1e-15);
    CHECK(std::abs(weak_value(DiagonalProjector::empty(), pre, post)) == 0.0);
}

TEST_CASE("the four support terms of a vanishing weak value cancel pairwise") {
    const auto pre = plus_state();
    const auto post = post_state(kAllPlus);
    const complex den = inner(post, pre);

    auto term = [&](int idx) {
        auto i = static_cast<std::size_t>(idx);
        return std::conj(post.amplitudes[i]) * pre.amplitudes[i] / den;
    };
    const complex t_lll = term(0);
    const complex t_llr = term(1);
    const complex t_rrl = term(6);
    const complex t_rrr = term(7);

    CHECK(std::abs(t_lll - complex{-0.25, 0.25}) <= 1e-15);
    CHECK(std::abs(t_llr - complex{0.25, 0.25}) <= 1e-15);
    CHECK(std::abs(t_rrl - complex{0.25, -0.25}) <= 1e-15);
    CHECK(std::abs(t_rrr - complex{-0.25, -0.25}) <= 1e-15);

    CHECK(std::abs(t_lll + t_rrl) <= 1e-15);
    CHECK(std::abs(t_llr + t_rrr) <= 1e-15);
    CHECK(std::abs(t_lll + t_rrr - complex{-0.5, 0.0}) <= 1e-15);
    CHECK(std::abs(t_lll + t_llr + t_rrl + t_rrr) <= 1e-15);
}

TEST_CASE("weak values of a projector and its complement sum to one") {
    const auto pre = plus_state();
    const auto post = post_state(kAllPlus);
    for (int mask = 0; mask < 256; ++mask) {
        DiagonalProjector p(static_cast<std::uint8_t>(mask));
        complex sum = weak_value(p, pre, post) + weak_value(p.complement(), pre, post);
        CHECK(std::abs(sum - complex{1.0, 0.0}) <= 1e-14);
    }

    TestRng rng{0x5eedbeefcafe1234ULL};
    int tested = 0;
    while (tested < 200) {
        auto a = rng.state();
        auto b = rng.state();
        if (std::abs(inner(b, a)) < 1e-3) continue;
        ++tested;
        DiagonalProjector p(static_cast<std::uint8_t>(rng.next() & 0xff));
        complex sum = weak_value(p, a, b) + weak_value(p.complement(), a, b);
        CHECK(std::abs(sum - complex{1.0, 0.0}) <= 1e-12);
    }
}

TEST_CASE("weak values add over disjoint supports") {
    TestRng rng{0xfeedface12345678ULL};
    int tested = 0;
    while (tested < 200) {
        auto a = rng.state();
        auto b = rng.state();
        if (std::abs(inner(b, a)) < 1e-3) continue;
        ++tested;
        auto m1 = static_cast<std::uint8_t>(rng.next() & 0xff);
        auto m2 = static_cast<std::uint8_t>(rng.next() & static_cast<std::uint8_t>(~m1));
        DiagonalProjector p1(m1);
        DiagonalProjector p2(m2);
        DiagonalProjector both(static_cast<std::uint8_t>(m1 | m2));
        complex lhs = weak_value(both, a, b);
        complex rhs = weak_value(p1, a, b) + weak_value(p2, a, b);
        CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
}

TEST_CASE("orthogonal pre and post selection is rejected") {
    const auto pre = plus_state();
    DiscreteState post{};
    for (int i = 0; i < 8; ++i)
        post.amplitudes[static_cast<std::size_t>(i)] =
            complex{(i % 2 == 0) ? kInvTwoRootTwo : -kInvTwoRootTwo, 0.0};
    REQUIRE(std::abs(inner(post, pre)) <= 1e-16);

    CHECK_THROWS_AS(weak_value(DiagonalProjector::same_all(), pre, post),
                    DegeneratePostSelection);
    CHECK_THROWS_AS(strong_conditional_mean(DiagonalProjector::same_all(), pre, post),
                    DegeneratePostSelection);
}

TEST_CASE("conditional strong outcome rate matches direct enumeration") {
    const auto pre = plus_state();
    const auto post = post_state(kAllPlus);
    const auto all3 = DiagonalProjector::same_all();

    CHECK(strong_conditional_mean(all3, pre, post) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(strong_conditional_mean(DiagonalProjector::identity(), pre, post) == 1.0);
    CHECK(strong_conditional_mean(DiagonalProjector::empty(), pre, post) == 0.0);
    CHECK(strong_conditional_mean(all3, pre, post) ==
          doctest::Approx(enumerated_conditional_rate(all3, pre, post)).epsilon(1e-14));

    TestRng rng{0xabcdef0122334455ULL};
    int tested = 0;
    while (tested < 200) {
        auto a = rng.state();
        auto b = rng.state();
        if (std::abs(inner(b, a)) < 1e-3) continue;
        ++tested;
        DiagonalProjector p(static_cast<std::uint8_t>(rng.next() & 0xff));
        double got = strong_conditional_mean(p, a, b);
        double expect = enumerated_conditional_rate(p, a, b);
        CHECK(got == doctest::Approx(expect).epsilon(1e-12));
        CHECK(got >= 0.0);
        CHECK(got <= 1.0);
    }
}

TEST_CASE("interference classification matches the detection phase algebra") {
    for (auto a : PathConfig::all()) {
        for (auto b : PathConfig::all()) {
            const int dk = a.r_count() - b.r_count();
            InterferenceSign expect;
            if (dk % 2 != 0)
                expect = InterferenceSign::Neutral;
            else if (((dk % 4) + 4) % 4 == 0)
                expect = InterferenceSign::Constructive;
            else
                expect = InterferenceSign::Destructive;
            CHECK(interference_sign(a, b) == expect);
            CHECK(interference_sign(a, b) == interference_sign(b, a));

            if (hamming(a, b) % 2 == 1)
                CHECK(interference_sign(a, b) == InterferenceSign::Neutral);
            else
                CHECK(interference_sign(a, b) != InterferenceSign::Neutral);
        }
    }

    CHECK(interference_sign(PathConfig(1), PathConfig(2)) == InterferenceSign::Constructive);
    CHECK(hamming(PathConfig(1), PathConfig(2)) == 2);
    CHECK(interference_sign(PathConfig(0), PathConfig(6)) == InterferenceSign::Destructive);
    CHECK(interference_sign(PathConfig(0), PathConfig(7)) == InterferenceSign::Neutral);
}
