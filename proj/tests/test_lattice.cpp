#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "spdc/lattice.hpp"
#include "spdc/rng.hpp"

using namespace spdc;

namespace {

LatticeSpec ssh_spec(int n, double c = 2.5, double k = 0.5) {
    LatticeSpec s;
    s.geometry = Geometry::SSH;
    s.n_guides = n;
    s.mean_coupling = c;
    s.dimerization = k;
    return s;
}

} // namespace

TEST_CASE("homogeneous couplings are all C with zero detunings") {
    LatticeSpec s;
    s.geometry = Geometry::Homogeneous;
    s.n_guides = 3;
    s.mean_coupling = 2.5;
    const Lattice lat = build_lattice(s);
    REQUIRE(lat.couplings_spdc.size() == 2);
    CHECK(lat.couplings_spdc[0] == 2.5);
    CHECK(lat.couplings_spdc[1] == 2.5);
    CHECK(lat.detunings == std::vector<double>{0.0, 0.0, 0.0});
    CHECK(lat.couplings_pump[0] == doctest::Approx(0.2 * 2.5).epsilon(1e-15));
}

TEST_CASE("ssh N=5 K=0.5 gives the weak-weak defect at the center") {
    const Lattice lat = build_lattice(ssh_spec(5));
    const std::vector<double> expected = {3.75, 1.25, 1.25, 3.75};
    REQUIRE(lat.couplings_spdc.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(lat.couplings_spdc[i] == doctest::Approx(expected[i]).epsilon(1e-15));
}

TEST_CASE("ssh coupling sequence is mirror symmetric and alternating") {
    for (int n : {5, 9, 13, 17}) {
        const Lattice lat = build_lattice(ssh_spec(n, 2.5, 0.3));
        const auto& c = lat.couplings_spdc;
        const int nb = static_cast<int>(c.size());
        for (int k = 0; k < nb; ++k)
            CHECK(c[static_cast<std::size_t>(k)] ==
                  doctest::Approx(c[static_cast<std::size_t>(nb - 1 - k)]).epsilon(1e-15));
        // both bonds at the central guide are weak
        const int center = (n - 1) / 2;
        CHECK(c[static_cast<std::size_t>(center - 1)] == doctest::Approx(2.5 * 0.7));
        CHECK(c[static_cast<std::size_t>(center)] == doctest::Approx(2.5 * 0.7));
        // strict strong/weak alternation away from the defect
        for (int k = 0; k + 1 < center; ++k)
            CHECK(c[static_cast<std::size_t>(k)] != c[static_cast<std::size_t>(k + 1)]);
        // exactly two distinct values
        std::set<double> distinct(c.begin(), c.end());
        CHECK(distinct.size() == 2);
    }
}

TEST_CASE("trivial-mode lattice detunes only the central guide") {
    LatticeSpec s;
    s.geometry = Geometry::TrivialMode;
    s.n_guides = 3;
    s.mean_coupling = 2.5;
    s.defect_detune = 5.0;
    const Lattice lat = build_lattice(s);
    CHECK(lat.detunings == std::vector<double>{0.0, 5.0, 0.0});
    CHECK(lat.couplings_spdc == std::vector<double>{2.5, 2.5});
}

TEST_CASE("invalid specs are rejected") {
    LatticeSpec s;
    s.n_guides = 4;
    CHECK_THROWS_AS(build_lattice(s), std::invalid_argument);
    s.n_guides = -3;
    CHECK_THROWS_AS(build_lattice(s), std::invalid_argument);
    s.n_guides = 5;
    s.dimerization = 1.0;
    CHECK_THROWS_AS(build_lattice(s), std::invalid_argument);
    s.dimerization = -0.1;
    CHECK_THROWS_AS(build_lattice(s), std::invalid_argument);
    s.dimerization = 0.0;
    s.mean_coupling = 0.0;
    CHECK_THROWS_AS(build_lattice(s), std::invalid_argument);
    s.mean_coupling = 2.5;
    s.pump_ratio = 0.0;
    CHECK_THROWS_AS(build_lattice(s), std::invalid_argument);
    s.pump_ratio = 0.2;
    s.length = 0.0;
    CHECK_THROWS_AS(build_lattice(s), std::invalid_argument);
}

TEST_CASE("ssh with K=0 builds but warns") {
    std::string warning;
    const Lattice lat = build_lattice(ssh_spec(5, 2.5, 0.0), &warning);
    CHECK(!warning.empty());
    CHECK(std::all_of(lat.couplings_spdc.begin(), lat.couplings_spdc.end(),
                      [](double c) { return c == 2.5; }));
}

TEST_CASE("zero disorder is the identity") {
    const Lattice nominal = build_lattice(ssh_spec(13));
    const Lattice out = apply_disorder(nominal, DisorderSpec{0.0, 12345, 7});
    CHECK(out.couplings_spdc == nominal.couplings_spdc);
    CHECK(out.couplings_pump == nominal.couplings_pump);
    CHECK(out.detunings == nominal.detunings);
}

TEST_CASE("disordered couplings stay inside the uniform support") {
    const Lattice nominal = build_lattice(ssh_spec(5));
    for (std::uint64_t seed : {1ULL, 99ULL, 0xDEADBEEFULL}) {
        for (std::uint64_t r = 0; r < 50; ++r) {
            const Lattice lat = apply_disorder(nominal, DisorderSpec{0.4, seed, r});
            for (std::size_t k = 0; k < lat.couplings_spdc.size(); ++k) {
                const double ratio = lat.couplings_spdc[k] / nominal.couplings_spdc[k];
                CHECK(ratio >= 0.6);
                CHECK(ratio <= 1.4);
            }
            CHECK(lat.detunings == nominal.detunings);
        }
    }
}

TEST_CASE("pump couplings track the disordered SPDC couplings exactly") {
    const Lattice nominal = build_lattice(ssh_spec(13));
    const Lattice lat = apply_disorder(nominal, DisorderSpec{0.4, 7, 3});
    for (std::size_t k = 0; k < lat.couplings_spdc.size(); ++k)
        CHECK(lat.couplings_pump[k] == lat.pump_ratio * lat.couplings_spdc[k]); // bitwise
}

TEST_CASE("identical disorder keys reproduce the lattice bitwise") {
    const Lattice nominal = build_lattice(ssh_spec(13));
    const DisorderSpec dis{0.35, 0xABCDEF, 42};
    const Lattice a = apply_disorder(nominal, dis);
    const Lattice b = apply_disorder(nominal, dis);
    CHECK(a.couplings_spdc == b.couplings_spdc);
    CHECK(a.couplings_pump == b.couplings_pump);
    CHECK(a.detunings == b.detunings);

    // different realization index gives different draws
    const Lattice c = apply_disorder(nominal, DisorderSpec{0.35, 0xABCDEF, 43});
    CHECK(a.couplings_spdc != c.couplings_spdc);
}

TEST_CASE("disorder strength outside [0,1) is rejected") {
    const Lattice nominal = build_lattice(ssh_spec(5));
    CHECK_THROWS_AS(apply_disorder(nominal, DisorderSpec{1.0, 1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(apply_disorder(nominal, DisorderSpec{-0.1, 1, 0}), std::invalid_argument);
}

TEST_CASE("diagonal disorder draws after coupling draws") {
    const Lattice nominal = build_lattice(ssh_spec(5));
    const Lattice off = apply_disorder(nominal, DisorderSpec{0.4, 11, 2, 0.0});
    const Lattice on = apply_disorder(nominal, DisorderSpec{0.4, 11, 2, 0.1});
    // enabling the experimental knob must not perturb the coupling stream
    CHECK(on.couplings_spdc == off.couplings_spdc);
    CHECK(off.detunings == nominal.detunings);
    bool any_shift = false;
    for (std::size_t s = 0; s < on.detunings.size(); ++s) {
        CHECK(std::abs(on.detunings[s]) <= 0.1 * nominal.mean_coupling);
        any_shift = any_shift || on.detunings[s] != 0.0;
    }
    CHECK(any_shift);
}

TEST_CASE("substreams decorrelate: distinct indices give distinct sequences") {
    SplitMix64 a(substream_seed(123, 0));
    SplitMix64 b(substream_seed(123, 1));
    int equal = 0;
    for (int i = 0; i < 64; ++i) equal += a.next() == b.next() ? 1 : 0;
    CHECK(equal == 0);
}
