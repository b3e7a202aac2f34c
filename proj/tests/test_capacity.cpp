#include <doctest.h>

#include <cmath>

#include "dirtyflash/capacity.hpp"

using namespace dirtyflash::limits;

namespace {

// Natural-log entropy converted to bits.
double h_ref(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -(x * std::log(x) + (1.0 - x) * std::log1p(-x)) / std::log(2.0);
}

}  // namespace

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    for (int i = 1; i < 100; ++i) {
        const double x = i / 100.0;
        CHECK(binary_entropy(x) == doctest::Approx(binary_entropy(1.0 - x)).epsilon(1e-14));
        CHECK(binary_entropy(x) == doctest::Approx(h_ref(x)).epsilon(1e-12));
    }
}

TEST_CASE("known-interference capacities") {
    auto c = dpc_capacities(1.0, 0.0, 1.0);
    CHECK(c.c_min == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(c.c_max == doctest::Approx(0.5).epsilon(1e-12));
    c = dpc_capacities(0.0, 1.0, 1.0);
    CHECK(c.c_min == 0.0);
    CHECK(c.c_max == 0.0);
    c = dpc_capacities(1.0, 1.0, 1.0);
    CHECK(c.c_min == doctest::Approx(0.5 * std::log2(1.5)).epsilon(1e-12));
    CHECK(c.c_min == doctest::Approx(0.292481).epsilon(1e-6));
    CHECK(c.c_max == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS(dpc_capacities(1.0, 1.0, 0.0));
}

TEST_CASE("defect capacities") {
    auto c = defect_capacities(0.0, 0.0);
    CHECK(c.c_min_plus == 1.0);
    CHECK(c.c_max_plus == 1.0);
    c = defect_capacities(0.1, 0.0);
    CHECK(c.c_max_plus == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(c.c_min_plus == doctest::Approx(1.0 - h_ref(0.05)).epsilon(1e-12));
    CHECK(c.c_min_plus == doctest::Approx(0.713603).epsilon(1e-6));
    c = defect_capacities(0.0, 0.1);
    CHECK(c.c_min_plus == doctest::Approx(c.c_max_plus).epsilon(1e-14));
    CHECK(c.c_min_plus == doctest::Approx(0.531004).epsilon(1e-6));
}

TEST_CASE("orderings and monotonicity on a grid") {
    for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
            const double e = i / 40.0, p = j / 40.0;
            const auto c = defect_capacities(e, p);
            CHECK(c.c_max_plus >= c.c_min_plus - 1e-15);
            if (i < 20) CHECK(defect_capacities(e + 1 / 40.0, p).c_min_plus <= c.c_min_plus + 1e-15);
            if (i < 20) CHECK(defect_capacities(e + 1 / 40.0, p).c_max_plus <= c.c_max_plus + 1e-15);
            if (j < 20) CHECK(defect_capacities(e, p + 1 / 40.0).c_min_plus <= c.c_min_plus + 1e-15);
            if (j < 20) CHECK(defect_capacities(e, p + 1 / 40.0).c_max_plus <= c.c_max_plus + 1e-15);
            const auto d = dpc_capacities(0.25 * i, 0.25 * j, 0.5);
            CHECK(d.c_max >= d.c_min);
        }
    }
}
