#include "doctest.h"

#include "properties.hpp"

using namespace wnh::testing;

// Smaller runs than the acceptance binary, on a different seed.
TEST_CASE("randomized properties") {
    for (const auto& s : property_suites()) {
        auto r = s.run(20240611u, std::max(2, s.cases / 4));
        CHECK_MESSAGE(r.failures == 0, s.name << ": " << r.first_failure);
    }
}

TEST_CASE("closed density lists give certified operators") {
    auto r = densities_soundness(99u, 8, DensityClass::Closed);
    CHECK_MESSAGE(r.failures == 0, r.first_failure);
}
