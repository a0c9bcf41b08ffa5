#include <doctest.h>

#include "sepkern/rng.hpp"
#include "sepkern/support.hpp"

using namespace sepkern;

TEST_CASE("intervals normalise to disjoint sorted pieces") {
    SupportSet s({{2.0, 3.0}, {0.0, 1.5}, {1.0, 2.5}});
    REQUIRE(s.pieces().size() == 1);
    CHECK(s.pieces()[0].lo == 0.0);
    CHECK(s.pieces()[0].hi == 3.0);
    CHECK(s.measure() == doctest::Approx(3.0));

    SupportSet gaps({{0.0, 1.0}, {2.0, 3.0}});
    CHECK(gaps.pieces().size() == 2);
    CHECK(gaps.measure() == doctest::Approx(2.0));
    CHECK(gaps.contains(0.5));
    CHECK(!gaps.contains(1.5));
}

TEST_CASE("half lines keep infinite measure and stay last") {
    SupportSet s = SupportSet::half_line(1.0).unite(SupportSet(-2.0, 0.0));
    REQUIRE(s.pieces().size() == 2);
    CHECK(s.pieces()[1].unbounded());
    CHECK(s.measure() == kInf);
    CHECK(s.contains(1e9));
}

TEST_CASE("set algebra: intersect, subtract, unite") {
    SupportSet a(0.0, 4.0);
    SupportSet b({{1.0, 2.0}, {3.0, 5.0}});
    SupportSet both = a.intersect(b);
    CHECK(both.measure() == doctest::Approx(2.0));
    SupportSet diff = a.subtract(b);
    CHECK(diff.measure() == doctest::Approx(2.0));
    CHECK(diff.contains(0.5));
    CHECK(!diff.contains(1.5));
    CHECK(a.unite(b).measure() == doctest::Approx(5.0));

    SupportSet tail = SupportSet::half_line(0.0);
    SupportSet cut = tail.subtract(SupportSet(1.0, 2.0));
    REQUIRE(cut.pieces().size() == 2);
    CHECK(cut.pieces()[1].lo == 2.0);
    CHECK(cut.pieces()[1].unbounded());
}

TEST_CASE("random sets: subtract and intersect partition the measure") {
    SplitMix64 rng(20240711);
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<Interval> pa, pb;
        for (int i = 0; i < 3; ++i) {
            double lo = rng.uniform(-5.0, 5.0);
            pa.push_back({lo, lo + rng.uniform(0.0, 3.0)});
            lo = rng.uniform(-5.0, 5.0);
            pb.push_back({lo, lo + rng.uniform(0.0, 3.0)});
        }
        SupportSet a(pa), b(pb);
        const double whole = a.measure();
        const double split = a.intersect(b).measure() + a.subtract(b).measure();
        CHECK(split == doctest::Approx(whole).epsilon(1e-12));
        CHECK(a.unite(b).measure() ==
              doctest::Approx(a.measure() + b.measure() - a.intersect(b).measure())
                  .epsilon(1e-12));
    }
}
