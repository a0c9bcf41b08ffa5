#pragma once

#include <limits>
#include <string>
#include <vector>

namespace sepkern {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Closed interval [lo, hi]; hi may be +inf (half line). lo is always finite.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool unbounded() const { return hi == kInf; }
    double length() const { return hi - lo; }
};

// Finite union of disjoint intervals, sorted by left endpoint. At most the
// last piece is a half line. Normalised on construction: overlapping or
// touching pieces are merged, empty pieces dropped.
class SupportSet {
public:
    SupportSet() = default;
    SupportSet(double lo, double hi);
    explicit SupportSet(std::vector<Interval> pieces);

    static SupportSet half_line(double lo);
    static SupportSet empty_set() { return SupportSet(); }

    const std::vector<Interval>& pieces() const { return pieces_; }
    bool empty() const { return pieces_.empty(); }
    bool unbounded() const { return !pieces_.empty() && pieces_.back().unbounded(); }

    // Lebesgue measure; +inf when unbounded.
    double measure() const;

    bool contains(double t) const;

    // Smallest interval containing the set (lo, hi); hi may be +inf.
    Interval hull() const;

    SupportSet intersect(const SupportSet& other) const;
    SupportSet unite(const SupportSet& other) const;
    SupportSet subtract(const SupportSet& other) const;

    bool operator==(const SupportSet& other) const;

    std::string str() const;

private:
    void normalize();

    std::vector<Interval> pieces_;
};

} // namespace sepkern
