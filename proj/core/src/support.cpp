#include "sepkern/support.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sepkern/errors.hpp"

namespace sepkern {

SupportSet::SupportSet(double lo, double hi) {
    pieces_.push_back({lo, hi});
    normalize();
}

SupportSet::SupportSet(std::vector<Interval> pieces) : pieces_(std::move(pieces)) {
    normalize();
}

SupportSet SupportSet::half_line(double lo) {
    return SupportSet(lo, kInf);
}

void SupportSet::normalize() {
    for (const Interval& piece : pieces_) {
        if (!std::isfinite(piece.lo)) {
            throw error("SupportSet: left endpoints must be finite");
        }
        if (std::isnan(piece.hi)) {
            throw error("SupportSet: invalid right endpoint");
        }
    }
    std::erase_if(pieces_, [](const Interval& p) { return !(p.hi > p.lo); });
    std::sort(pieces_.begin(), pieces_.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (const Interval& piece : pieces_) {
        if (!merged.empty() && piece.lo <= merged.back().hi) {
            merged.back().hi = std::max(merged.back().hi, piece.hi);
        } else {
            merged.push_back(piece);
        }
    }
    pieces_ = std::move(merged);
}

double SupportSet::measure() const {
    double total = 0.0;
    for (const Interval& piece : pieces_) {
        total += piece.length();
    }
    return total;
}

bool SupportSet::contains(double t) const {
    for (const Interval& piece : pieces_) {
        if (t >= piece.lo && t <= piece.hi) return true;
        if (t < piece.lo) break;
    }
    return false;
}

Interval SupportSet::hull() const {
    if (pieces_.empty()) return {0.0, 0.0};
    return {pieces_.front().lo, pieces_.back().hi};
}

SupportSet SupportSet::intersect(const SupportSet& other) const {
    std::vector<Interval> out;
    for (const Interval& a : pieces_) {
        for (const Interval& b : other.pieces_) {
            double lo = std::max(a.lo, b.lo);
            double hi = std::min(a.hi, b.hi);
            if (hi > lo) out.push_back({lo, hi});
        }
    }
    return SupportSet(std::move(out));
}

SupportSet SupportSet::unite(const SupportSet& other) const {
    std::vector<Interval> out = pieces_;
    out.insert(out.end(), other.pieces_.begin(), other.pieces_.end());
    return SupportSet(std::move(out));
}

SupportSet SupportSet::subtract(const SupportSet& other) const {
    std::vector<Interval> out;
    for (Interval piece : pieces_) {
        double cursor = piece.lo;
        for (const Interval& cut : other.pieces_) {
            if (cut.hi <= cursor) continue;
            if (cut.lo >= piece.hi) break;
            if (cut.lo > cursor) out.push_back({cursor, cut.lo});
            cursor = std::max(cursor, cut.hi);
            if (cursor >= piece.hi) break;
        }
        if (cursor < piece.hi) out.push_back({cursor, piece.hi});
    }
    return SupportSet(std::move(out));
}

bool SupportSet::operator==(const SupportSet& other) const {
    if (pieces_.size() != other.pieces_.size()) return false;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (pieces_[i].lo != other.pieces_[i].lo) return false;
        if (pieces_[i].hi != other.pieces_[i].hi) return false;
    }
    return true;
}

std::string SupportSet::str() const {
    std::ostringstream out;
    if (pieces_.empty()) return "{}";
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (i) out << " u ";
        out << "[" << pieces_[i].lo << ", ";
        if (pieces_[i].unbounded()) {
            out << "inf)";
        } else {
            out << pieces_[i].hi << "]";
        }
    }
    return out.str();
}

} // namespace sepkern
