#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace mttd {

// Tolerance used for breakpoint dedup and segment selection throughout the
// time algebra, in horizon time units.
inline constexpr double kBreakpointEps = 1e-9;

// Continuous piecewise-linear function on [x0, +inf).
//
// Segments are half-open [x_k, x_{k+1}); the final segment is unbounded and
// carries its own slope. Stored as breakpoint abscissae, the function value
// at each breakpoint, and one slope per segment.
class PiecewiseLinear {
  public:
    PiecewiseLinear() = default;

    // xs must be strictly increasing, ys.size() == xs.size(). tail_slope is
    // the slope of the unbounded last segment.
    PiecewiseLinear(std::vector<double> xs, std::vector<double> ys, double tail_slope)
        : xs_(std::move(xs)), ys_(std::move(ys)) {
        if (xs_.empty() || xs_.size() != ys_.size()) {
            throw std::invalid_argument("PiecewiseLinear: need matching, nonempty breakpoints");
        }
        slopes_.resize(xs_.size());
        for (std::size_t k = 0; k + 1 < xs_.size(); ++k) {
            const double dx = xs_[k + 1] - xs_[k];
            if (dx <= 0.0) {
                throw std::invalid_argument("PiecewiseLinear: breakpoints not strictly increasing");
            }
            slopes_[k] = (ys_[k + 1] - ys_[k]) / dx;
        }
        slopes_.back() = tail_slope;
    }

    double domain_start() const { return xs_.front(); }
    std::size_t breakpoint_count() const { return xs_.size(); }
    const std::vector<double>& breakpoints() const { return xs_; }
    const std::vector<double>& values() const { return ys_; }

    // Index of the segment containing x (half-open convention: a breakpoint
    // belongs to the segment it starts).
    std::size_t segment_index(double x) const {
        if (x < xs_.front() - kBreakpointEps) {
            throw std::domain_error("PiecewiseLinear: point left of domain");
        }
        auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
        return it == xs_.begin() ? 0 : static_cast<std::size_t>(it - xs_.begin() - 1);
    }

    double eval(double x) const {
        const std::size_t k = segment_index(x);
        return ys_[k] + slopes_[k] * (x - xs_[k]);
    }

    double slope_in_segment(std::size_t k) const { return slopes_[k]; }

    // y-intercept of segment k's supporting line, i.e. eta in y = theta*x + eta.
    double intercept_in_segment(std::size_t k) const { return ys_[k] - slopes_[k] * xs_[k]; }

    double min_slope() const { return *std::min_element(slopes_.begin(), slopes_.end()); }

    bool strictly_increasing() const { return min_slope() > 0.0; }

    // Inverse for strictly increasing functions. Returns nullopt when y is
    // below the range; values above every finite breakpoint land in the tail
    // segment (whose slope is positive for increasing functions).
    std::optional<double> inverse(double y) const {
        assert(strictly_increasing());
        if (y < ys_.front() - kBreakpointEps) return std::nullopt;
        if (y <= ys_.front()) return xs_.front();
        auto it = std::upper_bound(ys_.begin(), ys_.end(), y);
        const std::size_t k = it == ys_.begin() ? 0 : static_cast<std::size_t>(it - ys_.begin() - 1);
        return xs_[k] + (y - ys_[k]) / slopes_[k];
    }

    // outer(inner(x)). Breakpoints are inner's plus the preimages under inner
    // of outer's, restricted to the domain where inner's value reaches
    // outer's domain. Both functions must be strictly increasing.
    static PiecewiseLinear compose(const PiecewiseLinear& outer, const PiecewiseLinear& inner) {
        assert(inner.strictly_increasing() && outer.strictly_increasing());
        double lo = inner.domain_start();
        if (inner.eval(lo) < outer.domain_start()) {
            auto pulled = inner.inverse(outer.domain_start());
            if (!pulled) throw std::domain_error("compose: empty valid domain");
            lo = *pulled;
        }
        std::vector<double> xs;
        for (double x : inner.breakpoints()) {
            if (x >= lo - kBreakpointEps) xs.push_back(std::max(x, lo));
        }
        for (double b : outer.breakpoints()) {
            if (auto pre = inner.inverse(b); pre && *pre >= lo - kBreakpointEps) {
                xs.push_back(std::max(*pre, lo));
            }
        }
        xs.push_back(lo);
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end(),
                             [](double a, double b) { return std::abs(a - b) <= kBreakpointEps; }),
                 xs.end());
        std::vector<double> ys;
        ys.reserve(xs.size());
        for (double x : xs) ys.push_back(outer.eval(inner.eval(x)));
        const double tail = inner.slopes_.back() * outer.slopes_.back();
        PiecewiseLinear out(std::move(xs), std::move(ys), tail);
        out.prune_collinear();
        return out;
    }

    // Drops interior breakpoints whose removal keeps the function identical
    // (equal slopes on both sides) and merges breakpoints closer than the
    // dedup tolerance.
    void prune_collinear(double slope_tol = 1e-12) {
        if (xs_.size() < 2) return;
        std::vector<double> xs{xs_.front()}, ys{ys_.front()}, sl{slopes_.front()};
        for (std::size_t k = 1; k + 1 < xs_.size(); ++k) {
            if (xs_[k] - xs.back() <= kBreakpointEps) continue;
            if (std::abs(slopes_[k] - sl.back()) <= slope_tol) continue;
            xs.push_back(xs_[k]);
            ys.push_back(ys_[k]);
            sl.push_back(slopes_[k]);
        }
        const std::size_t last = xs_.size() - 1;
        if (xs_[last] - xs.back() > kBreakpointEps && std::abs(slopes_[last] - sl.back()) > slope_tol) {
            xs.push_back(xs_[last]);
            ys.push_back(ys_[last]);
            sl.push_back(slopes_[last]);
        }
        xs_ = std::move(xs);
        ys_ = std::move(ys);
        slopes_ = std::move(sl);
    }

  private:
    std::vector<double> xs_;
    std::vector<double> ys_;
    std::vector<double> slopes_;
};

}  // namespace mttd
