#ifndef NDFLOW_TRAJECTORY_HPP
#define NDFLOW_TRAJECTORY_HPP

#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "laurent_matrix.hpp"
#include "rational.hpp"
#include "unimodular.hpp"

namespace ndflow {

using Point = std::vector<long>;

/// Inclusive lattice box; a 0-dimensional box has exactly one point.
struct Box {
    Point lo, hi;

    Box() = default;
    Box(Point l, Point h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo.size() != hi.size()) throw PreconditionError("box bounds differ in dimension");
    }
    static Box cube(int dim, long a, long b) {
        return Box(Point(static_cast<std::size_t>(dim), a), Point(static_cast<std::size_t>(dim), b));
    }

    int dim() const noexcept { return static_cast<int>(lo.size()); }
    bool empty() const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (lo[i] > hi[i]) return true;
        return false;
    }
    std::size_t size() const {
        if (empty()) return 0;
        std::size_t s = 1;
        for (std::size_t i = 0; i < lo.size(); ++i) s *= static_cast<std::size_t>(hi[i] - lo[i] + 1);
        return s;
    }
    bool contains(const Point& p) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (p[i] < lo[i] || p[i] > hi[i]) return false;
        return true;
    }
    bool contains(const Box& b) const { return b.empty() || (contains(b.lo) && contains(b.hi)); }
    /// Row-major offset, last coordinate fastest.
    std::size_t index(const Point& p) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < lo.size(); ++i)
            idx = idx * static_cast<std::size_t>(hi[i] - lo[i] + 1) + static_cast<std::size_t>(p[i] - lo[i]);
        return idx;
    }
    void for_each(const std::function<void(const Point&)>& f) const {
        if (empty()) return;
        Point p = lo;
        for (;;) {
            f(p);
            int i = dim() - 1;
            while (i >= 0 && p[static_cast<std::size_t>(i)] == hi[static_cast<std::size_t>(i)]) {
                p[static_cast<std::size_t>(i)] = lo[static_cast<std::size_t>(i)];
                --i;
            }
            if (i < 0) return;
            ++p[static_cast<std::size_t>(i)];
        }
    }
    static Box hull(const Box& a, const Box& b) {
        if (a.empty()) return b;
        if (b.empty()) return a;
        Box r = a;
        for (std::size_t i = 0; i < r.lo.size(); ++i) {
            r.lo[i] = std::min(a.lo[i], b.lo[i]);
            r.hi[i] = std::max(a.hi[i], b.hi[i]);
        }
        return r;
    }
    friend bool operator==(const Box& a, const Box& b) { return a.lo == b.lo && a.hi == b.hi; }
};

inline std::string to_string(const Box& b) {
    std::string s = "[";
    for (std::size_t i = 0; i < b.lo.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(b.lo[i]) + ":" + std::to_string(b.hi[i]);
    }
    return s + "]";
}

/// Exact vector-valued samples on a box.
class TrajectoryWindow {
   public:
    TrajectoryWindow() = default;
    TrajectoryWindow(Box box, int width) : box_(std::move(box)), width_(width) {
        if (width < 0) throw PreconditionError("negative window width");
        if (box_.empty()) throw PreconditionError("empty window box " + to_string(box_));
        values_.assign(box_.size() * static_cast<std::size_t>(width_), Rational(0));
    }

    const Box& box() const noexcept { return box_; }
    int dim() const noexcept { return box_.dim(); }
    int width() const noexcept { return width_; }
    const std::vector<Rational>& values() const noexcept { return values_; }
    std::vector<Rational>& values() noexcept { return values_; }

    Rational& at(const Point& p, int c) { return values_[offset(p) + static_cast<std::size_t>(c)]; }
    const Rational& at(const Point& p, int c) const { return values_[offset(p) + static_cast<std::size_t>(c)]; }
    std::vector<Rational> sample(const Point& p) const {
        auto b = values_.begin() + static_cast<std::ptrdiff_t>(offset(p));
        return std::vector<Rational>(b, b + width_);
    }
    void set(const Point& p, const std::vector<Rational>& v) {
        if (static_cast<int>(v.size()) != width_) throw PreconditionError("sample width mismatch");
        std::copy(v.begin(), v.end(), values_.begin() + static_cast<std::ptrdiff_t>(offset(p)));
    }

    bool is_zero() const {
        for (const auto& v : values_)
            if (v != 0) return false;
        return true;
    }
    TrajectoryWindow restrict(const Box& b) const {
        if (!box_.contains(b)) throw PreconditionError("restriction box " + to_string(b) + " leaves window " + to_string(box_));
        TrajectoryWindow r(b, width_);
        b.for_each([&](const Point& p) { r.set(p, sample(p)); });
        return r;
    }
    friend bool operator==(const TrajectoryWindow& a, const TrajectoryWindow& b) {
        return a.box_ == b.box_ && a.width_ == b.width_ && a.values_ == b.values_;
    }

   private:
    std::size_t offset(const Point& p) const {
        if (static_cast<int>(p.size()) != box_.dim() || !box_.contains(p))
            throw PreconditionError("point outside window " + to_string(box_));
        return box_.index(p) * static_cast<std::size_t>(width_);
    }

    Box box_;
    int width_ = 0;
    std::vector<Rational> values_;
};

/// Exponent range of all nonzero entries of m (min, max per variable).
inline std::pair<ExponentVector, ExponentVector> support_range(const LaurentMatrix& m) {
    ExponentVector lo(static_cast<std::size_t>(m.nvars()), 0), hi = lo;
    bool first = true;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            for (const auto& [e, c] : m(i, j).terms()) {
                for (std::size_t k = 0; k < e.size(); ++k) {
                    lo[k] = first ? e[k] : std::min(lo[k], e[k]);
                    hi[k] = first ? e[k] : std::max(hi[k], e[k]);
                }
                first = false;
            }
    return {lo, hi};
}

/// (M(sigma) w)(nu) = sum over terms c sigma^o of c w(nu + o), on every nu
/// of the window whose shifted samples exist.
inline TrajectoryWindow apply_operator(const LaurentMatrix& M, const TrajectoryWindow& w) {
    if (static_cast<int>(M.cols()) != w.width()) throw PreconditionError("operator columns differ from window width");
    if (M.nvars() != w.dim()) throw PreconditionError("operator variables differ from window dimension");
    auto [lo, hi] = support_range(M);
    Box out = w.box();
    for (std::size_t k = 0; k < lo.size(); ++k) {
        out.lo[k] = std::max(out.lo[k], out.lo[k] - lo[k]);
        out.hi[k] = std::min(out.hi[k], out.hi[k] - hi[k]);
    }
    if (out.empty()) {
        std::string pad;
        for (std::size_t k = 0; k < lo.size(); ++k) pad += (k ? "," : "") + std::to_string(hi[k] - lo[k]);
        throw PreconditionError("window exhausted: operator support needs extents of at least (" + pad + ") in " +
                                to_string(w.box()));
    }
    TrajectoryWindow r(out, static_cast<int>(M.rows()));
    Point shifted(lo.size());
    out.for_each([&](const Point& p) {
        for (std::size_t i = 0; i < M.rows(); ++i) {
            Rational acc = 0;
            for (std::size_t j = 0; j < M.cols(); ++j)
                for (const auto& [e, c] : M(i, j).terms()) {
                    for (std::size_t k = 0; k < e.size(); ++k) shifted[k] = p[k] + e[k];
                    acc += c * w.at(shifted, static_cast<int>(j));
                }
            r.at(p, static_cast<int>(i)) = acc;
        }
    });
    return r;
}

/// Bounding box of { T nu : nu in b }.
inline Box image_bounding_box(const UnimodularTransform& T, const Box& b) {
    Box r = b;
    const auto& t = T.matrix();
    for (std::size_t i = 0; i < t.size(); ++i) {
        r.lo[i] = r.hi[i] = 0;
        for (std::size_t j = 0; j < t.size(); ++j) {
            long a = t[i][j] * b.lo[j], c = t[i][j] * b.hi[j];
            r.lo[i] += std::min(a, c);
            r.hi[i] += std::max(a, c);
        }
    }
    return r;
}

/// Pull-back (Phi_T w)(nu) = w(T nu) on out_box.
inline TrajectoryWindow pull_back(const TrajectoryWindow& w, const UnimodularTransform& T, const Box& out_box) {
    if (T.dim() != w.dim() || out_box.dim() != w.dim()) throw PreconditionError("pull-back dimension mismatch");
    Box need = image_bounding_box(T, out_box);
    TrajectoryWindow r(out_box, w.width());
    out_box.for_each([&](const Point& p) {
        Point tp = T.apply(p);
        if (!w.box().contains(tp))
            throw PreconditionError("pull-back needs samples on " + to_string(need) + ", window is " + to_string(w.box()));
        r.set(p, w.sample(tp));
    });
    return r;
}

}  // namespace ndflow

#endif
