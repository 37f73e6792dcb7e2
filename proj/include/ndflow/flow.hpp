#ifndef NDFLOW_FLOW_HPP
#define NDFLOW_FLOW_HPP

#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "dnnl.hpp"
#include "realization.hpp"
#include "trajectory.hpp"

namespace ndflow {

namespace detail {

// (M(sigma) x)(p) for a one-row-or-more operator at a single point.
inline std::vector<Rational> eval_at(const LaurentMatrix& M, const TrajectoryWindow& x, const Point& p) {
    std::vector<Rational> out(M.rows(), Rational(0));
    Point s(p.size());
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j)
            for (const auto& [e, c] : M(i, j).terms()) {
                for (std::size_t k = 0; k < p.size(); ++k) s[k] = p[k] + e[k];
                if (!x.box().contains(s))
                    throw PreconditionError("initial condition window " + to_string(x.box()) + " lacks a sample");
                out[i] += c * x.at(s, static_cast<int>(j));
            }
    return out;
}

inline Point big_part(const Point& p, int d) { return Point(p.begin() + d, p.end()); }
inline Point small_part(const Point& p, int d) { return Point(p.begin(), p.begin() + d); }

}  // namespace detail

/// C * prod_j A_j^{nu_j}, memoized per big exponent vector.
class OutputOperators {
   public:
    explicit OutputOperators(const FirstOrderRealization& real) : real_(real) {}

    const LaurentMatrix& at(const Point& big) {
        auto it = cache_.find(big);
        if (it != cache_.end()) return it->second;
        LaurentMatrix M = real_.C();
        for (std::size_t j = 0; j < big.size(); ++j)
            if (big[j] != 0) M = M * real_.power(j, big[j]);
        return cache_.emplace(big, std::move(M)).first->second;
    }

   private:
    const FirstOrderRealization& real_;
    std::map<Point, LaurentMatrix> cache_;
};

/// Smallest box of x samples needed to evaluate w at every listed point.
inline Box required_input_box(const FirstOrderRealization& real, const std::vector<Point>& points,
                              OutputOperators* ops = nullptr) {
    const int d = real.d();
    std::optional<OutputOperators> local;
    if (!ops) ops = &local.emplace(real);
    Box need(Point(static_cast<std::size_t>(d), 0), Point(static_cast<std::size_t>(d), -1));
    if (d == 0) return Box(Point{}, Point{});
    for (const auto& p : points) {
        const LaurentMatrix& M = ops->at(detail::big_part(p, d));
        if (M.is_zero()) continue;
        auto [lo, hi] = support_range(M);
        Box b = Box(detail::small_part(p, d), detail::small_part(p, d));
        for (int k = 0; k < d; ++k) {
            b.lo[static_cast<std::size_t>(k)] += lo[static_cast<std::size_t>(k)];
            b.hi[static_cast<std::size_t>(k)] += hi[static_cast<std::size_t>(k)];
        }
        need = Box::hull(need, b);
    }
    if (need.empty()) need = Box(Point(static_cast<std::size_t>(d), 0), Point(static_cast<std::size_t>(d), 0));
    return need;
}

inline Box required_input_box(const FirstOrderRealization& real, const Box& out_box) {
    std::vector<Point> pts;
    out_box.for_each([&](const Point& p) { pts.push_back(p); });
    return required_input_box(real, pts);
}

/// X(sigma) x == 0 on every testable point of the window.
inline bool check_compatibility(const LaurentMatrix& X, const TrajectoryWindow& x) {
    if (X.rows() == 0) return true;
    return apply_operator(X, x).is_zero();
}

/// w(nu) = (C prod A_j^{nu_{d+j}} x)(nu_small) at the listed points.
inline std::vector<std::vector<Rational>> evaluate_points(const FirstOrderRealization& real, const TrajectoryWindow& x,
                                                          const std::vector<Point>& points, bool check = true) {
    if (x.width() != static_cast<int>(real.gamma()) || x.dim() != real.d())
        throw PreconditionError("initial condition must be a " + std::to_string(real.d()) + "-D window of width " +
                                std::to_string(real.gamma()));
    OutputOperators ops(real);
    Box need = required_input_box(real, points, &ops);
    if (!x.box().contains(need))
        throw PreconditionError("initial condition window " + to_string(x.box()) + " must cover " + to_string(need));
    if (check && !check_compatibility(real.X(), x)) throw PreconditionError("initial condition violates X(sigma) x = 0");
    std::vector<std::vector<Rational>> out;
    out.reserve(points.size());
    for (const auto& p : points)
        out.push_back(detail::eval_at(ops.at(detail::big_part(p, real.d())), x, detail::small_part(p, real.d())));
    return out;
}

inline TrajectoryWindow solve_strongly_relevant(const FirstOrderRealization& real, const TrajectoryWindow& x,
                                                const Box& out_box, bool check = true) {
    if (out_box.dim() != real.n()) throw PreconditionError("output box must have dimension n");
    std::vector<Point> pts;
    out_box.for_each([&](const Point& p) { pts.push_back(p); });
    auto vals = evaluate_points(real, x, pts, check);
    TrajectoryWindow w(out_box, real.q());
    for (std::size_t i = 0; i < pts.size(); ++i) w.set(pts[i], vals[i]);
    return w;
}

/// w(nu) = w~(T nu).
inline TrajectoryWindow renormalize(const TrajectoryWindow& w_tilde, const UnimodularTransform& T, const Box& out_box) {
    return pull_back(w_tilde, T, out_box);
}

/// Random x = K(sigma) z with X K = 0, so X x = 0 holds identically.
inline TrajectoryWindow random_compatible_x(const FirstOrderRealization& real, const Box& box, unsigned seed,
                                            int magnitude = 5) {
    const int d = real.d();
    const std::size_t g = real.gamma();
    LaurentMatrix K;
    if (real.X().rows() == 0) {
        K = LaurentMatrix::identity(g, d);
    } else {
        auto cols = syzygies(real.X().transpose());
        K = LaurentMatrix(g, cols.size(), d);
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (std::size_t r = 0; r < g; ++r) K(r, c) = cols[c][r];
    }
    TrajectoryWindow x(box, static_cast<int>(g));
    if (K.cols() == 0) return x;
    auto [lo, hi] = support_range(K);
    Box zbox = box;
    for (int k = 0; k < d; ++k) {
        zbox.lo[static_cast<std::size_t>(k)] += lo[static_cast<std::size_t>(k)];
        zbox.hi[static_cast<std::size_t>(k)] += hi[static_cast<std::size_t>(k)];
    }
    TrajectoryWindow z(zbox, static_cast<int>(K.cols()));
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(-magnitude, magnitude);
    for (auto& v : z.values()) v = dist(rng);
    box.for_each([&](const Point& p) { x.set(p, detail::eval_at(K, z, p)); });
    return x;
}

struct VerificationReport {
    Rational max_abs_residual = 0;
    std::size_t checked_points = 0;
    std::vector<Point> nonzero_points;
    bool ok() const { return max_abs_residual == 0; }
};

/// Brute-force R(sigma) w on every point where all shifted samples exist.
inline VerificationReport verify_solution(const EquationModule& sys, const TrajectoryWindow& w) {
    if (w.width() != sys.q() || w.dim() != sys.n()) throw PreconditionError("window does not match the system");
    VerificationReport rep;
    LaurentMatrix R = sys.matrix();
    if (R.rows() == 0) throw PreconditionError("no equations to verify");
    TrajectoryWindow res = [&] {
        try {
            return apply_operator(R, w);
        } catch (const PreconditionError&) {
            throw PreconditionError("verification window " + to_string(w.box()) + " has zero checkable points");
        }
    }();
    rep.checked_points = res.box().size();
    res.box().for_each([&](const Point& p) {
        bool bad = false;
        for (int i = 0; i < res.width(); ++i) {
            Rational a = abs(res.at(p, i));
            if (a > rep.max_abs_residual) rep.max_abs_residual = a;
            bad |= a != 0;
        }
        if (bad) rep.nonzero_points.push_back(p);
    });
    return rep;
}

struct PipelineSolution {
    TrajectoryWindow x;
    TrajectoryWindow w;
    VerificationReport report;
};

/// Evaluates a realization of phi_T(R) on {T nu : nu in out_box} and pulls
/// the result back. When x is absent a random compatible initial condition
/// covering the needed box is drawn from `seed`.
inline PipelineSolution solve_with_realization(const EquationModule& original, const UnimodularTransform& T,
                                               const FirstOrderRealization& real, const Box& out_box,
                                               const std::optional<TrajectoryWindow>& x_in, unsigned seed,
                                               bool verify) {
    if (out_box.dim() != original.n()) throw PreconditionError("output box must have dimension n");
    Box bbox = image_bounding_box(T, out_box);
    // shears inflate bounding boxes; fall back to the exact image set
    const bool use_bbox = bbox.size() <= 4 * out_box.size();
    std::vector<Point> image;
    if (use_bbox) {
        bbox.for_each([&](const Point& p) { image.push_back(p); });
    } else {
        std::set<Point> seen;
        out_box.for_each([&](const Point& p) { seen.insert(T.apply(p)); });
        image.assign(seen.begin(), seen.end());
    }
    TrajectoryWindow x = x_in ? *x_in : random_compatible_x(real, required_input_box(real, image), seed);
    auto vals = evaluate_points(real, x, image);

    TrajectoryWindow w(out_box, original.q());
    if (use_bbox) {
        TrajectoryWindow wt(bbox, original.q());
        for (std::size_t i = 0; i < image.size(); ++i) wt.set(image[i], vals[i]);
        w = renormalize(wt, T, out_box);
    } else {
        std::map<Point, std::size_t> where;
        for (std::size_t i = 0; i < image.size(); ++i) where[image[i]] = i;
        out_box.for_each([&](const Point& p) { w.set(p, vals[where.at(T.apply(p))]); });
    }
    VerificationReport rep;
    if (verify) {
        rep = verify_solution(original, w);
        if (!rep.ok()) throw VerificationError("solution residual is nonzero (max " + to_string(rep.max_abs_residual) + ")");
    }
    return {std::move(x), std::move(w), std::move(rep)};
}

struct GeneralSolution {
    NormalizationResult normalization;
    FirstOrderRealization realization;
    PipelineSolution solution;
};

struct SolveOptions {
    DnnlOptions dnnl;
    unsigned seed = 1;
    bool verify = true;
};

/// Normalization, realization, recursion and renormalization in one call.
inline GeneralSolution solve_general(const EquationModule& sys, const Box& out_box,
                                     const std::optional<TrajectoryWindow>& x = std::nullopt,
                                     const SolveOptions& opt = {}) {
    if (!is_autonomous(sys)) throw PreconditionError("system is not autonomous");
    NormalizationResult norm = dnnl_module(sys, opt.dnnl);
    FirstOrderRealization real = build_realization(norm);
    PipelineSolution sol = solve_with_realization(sys, norm.T, real, out_box, x, opt.seed, opt.verify);
    return {std::move(norm), std::move(real), std::move(sol)};
}

}  // namespace ndflow

#endif
