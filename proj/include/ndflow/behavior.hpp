#ifndef NDFLOW_BEHAVIOR_HPP
#define NDFLOW_BEHAVIOR_HPP

#include <string>
#include <vector>

#include "equation_module.hpp"
#include "laurent_matrix.hpp"
#include "trajectory.hpp"

namespace ndflow {

/// Ideal of the q x q minors of the generator matrix; zero with fewer rows.
inline EquationModule characteristic_ideal(const EquationModule& sys) {
    const auto q = static_cast<std::size_t>(sys.q());
    if (sys.generators().size() < q) return EquationModule(sys.n(), 1, {});
    return EquationModule::ideal(sys.n(), minors(sys.matrix(), q));
}

/// ann(A^q / R) as the intersection of the colon ideals R : e_j.
inline EquationModule annihilator(const EquationModule& sys) {
    if (sys.q() == 0) return EquationModule::full(sys.n(), 1);
    if (sys.q() == 1) return sys;
    EquationModule acc = sys.colon_ideal(unit_vector(sys.n(), static_cast<std::size_t>(sys.q()), 0));
    for (int j = 1; j < sys.q(); ++j)
        acc = acc.intersect(sys.colon_ideal(unit_vector(sys.n(), static_cast<std::size_t>(sys.q()), static_cast<std::size_t>(j))));
    return acc;
}

struct AutonomyReport {
    bool autonomous = false;
    bool minors_nonzero = false;
    std::string warning;  // set when the minors test disagrees
};

inline AutonomyReport autonomy_report(const EquationModule& sys) {
    AutonomyReport r;
    r.autonomous = !annihilator(sys).is_zero();
    r.minors_nonzero = !characteristic_ideal(sys).is_zero();
    if (sys.generators().size() >= static_cast<std::size_t>(sys.q()) && r.minors_nonzero != r.autonomous)
        r.warning = "annihilator and characteristic ideal disagree on autonomy";
    return r;
}

inline bool is_autonomous(const EquationModule& sys) { return autonomy_report(sys).autonomous; }

/// Two lifts represent the same quotient class iff they differ by a member.
inline bool same_class(const EquationModule& sys, const LaurentVector& a, const LaurentVector& b) {
    return sys.contains(a - b);
}

/// Action of a quotient element, through its lift m, on a window.
inline TrajectoryWindow act_on_trajectory(const LaurentVector& m, const TrajectoryWindow& w) {
    if (m.empty()) throw PreconditionError("empty lift");
    LaurentMatrix row = LaurentMatrix::from_rows({m}, m.size(), m.front().nvars());
    try {
        return apply_operator(row, w);
    } catch (const PreconditionError& e) {
        auto [lo, hi] = support_range(row);
        Box need = w.box();
        for (std::size_t k = 0; k < lo.size(); ++k) {
            need.lo[k] += lo[k];
            need.hi[k] = need.lo[k] + (hi[k] - lo[k]);
        }
        throw PreconditionError("insufficient support: the lift needs at least the box " + to_string(need) + " (" +
                                e.what() + ")");
    }
}

}  // namespace ndflow

#endif
