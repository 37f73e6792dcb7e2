#ifndef NDFLOW_GROEBNER_HPP
#define NDFLOW_GROEBNER_HPP

#include <algorithm>
#include <array>
#include <climits>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "laurent.hpp"
#include "rational.hpp"

/// Buchberger completion for submodules of free modules over Q[x_1..x_n].
/// Everything here works on polynomial representatives; Laurent semantics
/// are layered on top by saturation (see equation_module.hpp).
namespace ndflow::gb {

inline constexpr int kMaxVars = 12;

struct Monomial {
    std::array<int, kMaxVars> e{};
    int deg = 0;

    bool divides(const Monomial& o) const {
        if (deg > o.deg) return false;
        for (int i = 0; i < kMaxVars; ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }
    bool is_one() const { return deg == 0; }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (int i = 0; i < kMaxVars; ++i) r.e[i] = a.e[i] + b.e[i];
        r.deg = a.deg + b.deg;
        return r;
    }
    /// a / b; requires b | a.
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (int i = 0; i < kMaxVars; ++i) r.e[i] = a.e[i] - b.e[i];
        r.deg = a.deg - b.deg;
        return r;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (int i = 0; i < kMaxVars; ++i) {
            r.e[i] = std::max(a.e[i], b.e[i]);
            r.deg += r.e[i];
        }
        return r;
    }
    static bool coprime(const Monomial& a, const Monomial& b) {
        for (int i = 0; i < kMaxVars; ++i)
            if (a.e[i] != 0 && b.e[i] != 0) return false;
        return true;
    }
};

struct Term {
    Monomial m;
    int comp = 0;
    Rational c;
};

/// Module element: terms sorted strictly descending in the active order.
using Vec = std::vector<Term>;

enum class OrderKind { grevlex, lex, elimination };

/// Term order on Q[x]^q. Components below `block_split` form a block that
/// dominates every component at or above it; inside a block the monomial
/// order decides first and the lower component index breaks ties.
struct Order {
    OrderKind kind = OrderKind::grevlex;
    std::uint32_t eliminate = 0;
    int block_split = INT_MAX;

    static Order grevlex() { return {}; }
    static Order lex() { return {OrderKind::lex, 0, INT_MAX}; }
    /// Any monomial containing a masked variable ranks above every monomial
    /// free of them; ties are broken by grevlex.
    static Order elimination(std::uint32_t mask) { return {OrderKind::elimination, mask, INT_MAX}; }
    Order with_split(int split) const {
        Order o = *this;
        o.block_split = split;
        return o;
    }

    int compare_monomials(const Monomial& a, const Monomial& b) const {
        switch (kind) {
            case OrderKind::lex:
                for (int i = 0; i < kMaxVars; ++i)
                    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
                return 0;
            case OrderKind::elimination: {
                int wa = 0, wb = 0;
                for (int i = 0; i < kMaxVars; ++i)
                    if (eliminate >> i & 1u) {
                        wa += a.e[i];
                        wb += b.e[i];
                    }
                if (wa != wb) return wa > wb ? 1 : -1;
                [[fallthrough]];
            }
            case OrderKind::grevlex:
                if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
                for (int i = kMaxVars - 1; i >= 0; --i)
                    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
                return 0;
        }
        return 0;
    }

    int compare(const Monomial& am, int ac, const Monomial& bm, int bc) const {
        bool ba = ac >= block_split, bb = bc >= block_split;
        if (ba != bb) return ba ? -1 : 1;
        if (int r = compare_monomials(am, bm)) return r;
        if (ac != bc) return ac < bc ? 1 : -1;
        return 0;
    }
    int compare(const Term& a, const Term& b) const { return compare(a.m, a.comp, b.m, b.comp); }
};

/// Mask with bits set for variables [from, to).
inline std::uint32_t variable_mask(int from, int to) {
    std::uint32_t m = 0;
    for (int i = from; i < to; ++i) m |= 1u << i;
    return m;
}

inline bool uses_variables(const Vec& v, std::uint32_t mask) {
    for (const auto& t : v)
        for (int i = 0; i < kMaxVars; ++i)
            if ((mask >> i & 1u) && t.m.e[i] != 0) return true;
    return false;
}

inline void check_nvars(int nvars) {
    if (nvars > kMaxVars)
        throw PreconditionError("at most " + std::to_string(kMaxVars) + " variables are supported");
}

/// Sorts, merges equal terms and drops zeros.
inline Vec normalize(std::vector<Term> terms, const Order& order) {
    std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) { return order.compare(a, b) > 0; });
    Vec out;
    for (auto& t : terms) {
        if (!out.empty() && order.compare(out.back(), t) == 0)
            out.back().c += t.c;
        else
            out.push_back(std::move(t));
        if (out.back().c == 0) out.pop_back();
    }
    return out;
}

inline Monomial to_monomial(const ExponentVector& e) {
    Monomial m;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] < 0) throw InternalError("negative exponent in polynomial representative");
        m.e[i] = e[i];
        m.deg += e[i];
    }
    return m;
}

/// Polynomial (non-negative exponent) Laurent vector to a sorted Vec.
inline Vec from_laurent(const LaurentVector& v, const Order& order, int comp_offset = 0) {
    std::vector<Term> terms;
    for (std::size_t j = 0; j < v.size(); ++j) {
        check_nvars(v[j].nvars());
        for (const auto& [e, c] : v[j].terms()) terms.push_back({to_monomial(e), static_cast<int>(j) + comp_offset, c});
    }
    return normalize(std::move(terms), order);
}

inline LaurentVector to_laurent(const Vec& v, int nvars, std::size_t rank, int comp_offset = 0) {
    LaurentVector out = zero_vector(nvars, rank);
    for (const auto& t : v) {
        ExponentVector e(static_cast<std::size_t>(nvars));
        for (int i = 0; i < nvars; ++i) e[static_cast<std::size_t>(i)] = t.m.e[i];
        out.at(static_cast<std::size_t>(t.comp - comp_offset)).add_term(e, t.c);
    }
    return out;
}

/// f[start..] - c * m * g, merged in order.
inline Vec sub_scaled(const Vec& f, std::size_t start, const Rational& c, const Monomial& m, const Vec& g,
                      const Order& order) {
    Vec out;
    out.reserve(f.size() - start + g.size());
    std::size_t i = start, j = 0;
    while (i < f.size() || j < g.size()) {
        if (j == g.size()) {
            out.push_back(f[i++]);
            continue;
        }
        Monomial gm = g[j].m * m;
        int cmp = i == f.size() ? -1 : order.compare(f[i].m, f[i].comp, gm, g[j].comp);
        if (cmp > 0) {
            out.push_back(f[i++]);
        } else if (cmp < 0) {
            out.push_back({gm, g[j].comp, -c * g[j].c});
            ++j;
        } else {
            Rational s = f[i].c - c * g[j].c;
            if (s != 0) out.push_back({f[i].m, f[i].comp, std::move(s)});
            ++i;
            ++j;
        }
    }
    return out;
}

inline Vec scaled(const Vec& g, const Rational& c, const Monomial& m) {
    Vec out;
    out.reserve(g.size());
    for (const auto& t : g) out.push_back({t.m * m, t.comp, t.c * c});
    return out;
}

inline void make_monic(Vec& v) {
    if (v.empty() || v.front().c == 1) return;
    Rational inv = 1 / v.front().c;
    for (auto& t : v) t.c *= inv;
}

inline const Vec* find_reducer(const Term& lt, const std::vector<Vec>& G, std::size_t skip = SIZE_MAX) {
    for (std::size_t k = 0; k < G.size(); ++k) {
        if (k == skip || G[k].empty()) continue;
        const Term& gl = G[k].front();
        if (gl.comp == lt.comp && gl.m.divides(lt.m)) return &G[k];
    }
    return nullptr;
}

/// Division remainder of f by G. With `full` false only leading terms are
/// reduced.
inline Vec normal_form(Vec f, const std::vector<Vec>& G, const Order& order, bool full = true,
                       std::size_t skip = SIZE_MAX) {
    Vec rem;
    std::size_t start = 0;
    while (start < f.size()) {
        const Term& lt = f[start];
        if (const Vec* g = find_reducer(lt, G, skip)) {
            const Term& gl = g->front();
            f = sub_scaled(f, start, lt.c / gl.c, lt.m / gl.m, *g, order);
            start = 0;
        } else if (!full) {
            rem.insert(rem.end(), f.begin() + static_cast<std::ptrdiff_t>(start), f.end());
            return rem;
        } else {
            rem.push_back(lt);
            ++start;
        }
    }
    return rem;
}

struct Basis {
    int nvars = 0;
    int rank = 0;
    Order order;
    std::vector<Vec> elems;  // reduced, monic, ascending by leading term

    Vec reduce(const Vec& f) const { return normal_form(f, elems, order); }
    bool contains(const Vec& f) const { return reduce(f).empty(); }
    bool is_unit_module() const {
        // every standard basis vector is a leading term
        std::vector<bool> seen(static_cast<std::size_t>(rank), false);
        for (const auto& g : elems)
            if (g.front().m.is_one()) seen[static_cast<std::size_t>(g.front().comp)] = true;
        return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    }
};

inline Vec s_vector(const Vec& a, const Vec& b, const Order& order) {
    Monomial l = Monomial::lcm(a.front().m, b.front().m);
    Vec sa = scaled(a, 1 / a.front().c, l / a.front().m);
    return sub_scaled(sa, 0, 1 / b.front().c, l / b.front().m, b, order);
}

/// Reduced Groebner basis of the span of `gens`.
inline Basis buchberger(const std::vector<Vec>& gens, int nvars, int rank, const Order& order) {
    check_nvars(nvars);
    struct Pair {
        std::size_t i, j;
        Monomial lcm;
    };
    std::vector<Vec> G;
    std::vector<Pair> queue;
    std::set<std::pair<std::size_t, std::size_t>> pending;

    auto add = [&](Vec v) {
        make_monic(v);
        std::size_t idx = G.size();
        G.push_back(std::move(v));
        const Term& lt = G.back().front();
        for (std::size_t k = 0; k < idx; ++k) {
            const Term& lk = G[k].front();
            if (lk.comp != lt.comp) continue;
            // The coprime criterion is only sound for ideals.
            if (rank == 1 && Monomial::coprime(lk.m, lt.m)) continue;
            queue.push_back({k, idx, Monomial::lcm(lk.m, lt.m)});
            pending.insert({k, idx});
        }
    };
    auto is_pending = [&](std::size_t a, std::size_t b) { return pending.count({std::min(a, b), std::max(a, b)}) > 0; };

    for (const auto& g : gens) {
        Vec r = normal_form(normalize(std::vector<Term>(g.begin(), g.end()), order), G, order);
        if (!r.empty()) add(std::move(r));
    }

    while (!queue.empty()) {
        auto best = std::min_element(queue.begin(), queue.end(), [&](const Pair& a, const Pair& b) {
            if (a.lcm.deg != b.lcm.deg) return a.lcm.deg < b.lcm.deg;
            if (int c = order.compare_monomials(a.lcm, b.lcm)) return c < 0;
            return std::make_pair(a.j, a.i) < std::make_pair(b.j, b.i);
        });
        Pair p = *best;
        queue.erase(best);
        pending.erase({p.i, p.j});

        const int comp = G[p.i].front().comp;
        bool chain = false;
        for (std::size_t k = 0; k < G.size() && !chain; ++k) {
            if (k == p.i || k == p.j) continue;
            const Term& lk = G[k].front();
            if (lk.comp == comp && lk.m.divides(p.lcm) && !is_pending(p.i, k) && !is_pending(p.j, k)) chain = true;
        }
        if (chain) continue;

        Vec r = normal_form(s_vector(G[p.i], G[p.j], order), G, order);
        if (!r.empty()) add(std::move(r));
    }

    // Minimize, then tail-reduce against the remaining elements.
    std::vector<Vec> minimal;
    for (std::size_t i = 0; i < G.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j) continue;
            const Term &li = G[i].front(), &lj = G[j].front();
            if (li.comp == lj.comp && lj.m.divides(li.m) && (!(lj.m == li.m) || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(G[i]);
    }
    Basis out{nvars, rank, order, {}};
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        Vec head{minimal[i].front()};
        Vec tail(minimal[i].begin() + 1, minimal[i].end());
        Vec red = normal_form(std::move(tail), minimal, order, true, i);
        head.insert(head.end(), red.begin(), red.end());
        make_monic(head);
        out.elems.push_back(std::move(head));
    }
    std::sort(out.elems.begin(), out.elems.end(),
              [&](const Vec& a, const Vec& b) { return order.compare(a.front(), b.front()) < 0; });
    return out;
}

/// Full S-vector test; used by tests as an independent GB check.
inline bool is_groebner(const std::vector<Vec>& G, const Order& order) {
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = i + 1; j < G.size(); ++j) {
            if (G[i].front().comp != G[j].front().comp) continue;
            if (!normal_form(s_vector(G[i], G[j], order), G, order).empty()) return false;
        }
    return true;
}

/// Graph module (r_i, e_i) in rank q + m with the original block dominating.
inline std::vector<Vec> augment(const std::vector<Vec>& rows, int q, const Order& order) {
    std::vector<Vec> aug;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<Term> t(rows[i].begin(), rows[i].end());
        t.push_back({Monomial{}, q + static_cast<int>(i), Rational(1)});
        aug.push_back(normalize(std::move(t), order));
    }
    return aug;
}

/// Generators of { a : sum a_i rows_i = 0 }, as vectors of rank rows.size().
inline std::vector<Vec> syzygies(const std::vector<Vec>& rows, int nvars, int q, const Order& base = Order::grevlex()) {
    const Order order = base.with_split(q);
    Basis gb = buchberger(augment(rows, q, order), nvars, q + static_cast<int>(rows.size()), order);
    std::vector<Vec> out;
    const Order plain = base;
    for (const auto& g : gb.elems) {
        if (g.front().comp < q) continue;
        std::vector<Term> t;
        for (const auto& term : g) t.push_back({term.m, term.comp - q, term.c});
        out.push_back(normalize(std::move(t), plain));
    }
    return out;
}

/// Cofactor tracking for membership witnesses: express f as sum a_i rows_i.
class Lifter {
   public:
    Lifter(const std::vector<Vec>& rows, int nvars, int q, const Order& base = Order::grevlex())
        : q_(q), m_(static_cast<int>(rows.size())), base_(base), order_(base.with_split(q)) {
        gb_ = buchberger(augment(rows, q, order_), nvars, q + m_, order_);
    }

    std::optional<Vec> lift(const Vec& f) const {
        std::vector<Term> t(f.begin(), f.end());
        Vec r = normal_form(normalize(std::move(t), order_), gb_.elems, order_);
        std::vector<Term> cof;
        for (const auto& term : r) {
            if (term.comp < q_) return std::nullopt;
            cof.push_back({term.m, term.comp - q_, -term.c});
        }
        return normalize(std::move(cof), base_);
    }

    int rows() const { return m_; }

   private:
    int q_, m_;
    Order base_, order_;
    Basis gb_;
};

/// Generators of M : g = { v : g v in M } where M is spanned by `rows`.
inline std::vector<Vec> colon(const std::vector<Vec>& rows, const Vec& g, int nvars, int q,
                              const Order& order = Order::grevlex()) {
    std::vector<Vec> stacked = rows;
    for (int j = 0; j < q; ++j) {
        std::vector<Term> t;
        for (const auto& term : g) t.push_back({term.m, j, term.c});
        stacked.push_back(normalize(std::move(t), order));
    }
    std::vector<Vec> out;
    const int m = static_cast<int>(rows.size());
    for (const auto& s : syzygies(stacked, nvars, q, order)) {
        std::vector<Term> t;
        for (const auto& term : s)
            if (term.comp >= m) t.push_back({term.m, term.comp - m, term.c});
        Vec v = normalize(std::move(t), order);
        if (!v.empty()) out.push_back(std::move(v));
    }
    return out;
}

struct Saturation {
    Basis gb;
    int index = 0;  // g^index * (M : g^inf) is contained in M
};

/// M : g^inf by iterated colon until the span stops growing.
inline Saturation saturate(const std::vector<Vec>& rows, const Vec& g, int nvars, int q,
                           const Order& order = Order::grevlex()) {
    if (g.empty()) throw PreconditionError("saturation by the zero polynomial");
    Saturation s{buchberger(rows, nvars, q, order), 0};
    for (;;) {
        std::vector<Vec> next = colon(s.gb.elems, g, nvars, q, order);
        bool grew = std::any_of(next.begin(), next.end(), [&](const Vec& v) { return !s.gb.contains(v); });
        if (!grew) return s;
        s.gb = buchberger(next, nvars, q, order);
        ++s.index;
    }
}

/// Elements of span(rows) free of the masked variables (a generating set
/// of the elimination submodule).
inline std::vector<Vec> eliminate(const std::vector<Vec>& rows, int nvars, int q, std::uint32_t mask) {
    const Order order = Order::elimination(mask);
    std::vector<Vec> resorted;
    for (const auto& r : rows) resorted.push_back(normalize(std::vector<Term>(r.begin(), r.end()), order));
    Basis gb = buchberger(resorted, nvars, q, order);
    std::vector<Vec> out;
    for (const auto& g : gb.elems)
        if (!uses_variables(g, mask)) out.push_back(normalize(std::vector<Term>(g.begin(), g.end()), Order::grevlex()));
    return out;
}

}  // namespace ndflow::gb

#endif
