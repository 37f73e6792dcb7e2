#ifndef NDFLOW_JSON_IO_HPP
#define NDFLOW_JSON_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dnnl.hpp"
#include "errors.hpp"
#include "flow.hpp"
#include "realization.hpp"
#include "state_analysis.hpp"
#include "text.hpp"

namespace ndflow::io {

using json = nlohmann::ordered_json;

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what(), e.byte);
    }
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw PreconditionError("cannot write " + path);
    out << j.dump(2) << "\n";
}

template <class T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("field '") + key + "': " + e.what());
    }
}

inline LaurentPolynomial poly_from_json(const json& j, int n) {
    if (!j.is_string()) throw ParseError("polynomial entries must be strings");
    std::string s = j.get<std::string>();
    try {
        return parse_polynomial(s, n);
    } catch (const ParseError& e) {
        throw ParseError("'" + s + "': " + e.what());
    }
}

inline json matrix_to_json(const LaurentMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_string(m(i, k)));
        rows.push_back(row);
    }
    return rows;
}

inline LaurentMatrix matrix_from_json(const json& j, int n, std::size_t cols) {
    if (!j.is_array()) throw ParseError("matrix must be an array of rows");
    std::vector<LaurentVector> rows;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != cols)
            throw ParseError("matrix row must have " + std::to_string(cols) + " entries");
        LaurentVector v;
        for (const auto& e : row) v.push_back(poly_from_json(e, n));
        rows.push_back(std::move(v));
    }
    return LaurentMatrix::from_rows(rows, cols, n);
}

inline json rows_to_json(const std::vector<LaurentVector>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
        json row = json::array();
        for (const auto& p : r) row.push_back(to_string(p));
        out.push_back(row);
    }
    return out;
}

inline json system_to_json(const EquationModule& sys) {
    return json{{"n", sys.n()}, {"q", sys.q()}, {"R", rows_to_json(sys.generators())}};
}

inline EquationModule system_from_json(const json& j) {
    int n = field<int>(j, "n"), q = field<int>(j, "q");
    if (n < 1 || q < 1) throw ParseError("n and q must be positive");
    LaurentMatrix R = matrix_from_json(j.contains("R") ? j.at("R") : json::array(), n, static_cast<std::size_t>(q));
    return EquationModule(n, q, R.row_list());
}

inline json transform_to_json(const UnimodularTransform& T) { return json(T.matrix()); }

inline UnimodularTransform transform_from_json(const json& j) {
    try {
        return UnimodularTransform(j.get<IntMatrix>());
    } catch (const json::exception& e) {
        throw ParseError(std::string("transform: ") + e.what());
    }
}

inline json certificates_to_json(const std::vector<IntegralityCertificate>& certs) {
    json out = json::array();
    for (const auto& c : certs) out.push_back({{"var", c.var + 1}, {"degree", c.degree}, {"poly", to_string(c.p)}});
    return out;
}

inline std::vector<IntegralityCertificate> certificates_from_json(const json& j, int n) {
    std::vector<IntegralityCertificate> out;
    for (const auto& c : j) {
        IntegralityCertificate cert;
        cert.var = field<int>(c, "var") - 1;
        if (cert.var < 0 || cert.var >= n) throw ParseError("certificate variable out of range");
        cert.p = poly_from_json(c.at("poly"), n);
        auto coef = cert.p.coefficients_in(cert.var);
        cert.degree = coef.empty() ? 0 : coef.rbegin()->first;
        out.push_back(std::move(cert));
    }
    return out;
}

inline json normalization_to_json(const EquationModule& original, const NormalizationResult& r) {
    return json{{"n", original.n()},
                {"q", original.q()},
                {"T", transform_to_json(r.T)},
                {"d", r.d},
                {"original_R", rows_to_json(original.generators())},
                {"transformed_R", rows_to_json(r.transformed.generators())},
                {"certificates", certificates_to_json(r.certificates)}};
}

inline std::string generator_label(const Generator& g, int d) {
    ExponentVector e(static_cast<std::size_t>(d), 0);
    e.insert(e.end(), g.exponents.begin(), g.exponents.end());
    std::string m = detail::monomial_string(e);
    return m.empty() ? "1" : m;
}

inline json realization_to_json(const EquationModule& original, const UnimodularTransform& T,
                                const FirstOrderRealization& real) {
    json gens = json::array();
    for (const auto& g : real.generators())
        gens.push_back({{"monomial", generator_label(g, real.d())}, {"index", g.basis_index + 1}});
    json A = json::array();
    for (const auto& a : real.A()) A.push_back(matrix_to_json(a));
    return json{{"n", real.n()},
                {"q", real.q()},
                {"d", real.d()},
                {"gamma", real.gamma()},
                {"T", transform_to_json(T)},
                {"original_R", rows_to_json(original.generators())},
                {"transformed_R", rows_to_json(real.system().generators())},
                {"generators", gens},
                {"X", matrix_to_json(real.X())},
                {"A", A},
                {"C", matrix_to_json(real.C())},
                {"certificates", certificates_to_json(real.certificates())}};
}

struct LoadedRealization {
    EquationModule original;
    UnimodularTransform T;
    FirstOrderRealization realization;
};

/// Rebuilds the realization from the transformed system and certificates and
/// checks it against the stored matrices.
inline LoadedRealization realization_from_json(const json& j) {
    int n = field<int>(j, "n"), q = field<int>(j, "q"), d = field<int>(j, "d");
    EquationModule original(n, q, matrix_from_json(j.at("original_R"), n, static_cast<std::size_t>(q)).row_list());
    EquationModule transformed(n, q, matrix_from_json(j.at("transformed_R"), n, static_cast<std::size_t>(q)).row_list());
    UnimodularTransform T = transform_from_json(j.at("T"));
    FirstOrderRealization real(transformed, d, certificates_from_json(j.at("certificates"), n));
    const std::size_t g = real.gamma();
    bool same = field<std::size_t>(j, "gamma") == g && matrix_from_json(j.at("C"), d, g) == real.C() &&
                matrix_from_json(j.at("X"), d, g) == real.X() && j.at("A").size() == real.A().size();
    for (std::size_t i = 0; same && i < real.A().size(); ++i) same = matrix_from_json(j.at("A")[i], d, g) == real.A()[i];
    if (!same) throw PreconditionError("stored realization matrices do not match the rebuilt realization");
    return {std::move(original), std::move(T), std::move(real)};
}

inline json trajectory_to_json(const TrajectoryWindow& w) {
    json values = json::array();
    for (const auto& v : w.values()) values.push_back(to_string(v));
    return json{{"dim", w.dim()}, {"lo", w.box().lo}, {"hi", w.box().hi}, {"width", w.width()}, {"values", values}};
}

inline TrajectoryWindow trajectory_from_json(const json& j) {
    Box box(field<Point>(j, "lo"), field<Point>(j, "hi"));
    if (field<int>(j, "dim") != box.dim()) throw ParseError("trajectory dim disagrees with its box");
    TrajectoryWindow w(box, field<int>(j, "width"));
    const json& vals = j.at("values");
    if (!vals.is_array() || vals.size() != w.values().size())
        throw ParseError("trajectory needs " + std::to_string(w.values().size()) + " values");
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (!vals[i].is_string() && !vals[i].is_number_integer()) throw ParseError("values must be rational strings");
        w.values()[i] = vals[i].is_string() ? parse_rational(vals[i].get<std::string>()) : Rational(vals[i].get<long>());
    }
    return w;
}

/// One lattice point per line: coordinates then components.
inline std::string trajectory_to_csv(const TrajectoryWindow& w, bool as_float) {
    std::ostringstream out;
    for (int k = 0; k < w.dim(); ++k) out << (k ? "," : "") << "nu" << k + 1;
    for (int c = 0; c < w.width(); ++c) out << (w.dim() + c ? "," : "") << "w" << c + 1;
    out << "\n";
    w.box().for_each([&](const Point& p) {
        bool first = true;
        for (long x : p) {
            out << (first ? "" : ",") << x;
            first = false;
        }
        for (int c = 0; c < w.width(); ++c) {
            out << (first ? "" : ",");
            first = false;
            if (as_float)
                out << w.at(p, c).get_d();
            else
                out << to_string(w.at(p, c));
        }
        out << "\n";
    });
    return out.str();
}

inline json report_to_json(const StateSpaceReport& r) {
    return json{{"gamma", r.gamma}, {"d", r.d}, {"rank", r.rank}, {"is_free", r.is_free}, {"is_nonautonomous", r.is_nonautonomous}};
}

}  // namespace ndflow::io

#endif
