#pragma once

// Reproducibility tables for the worked families: the four-rod normalization
// example, the bounded-volume (n,1,0) family and the [k;k,...,k] family.
// Rows are independent and evaluated concurrently; output keeps row order.

#include <cstddef>
#include <future>
#include <string>
#include <vector>

#include "report.hpp"
#include "volbounds.hpp"

namespace rodvol {

/// Horizontal rods at heights h/(h+1), ..., 1/(h+1) (top to bottom) and one
/// vertical rod at (1/2, 1/2).
inline StackedConfig make_stacked(const std::vector<PrimitiveVector>& pqs)
{
    StackedConfig s;
    const long long h = static_cast<long long>(pqs.size());
    for (long long i = 0; i < h; ++i)
        s.horizontal.push_back(HorizontalRod{pqs[static_cast<std::size_t>(i)], Rational(h - i, h + 1)});
    s.vertical.push_back(VerticalRod{Rational(1, 2), Rational(1, 2)});
    s.validate_and_order();
    return s;
}

/// [k; k, ..., k] with k terms.
inline ContinuedFraction repeated_cf(long long k)
{
    return ContinuedFraction(std::vector<Integer>(static_cast<std::size_t>(k), Integer(k)));
}

template <class Row, class F>
std::vector<Row> evaluate_rows(long long from, long long to, F f)
{
    std::vector<std::future<Row>> jobs;
    for (long long i = from; i <= to; ++i)
        jobs.push_back(std::async(std::launch::async, f, i));
    std::vector<Row> rows;
    rows.reserve(jobs.size());
    for (auto& j : jobs)
        rows.push_back(j.get());
    return rows;
}

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<ojson>> rows;

    ojson to_json() const
    {
        ojson out = ojson::array();
        for (const auto& r : rows) {
            ojson o = ojson::object();
            for (std::size_t c = 0; c < columns.size(); ++c)
                o[columns[c]] = r[c];
            out.push_back(o);
        }
        return ojson{{"table", name}, {"rows", out}};
    }

    std::string to_csv() const
    {
        std::string s;
        for (std::size_t c = 0; c < columns.size(); ++c)
            s += (c ? "," : "") + columns[c];
        s += "\n";
        for (const auto& r : rows) {
            for (std::size_t c = 0; c < r.size(); ++c) {
                if (c)
                    s += ",";
                const ojson& v = r[c];
                if (v.is_string())
                    s += "\"" + v.get<std::string>() + "\"";
                else if (v.is_null())
                    s += "";
                else
                    s += v.dump();
            }
            s += "\n";
        }
        return s;
    }
};

inline std::vector<PrimitiveVector> four_rod_directions()
{
    return {PrimitiveVector{2, 4, 3}, PrimitiveVector{5, 7, 1}, PrimitiveVector{9, 8, 6}, PrimitiveVector{0, 0, 1}};
}

inline Table remark33_table()
{
    const auto dirs = four_rod_directions();
    Table t{"remark33", {"rod", "direction", "completion", "intersection", "multiplier_tet", "upper", "is_min"}, {}};
    const GeneralUpper best = best_general_upper(dirs);
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        const UnimodularMatrix m = bezout_complete(dirs[i]);
        const GeneralUpper g = general_upper_with(dirs, i, m);
        t.rows.push_back({i, to_json(dirs[i]), m.matrix().str(), integer_json(g.intersection),
                          integer_json(g.bound().multiplier), real_json(g.value()), i == best.chosen});
    }
    return t;
}

struct BadUpperRow {
    long long n;
    std::size_t sum_m;
    Integer multiplier_oct;
    double orth_upper;
    Integer intersection;
    Integer best_general_multiplier_tet;
    double best_general_upper;
};

inline BadUpperRow bad_upper_row(long long n)
{
    const StackedConfig s = make_stacked({PrimitiveVector{n, 1}, PrimitiveVector{0, 1}});
    const VolumeBounds orth = orthogonal_bounds(s, {ContinuedFraction{n}, ContinuedFraction{0}});
    const Integer inter = intersection_functional({{Integer(n), Integer(1)}, {Integer(0), Integer(1)}});
    const GeneralUpper g = best_general_upper(s.directions());
    return {n, *orth.sum_m, *orth.multiplier_oct, orth.upper, inter, g.bound().multiplier, g.value()};
}

inline Table cor_bad_upper_table(long long from, long long to)
{
    Table t{"cor_bad_upper",
            {"n", "sum_m", "multiplier_oct", "orth_upper", "intersection", "best_general_multiplier_tet",
             "best_general_upper"},
            {}};
    for (const auto& r : evaluate_rows<BadUpperRow>(from, to, bad_upper_row))
        t.rows.push_back({r.n, r.sum_m, integer_json(r.multiplier_oct), real_json(r.orth_upper),
                          integer_json(r.intersection), integer_json(r.best_general_multiplier_tet),
                          real_json(r.best_general_upper)});
    return t;
}

struct InfVolRow {
    long long k;
    Rational slope;
    std::size_t sum_m;
    Integer C;
    double lower;
    double upper;
    LowerMethod method;
};

inline InfVolRow inf_vol_row(long long k)
{
    const ContinuedFraction cf = repeated_cf(k);
    const Rational x = eval_cf(cf);
    const StackedConfig s = make_stacked({PrimitiveVector(IntVector{x.num(), x.den()}), PrimitiveVector{0, 1}});
    const VolumeBounds b = orthogonal_bounds(s, {cf, ContinuedFraction{0}});
    return {k, x, *b.sum_m, b.C.value_or(Integer(-1)), b.lower, b.upper, b.lower_method};
}

inline Table cor_inf_vol_table(long long from, long long to)
{
    Table t{"cor_inf_vol", {"k", "p/q", "sum_m", "C", "lower", "upper", "lower_over_k", "lower_method"}, {}};
    for (const auto& r : evaluate_rows<InfVolRow>(from, to, inf_vol_row))
        t.rows.push_back({r.k, r.slope.str(), r.sum_m, integer_json(r.C), real_json(r.lower), real_json(r.upper),
                          real_json(r.lower / static_cast<double>(r.k)),
                          r.method == LowerMethod::OrthLower ? "OrthLower" : "GeneralLower"});
    return t;
}

} // namespace rodvol
