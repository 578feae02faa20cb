#pragma once

// JSON serialization of results. Key order is fixed, so output is
// byte-stable for a given input.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "contfrac.hpp"
#include "dehnfill.hpp"
#include "rodmodel.hpp"
#include "volbounds.hpp"

namespace rodvol {

using ojson = nlohmann::ordered_json;

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
inline ojson integer_json(const Integer& x)
{
    static const Integer lo = std::numeric_limits<long long>::min();
    static const Integer hi = std::numeric_limits<long long>::max();
    if (x >= lo && x <= hi)
        return static_cast<long long>(x);
    return x.str();
}

/// Real rounded to 12 significant digits; +-inf and nan become null.
inline ojson real_json(double v)
{
    if (!std::isfinite(v))
        return nullptr;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

inline std::string format_real(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline ojson to_json(const IntVector& v)
{
    ojson a = ojson::array();
    for (const auto& x : v)
        a.push_back(integer_json(x));
    return a;
}

inline ojson to_json(const PrimitiveVector& v) { return to_json(v.coords()); }

inline ojson to_json(const GeometryType& g)
{
    return ojson{{"type", to_string(g.kind)}, {"reason", g.reason}};
}

inline ojson to_json(const FillingSlope& s)
{
    return ojson{{"family", s.family}, {"index", s.index}, {"ell", integer_json(s.ell)}};
}

inline ojson to_json(const ParentManifold& pm)
{
    ojson slopes = ojson::array();
    for (const auto& s : pm.slopes)
        slopes.push_back(to_json(s));
    return ojson{{"E", pm.E},
                 {"O", pm.O},
                 {"filling_rod_count", pm.filling_rod_count},
                 {"octahedron_count", pm.octahedron_count},
                 {"slopes", slopes},
                 {"volume_units", integer_json(pm.volume_units)}};
}

template <class T>
ojson optional_json(const std::optional<T>& v)
{
    if (!v)
        return nullptr;
    if constexpr (std::is_same_v<T, Integer>)
        return integer_json(*v);
    else
        return *v;
}

inline ojson to_json(const VolumeBounds& b)
{
    return ojson{{"lower", b.lower_method == LowerMethod::None ? ojson(nullptr) : real_json(b.lower)},
                 {"upper", real_json(b.upper)},
                 {"lower_method", b.lower_method_str()},
                 {"upper_method", b.upper_method_str()},
                 {"multiplier_tet", optional_json(b.multiplier_tet)},
                 {"multiplier_oct", optional_json(b.multiplier_oct)},
                 {"C", optional_json(b.C)},
                 {"sum_m", optional_json(b.sum_m)},
                 {"applicable", b.applicable}};
}

inline ojson notes_json(const VolumeBounds& b)
{
    ojson n = ojson::array();
    for (const auto& s : b.notes)
        n.push_back(s);
    if (b.conditional)
        n.push_back("conditional");
    return n;
}

inline ojson to_json(const ContinuedFraction& cf)
{
    ojson terms = ojson::array();
    for (const auto& c : cf.terms())
        terms.push_back(integer_json(c));
    return ojson{{"cf", cf.str()}, {"terms", terms}, {"length", cf.length()}};
}

} // namespace rodvol
