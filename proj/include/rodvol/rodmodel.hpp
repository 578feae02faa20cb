#pragma once

// Rod configurations in the 3-torus and their geometric type.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "contfrac.hpp"
#include "intlinalg.hpp"

namespace rodvol {

/// Order on finite rationals (and 1/0 above everything).
inline bool less(const Rational& a, const Rational& b)
{
    if (a.is_infinite())
        return false;
    if (b.is_infinite())
        return true;
    return a.num() * b.den() < b.num() * a.den();
}

struct FreePlacement {
    friend bool operator==(const FreePlacement&, const FreePlacement&) = default;
};

/// A (p,q,0)-rod at height z.
struct HorizontalRod {
    PrimitiveVector pq; // dimension 2
    Rational z;

    PrimitiveVector direction() const { return PrimitiveVector(IntVector{pq[0], pq[1], 0}); }
    /// p/q as a slope, 1/0 for the (1,0) rod.
    Rational slope() const { return Rational(pq[0], pq[1]); }

    friend bool operator==(const HorizontalRod&, const HorizontalRod&) = default;
};

/// A (0,0,1)-rod through (x, y).
struct VerticalRod {
    Rational x;
    Rational y;

    friend bool operator==(const VerticalRod&, const VerticalRod&) = default;
};

struct Rod {
    PrimitiveVector direction;
    std::variant<FreePlacement, HorizontalRod, VerticalRod> placement;
};

struct RodConfig {
    std::vector<Rod> rods;

    std::vector<PrimitiveVector> directions() const
    {
        std::vector<PrimitiveVector> d;
        d.reserve(rods.size());
        for (const auto& r : rods)
            d.push_back(r.direction);
        return d;
    }

    static RodConfig from_directions(const std::vector<PrimitiveVector>& dirs)
    {
        RodConfig c;
        for (const auto& d : dirs)
            c.rods.push_back(Rod{d, FreePlacement{}});
        return c;
    }
};

/// Horizontal rods listed top to bottom (decreasing z) plus vertical rods.
struct StackedConfig {
    std::vector<HorizontalRod> horizontal;
    std::vector<VerticalRod> vertical;

    std::size_t rod_count() const noexcept { return horizontal.size() + vertical.size(); }

    std::vector<PrimitiveVector> directions() const
    {
        std::vector<PrimitiveVector> d;
        for (const auto& h : horizontal)
            d.push_back(h.direction());
        for (std::size_t i = 0; i < vertical.size(); ++i)
            d.push_back(PrimitiveVector{0, 0, 1});
        return d;
    }

    RodConfig to_rod_config() const
    {
        RodConfig c;
        for (const auto& h : horizontal)
            c.rods.push_back(Rod{h.direction(), h});
        for (const auto& v : vertical)
            c.rods.push_back(Rod{PrimitiveVector{0, 0, 1}, v});
        return c;
    }

    /// Sorts horizontals by decreasing height and checks placements are distinct.
    void validate_and_order()
    {
        std::stable_sort(horizontal.begin(), horizontal.end(),
                         [](const HorizontalRod& a, const HorizontalRod& b) { return less(b.z, a.z); });
        for (std::size_t i = 0; i + 1 < horizontal.size(); ++i)
            if (horizontal[i].z == horizontal[i + 1].z)
                throw Error(ErrorCode::DuplicatePlacement,
                            "two horizontal rods at height " + horizontal[i].z.str());
        for (std::size_t i = 0; i < vertical.size(); ++i)
            for (std::size_t j = i + 1; j < vertical.size(); ++j)
                if (vertical[i] == vertical[j])
                    throw Error(ErrorCode::DuplicatePlacement,
                                "two vertical rods at (" + vertical[i].x.str() + ", " +
                                    vertical[i].y.str() + ")");
    }
};

using AnyConfig = std::variant<RodConfig, StackedConfig>;

inline std::vector<PrimitiveVector> directions_of(const AnyConfig& cfg)
{
    return std::visit([](const auto& c) { return c.directions(); }, cfg);
}

struct GeometryType {
    enum class Kind { Hyperbolic, SeifertFibred, Toroidal, Unknown };

    Kind kind = Kind::Unknown;
    std::string reason;

    bool is(Kind k) const noexcept { return kind == k; }
};

inline const char* to_string(GeometryType::Kind k)
{
    switch (k) {
    case GeometryType::Kind::Hyperbolic: return "Hyperbolic";
    case GeometryType::Kind::SeifertFibred: return "SeifertFibred";
    case GeometryType::Kind::Toroidal: return "Toroidal";
    case GeometryType::Kind::Unknown: return "Unknown";
    }
    return "Unknown";
}

/// Rank over Q of the direction vectors (1, 2 or 3).
inline std::size_t direction_rank(const std::vector<PrimitiveVector>& dirs)
{
    std::vector<IntVector> rows;
    rows.reserve(dirs.size());
    for (const auto& d : dirs)
        rows.push_back(d.coords());
    return rank(rows);
}

inline std::size_t direction_rank(const AnyConfig& cfg) { return direction_rank(directions_of(cfg)); }

namespace detail {

inline std::optional<GeometryType> classify_by_directions(const std::vector<PrimitiveVector>& dirs,
                                                          std::optional<std::pair<std::size_t, std::size_t>>& parallel)
{
    using K = GeometryType::Kind;
    if (dirs.empty())
        throw Error(ErrorCode::Precondition, "configuration has no rods");
    bool all_equal = true;
    for (const auto& d : dirs)
        all_equal = all_equal && d == dirs.front();
    if (all_equal)
        return GeometryType{K::SeifertFibred, "all rods have direction " + dirs.front().str()};
    const std::size_t r = direction_rank(dirs);
    if (r <= 2)
        return GeometryType{K::Toroidal, "direction vectors span a plane (rank " + std::to_string(r) + ")"};
    for (std::size_t i = 0; i < dirs.size() && !parallel; ++i)
        for (std::size_t j = i + 1; j < dirs.size(); ++j)
            if (dirs[i] == dirs[j]) {
                parallel = std::make_pair(i, j);
                break;
            }
    if (!parallel)
        return GeometryType{K::Hyperbolic, "rank 3 and no two rods parallel"};
    return std::nullopt;
}

inline GeometryType unknown_for(std::pair<std::size_t, std::size_t> pair)
{
    return {GeometryType::Kind::Unknown,
            "rods " + std::to_string(pair.first) + " and " + std::to_string(pair.second) +
                " are parallel; linear isotopy in the complement of the other rods is not decided"};
}

} // namespace detail

inline GeometryType classify(const RodConfig& cfg)
{
    std::optional<std::pair<std::size_t, std::size_t>> parallel;
    if (auto t = detail::classify_by_directions(cfg.directions(), parallel))
        return *t;
    return detail::unknown_for(*parallel);
}

/// As above, plus the one-vertical-rod rule: horizontal rods stacked in
/// height are hyperbolic exactly when no two cyclic neighbours are parallel.
inline GeometryType classify(const StackedConfig& cfg)
{
    using K = GeometryType::Kind;
    std::optional<std::pair<std::size_t, std::size_t>> parallel;
    if (auto t = detail::classify_by_directions(cfg.directions(), parallel))
        return *t;
    if (cfg.vertical.size() != 1)
        return detail::unknown_for(*parallel);
    const std::size_t h = cfg.horizontal.size();
    for (std::size_t i = 0; i < h; ++i) {
        const std::size_t j = (i + 1) % h;
        if (cfg.horizontal[i].pq == cfg.horizontal[j].pq)
            return {K::Toroidal, "neighbouring horizontal rods " + std::to_string(i) + " and " +
                                     std::to_string(j) + " are parallel and bound an unobstructed annulus"};
    }
    return {K::Hyperbolic, "one vertical rod and no two neighbouring horizontal rods parallel"};
}

inline GeometryType classify(const AnyConfig& cfg)
{
    return std::visit([](const auto& c) { return classify(c); }, cfg);
}

// ---- JSON input ------------------------------------------------------------
//
// {"rods":[{"direction":[a,b,c]}, ...]}
// {"horizontal":[{"pq":[p,q],"z":"num/den"}, ...],"vertical":[{"xy":["num/den","num/den"]}, ...]}
//
// Coordinates are JSON integers or decimal strings; heights and positions are
// "num/den" strings, decimal strings, or JSON numbers (converted exactly).

namespace detail {

inline Integer json_integer(const nlohmann::json& j, const char* what)
{
    if (j.is_number_integer())
        return Integer(j.get<long long>());
    if (j.is_number_unsigned())
        return Integer(j.get<unsigned long long>());
    if (j.is_string())
        return parse_integer(j.get<std::string>());
    throw Error(ErrorCode::Malformed, std::string(what) + " must be an integer");
}

inline Rational decimal_rational(std::string_view s)
{
    s = trim(s);
    const auto dot = s.find('.');
    if (dot == std::string_view::npos)
        return Rational(parse_integer(s), 1);
    std::string digits(s.substr(0, dot));
    std::string frac(s.substr(dot + 1));
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos)
        throw Error(ErrorCode::Malformed, "bad decimal '" + std::string(s) + "'");
    const bool neg = !digits.empty() && digits.front() == '-';
    if (digits.empty() || digits == "-" || digits == "+")
        digits += "0";
    Integer whole = parse_integer(digits);
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i)
        scale *= 10;
    Integer f(frac);
    Integer num = abs_int(whole) * scale + f;
    return Rational(neg ? Integer(-num) : num, scale);
}

inline Rational json_rational(const nlohmann::json& j, const char* what)
{
    if (j.is_number_integer() || j.is_number_unsigned())
        return Rational(json_integer(j, what), 1);
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (!std::isfinite(v))
            throw Error(ErrorCode::Malformed, std::string(what) + " is not finite");
        int exp = 0;
        const double mant = std::frexp(v, &exp);
        // v = mant * 2^exp with 53-bit mantissa
        const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
        exp -= 53;
        Integer num(scaled), den(1);
        if (exp >= 0)
            num <<= exp;
        else
            den <<= -exp;
        return Rational(num, den);
    }
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s.find('/') != std::string::npos)
            return parse_rational(s);
        return decimal_rational(s);
    }
    throw Error(ErrorCode::Malformed, std::string(what) + " must be a number or \"num/den\" string");
}

inline Rational unit_interval(const nlohmann::json& j, const char* what)
{
    Rational r = json_rational(j, what);
    if (r.is_infinite() || !less(Rational(0), r) || !less(r, Rational(1)))
        throw Error(ErrorCode::OutOfRange, std::string(what) + " = " + r.str() + " is not in (0,1)");
    return r;
}

inline IntVector json_int_array(const nlohmann::json& j, std::size_t n, const char* what)
{
    if (!j.is_array() || j.size() != n)
        throw Error(ErrorCode::Malformed,
                    std::string(what) + " must be an array of " + std::to_string(n) + " integers");
    IntVector v;
    for (const auto& x : j)
        v.push_back(json_integer(x, what));
    return v;
}

} // namespace detail

inline AnyConfig parse_config(const nlohmann::json& doc)
{
    if (!doc.is_object())
        throw Error(ErrorCode::Malformed, "configuration must be a JSON object");
    const bool has_rods = doc.contains("rods");
    const bool has_stack = doc.contains("horizontal") || doc.contains("vertical");
    if (has_rods == has_stack)
        throw Error(ErrorCode::Malformed, "expected either \"rods\" or \"horizontal\"/\"vertical\"");

    if (has_rods) {
        const auto& rods = doc.at("rods");
        if (!rods.is_array() || rods.empty())
            throw Error(ErrorCode::Malformed, "\"rods\" must be a nonempty array");
        RodConfig cfg;
        for (const auto& r : rods) {
            if (!r.is_object() || !r.contains("direction"))
                throw Error(ErrorCode::Malformed, "each rod needs a \"direction\"");
            cfg.rods.push_back(Rod{PrimitiveVector(detail::json_int_array(r.at("direction"), 3, "direction")),
                                   FreePlacement{}});
        }
        return cfg;
    }

    StackedConfig cfg;
    if (doc.contains("horizontal")) {
        const auto& hs = doc.at("horizontal");
        if (!hs.is_array())
            throw Error(ErrorCode::Malformed, "\"horizontal\" must be an array");
        for (const auto& h : hs) {
            if (!h.is_object() || !h.contains("pq") || !h.contains("z"))
                throw Error(ErrorCode::Malformed, "each horizontal rod needs \"pq\" and \"z\"");
            cfg.horizontal.push_back(HorizontalRod{PrimitiveVector(detail::json_int_array(h.at("pq"), 2, "pq")),
                                                   detail::unit_interval(h.at("z"), "z")});
        }
    }
    if (doc.contains("vertical")) {
        const auto& vs = doc.at("vertical");
        if (!vs.is_array())
            throw Error(ErrorCode::Malformed, "\"vertical\" must be an array");
        for (const auto& v : vs) {
            if (!v.is_object() || !v.contains("xy") || !v.at("xy").is_array() || v.at("xy").size() != 2)
                throw Error(ErrorCode::Malformed, "each vertical rod needs \"xy\": [x, y]");
            cfg.vertical.push_back(VerticalRod{detail::unit_interval(v.at("xy")[0], "x"),
                                               detail::unit_interval(v.at("xy")[1], "y")});
        }
    }
    if (cfg.rod_count() == 0)
        throw Error(ErrorCode::Malformed, "configuration has no rods");
    cfg.validate_and_order();
    return cfg;
}

inline AnyConfig parse_config(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::Malformed, std::string("invalid JSON: ") + e.what());
    }
    return parse_config(doc);
}

inline AnyConfig parse_config(const std::string& text) { return parse_config(std::string_view(text)); }
inline AnyConfig parse_config(const char* text) { return parse_config(std::string_view(text)); }

} // namespace rodvol
