#pragma once

// Hyperbolic volume bounds for rod complements.
//
// General bounds hold for any hyperbolic rod complement:
//   n * v_tet  <  Vol  <=  8 * v_tet * I,
// where I is the total intersection number of the (p,q) projections after
// the chosen rod has been normalized to (0,0,1).
//
// Orthogonal bounds cover horizontal rods stacked around one vertical rod:
//   Vol <= 2 * v_oct * sum(m_i), and, when every filling slope has |ell| >= 6,
//   Vol >= (1 - 4 pi^2 / (C^2 + 4))^{3/2} * 2 * v_oct * sum(m_i).

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dehnfill.hpp"
#include "intlinalg.hpp"
#include "rodmodel.hpp"

namespace rodvol {

/// Regular ideal tetrahedron volume.
inline constexpr double kVTet = 1.0149416064096536;
/// Regular ideal octahedron volume.
inline constexpr double kVOct = 3.6638623767088760;

enum class Constant { VTet, VOct };

inline const char* to_string(Constant c) { return c == Constant::VTet ? "v_tet" : "v_oct"; }

/// multiplier * constant, kept symbolic so comparisons need no float tolerance.
struct SymbolicMultiple {
    Integer multiplier;
    Constant constant = Constant::VTet;

    double value() const
    {
        return static_cast<double>(multiplier) * (constant == Constant::VTet ? kVTet : kVOct);
    }
};

namespace detail {
// Rational enclosures lo/1e9 < constant < hi/1e9.
inline std::pair<Integer, Integer> enclosure(Constant c)
{
    if (c == Constant::VTet)
        return {Integer(1014941606), Integer(1014941607)};
    return {Integer(3663862376), Integer(3663862377)};
}
} // namespace detail

/// True only when a < b is certain from the enclosures of the constants.
inline bool certainly_less(const SymbolicMultiple& a, const SymbolicMultiple& b)
{
    const auto [alo, ahi] = detail::enclosure(a.constant);
    const auto [blo, bhi] = detail::enclosure(b.constant);
    (void)alo;
    (void)bhi;
    if (a.constant == b.constant)
        return a.multiplier < b.multiplier;
    // both multipliers are nonnegative here
    return a.multiplier * ahi < b.multiplier * blo;
}

using PQ = std::pair<Integer, Integer>;

/// sum_{i<j} |p_i q_j - p_j q_i| + sum_i (gcd(p_i, q_i) - 1)
inline Integer intersection_functional(const std::vector<PQ>& pairs)
{
    Integer total = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [pi, qi] = pairs[i];
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            const auto& [pj, qj] = pairs[j];
            total += abs_int(pi * qj - pj * qi);
        }
        const Integer g = boost::multiprecision::gcd(abs_int(pi), abs_int(qi));
        if (g == 0)
            throw Error(ErrorCode::Precondition, "(p,q) = (0,0) has no intersection number");
        total += g - 1;
    }
    return total;
}

struct GeneralUpper {
    std::size_t chosen = 0;
    Integer intersection;     // I; the bound is 8 * I * v_tet
    std::size_t k = 0;        // rods not parallel to the chosen one
    bool applicable = false;
    std::string note;
    std::vector<PrimitiveVector> normalized; // directions after the chosen rod is sent to (0,0,1)

    SymbolicMultiple bound() const { return {8 * intersection, Constant::VTet}; }
    double value() const { return bound().value(); }
};

/// Upper bound after normalizing dirs[chosen] with a given completion M
/// (last column +-dirs[chosen]). Any completion gives the same result.
inline GeneralUpper general_upper_with(const std::vector<PrimitiveVector>& dirs, std::size_t chosen,
                                       const UnimodularMatrix& completion)
{
    if (chosen >= dirs.size())
        throw Error(ErrorCode::Precondition, "chosen rod index out of range");
    const PrimitiveVector last(completion.matrix().column(completion.size() - 1));
    if (!(last == dirs[chosen]))
        throw Error(ErrorCode::Precondition, "completion does not carry (0,0,1) to the chosen rod");

    GeneralUpper out;
    out.chosen = chosen;
    out.normalized = transform_directions(unimodular_inverse(completion), dirs);
    std::vector<PQ> pairs;
    for (const auto& d : out.normalized)
        if (d[0] != 0 || d[1] != 0)
            pairs.emplace_back(d[0], d[1]);
    out.k = pairs.size();
    if (dirs.size() < 3) {
        out.note = "fewer than 3 rods: no hyperbolic complement";
        return out;
    }
    if (pairs.empty()) {
        out.note = "all rods parallel to the chosen rod: bound degenerates to 0";
        return out;
    }
    out.intersection = intersection_functional(pairs);
    out.applicable = true;
    return out;
}

inline GeneralUpper general_upper(const std::vector<PrimitiveVector>& dirs, std::size_t chosen)
{
    if (chosen >= dirs.size())
        throw Error(ErrorCode::Precondition, "chosen rod index out of range");
    return general_upper_with(dirs, chosen, bezout_complete(dirs[chosen]));
}

/// Minimum of general_upper over the choice of normalized rod (first index on ties).
inline GeneralUpper best_general_upper(const std::vector<PrimitiveVector>& dirs)
{
    std::optional<GeneralUpper> best;
    GeneralUpper fallback;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        GeneralUpper g = general_upper(dirs, i);
        if (!g.applicable) {
            if (i == 0)
                fallback = g;
            continue;
        }
        if (!best || g.intersection < best->intersection)
            best = std::move(g);
    }
    return best ? *best : fallback;
}

/// n * v_tet for n >= 3 rods; nothing below that.
inline std::optional<SymbolicMultiple> general_lower(std::size_t n)
{
    if (n < 3)
        return std::nullopt;
    return SymbolicMultiple{Integer(n), Constant::VTet};
}

enum class LowerMethod { None, GeneralLower, OrthLower };
enum class UpperMethod { None, GeneralUpper, OrthUpper };

struct VolumeBounds {
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    LowerMethod lower_method = LowerMethod::None;
    UpperMethod upper_method = UpperMethod::None;
    std::optional<std::size_t> chosen_rod;     // GeneralUpper provenance
    std::optional<Integer> lower_multiplier_tet; // n in n * v_tet
    std::optional<Integer> multiplier_tet;     // 8 * I in the general upper bound
    std::optional<Integer> multiplier_oct;     // 2 * sum(m) in the orthogonal upper bound
    std::optional<Integer> C;
    std::optional<std::size_t> sum_m;
    bool applicable = false;
    bool conditional = false; // computed without a proof of hyperbolicity
    std::vector<std::string> notes;

    std::string lower_method_str() const
    {
        switch (lower_method) {
        case LowerMethod::GeneralLower: return "GeneralLower";
        case LowerMethod::OrthLower: return "OrthLower{C=" + C->str() + "}";
        case LowerMethod::None: break;
        }
        return "None";
    }

    std::string upper_method_str() const
    {
        switch (upper_method) {
        case UpperMethod::GeneralUpper: return "GeneralUpper{rod=" + std::to_string(*chosen_rod) + "}";
        case UpperMethod::OrthUpper: return "OrthUpper";
        case UpperMethod::None: break;
        }
        return "None";
    }
};

/// (1 - 4 pi^2 / (C^2 + 4))^{3/2}
inline double filling_factor(const Integer& C)
{
    const double c = static_cast<double>(C);
    return std::pow(1.0 - 4.0 * std::numbers::pi * std::numbers::pi / (c * c + 4.0), 1.5);
}

namespace detail {

inline void check_sandwich(const VolumeBounds& b)
{
    if (!b.conditional && b.lower_method != LowerMethod::None && b.upper_method != UpperMethod::None &&
        b.lower > b.upper * (1.0 + 1e-9))
        throw Error(ErrorCode::Invariant, "lower bound exceeds upper bound");
}

} // namespace detail

/// General two-sided bounds; `chosen` selects the normalized rod, or the
/// best choice when empty.
inline VolumeBounds general_bounds(const std::vector<PrimitiveVector>& dirs, const GeometryType& type,
                                   std::optional<std::size_t> chosen = std::nullopt)
{
    VolumeBounds b;
    if (type.is(GeometryType::Kind::SeifertFibred) || type.is(GeometryType::Kind::Toroidal)) {
        b.notes.push_back(std::string("complement is ") + to_string(type.kind) + ", not hyperbolic");
        return b;
    }
    b.conditional = type.is(GeometryType::Kind::Unknown);
    if (b.conditional)
        b.notes.push_back("conditional on hyperbolicity: " + type.reason);

    if (auto lo = general_lower(dirs.size())) {
        b.lower = lo->value();
        b.lower_method = LowerMethod::GeneralLower;
        b.lower_multiplier_tet = lo->multiplier;
    }
    const GeneralUpper up = chosen ? general_upper(dirs, *chosen) : best_general_upper(dirs);
    if (up.applicable) {
        b.upper = up.value();
        b.upper_method = UpperMethod::GeneralUpper;
        b.chosen_rod = up.chosen;
        b.multiplier_tet = up.bound().multiplier;
    } else {
        b.notes.push_back(up.note);
    }
    b.applicable = b.lower_method != LowerMethod::None && b.upper_method != UpperMethod::None;
    if (b.conditional && b.applicable && b.lower > b.upper)
        b.notes.push_back("lower bound exceeds upper bound, so the complement is not hyperbolic");
    detail::check_sandwich(b);
    return b;
}

struct OrthogonalResult {
    VolumeBounds bounds;
    std::optional<ParentManifold> parent;
    std::vector<ContinuedFraction> cfs;
    bool swapped = false;
};

inline OrthogonalResult orthogonal_analysis(const StackedConfig& stacked, const std::vector<ContinuedFraction>& cf_choice)
{
    OrthogonalResult out;
    out.cfs = cf_choice;
    VolumeBounds& b = out.bounds;

    if (stacked.vertical.size() != 1) {
        b.notes.push_back("orthogonal bounds need exactly one vertical rod");
        return out;
    }
    if (cf_choice.size() != stacked.horizontal.size())
        throw Error(ErrorCode::Mismatch, "need one continued fraction per horizontal rod");
    const GeometryType type = classify(stacked);
    if (!type.is(GeometryType::Kind::Hyperbolic)) {
        b.notes.push_back(std::string("hypotheses violated: ") + to_string(type.kind) + ": " + type.reason);
        return out;
    }
    out.parent = parent_manifold(stacked, cf_choice);
    const ParentManifold& pm = *out.parent;

    b.sum_m = pm.sum_m;
    b.multiplier_oct = Integer(2 * pm.sum_m);
    b.upper = SymbolicMultiple{*b.multiplier_oct, Constant::VOct}.value();
    b.upper_method = UpperMethod::OrthUpper;
    if (!pm.alternating) {
        b.conditional = true;
        b.notes.push_back("parent horizontals do not alternate (a family has an empty expansion); "
                          "octahedral count taken from the rod-count formula");
    }

    Integer C = -1;
    for (const auto& s : pm.slopes) {
        const Integer a = abs_int(s.ell);
        if (C < 0 || a < C)
            C = a;
    }
    if (C >= 0)
        b.C = C;

    if (pm.alternating && C >= 6) {
        const TwoPiCheck gate = two_pi_check(pm.slopes);
        if (!gate.exceeds)
            throw Error(ErrorCode::Invariant, "C >= 6 but some slope is not longer than 2*pi");
        b.lower = filling_factor(C) * b.upper;
        b.lower_method = LowerMethod::OrthLower;
    } else if (auto lo = general_lower(stacked.rod_count())) {
        if (C >= 0 && C < 6)
            b.notes.push_back("C = " + C.str() + " < 6: filling lower bound inapplicable");
        b.lower = lo->value();
        b.lower_method = LowerMethod::GeneralLower;
        b.lower_multiplier_tet = lo->multiplier;
    }
    b.applicable = true;
    detail::check_sandwich(b);
    return out;
}

inline VolumeBounds orthogonal_bounds(const StackedConfig& stacked, const std::vector<ContinuedFraction>& cf_choice)
{
    return orthogonal_analysis(stacked, cf_choice).bounds;
}

/// Stacked configuration with every (p,q) replaced by (q,p).
inline StackedConfig swap_xy(const StackedConfig& s)
{
    StackedConfig t = s;
    for (auto& h : t.horizontal)
        h.pq = PrimitiveVector(IntVector{h.pq[1], h.pq[0]});
    return t;
}

/// Orthogonal bounds under the default expansion policy, also trying the
/// configuration with x and y exchanged and keeping it only if it is shorter.
inline OrthogonalResult orthogonal_analysis(const StackedConfig& stacked)
{
    auto choose = [](const StackedConfig& s) {
        std::vector<ContinuedFraction> cfs;
        for (const auto& h : s.horizontal)
            cfs.push_back(preferred_cf(h.slope()));
        return cfs;
    };
    OrthogonalResult direct = orthogonal_analysis(stacked, choose(stacked));
    if (!direct.parent)
        return direct;
    const StackedConfig sw = swap_xy(stacked);
    OrthogonalResult swapped = orthogonal_analysis(sw, choose(sw));
    if (swapped.parent && swapped.parent->sum_m < direct.parent->sum_m) {
        swapped.swapped = true;
        swapped.bounds.notes.push_back("expansions taken after exchanging x and y");
        return swapped;
    }
    return direct;
}

/// Tightest combination of two bound sets.
inline VolumeBounds combine(const VolumeBounds& a, const VolumeBounds& b)
{
    VolumeBounds out = a;
    if (b.lower_method != LowerMethod::None && (a.lower_method == LowerMethod::None || b.lower > a.lower)) {
        out.lower = b.lower;
        out.lower_method = b.lower_method;
        out.lower_multiplier_tet = b.lower_multiplier_tet;
    }
    if (b.upper_method != UpperMethod::None && (a.upper_method == UpperMethod::None || b.upper < a.upper)) {
        out.upper = b.upper;
        out.upper_method = b.upper_method;
        out.chosen_rod = b.chosen_rod;
    }
    if (!out.multiplier_tet)
        out.multiplier_tet = b.multiplier_tet;
    if (!out.multiplier_oct)
        out.multiplier_oct = b.multiplier_oct;
    if (!out.C)
        out.C = b.C;
    if (!out.sum_m)
        out.sum_m = b.sum_m;
    out.applicable = a.applicable || b.applicable;
    out.conditional = a.conditional && b.conditional;
    out.notes.insert(out.notes.end(), b.notes.begin(), b.notes.end());
    detail::check_sandwich(out);
    return out;
}

} // namespace rodvol
