#pragma once

// Nested annular Dehn filling, tracked through direction vectors and
// surgery coefficients only, and the standard parent manifold it implies.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "contfrac.hpp"
#include "rodmodel.hpp"

namespace rodvol {

/// Core rod of a nested filling: (1,0,0) for an even-length expansion, (0,1,0) for odd.
inline PrimitiveVector core_direction(const ContinuedFraction& cf)
{
    return cf.length() % 2 == 0 ? PrimitiveVector{1, 0, 0} : PrimitiveVector{0, 1, 0};
}

struct NestedFillingSpec {
    ContinuedFraction cf;
    PrimitiveVector core;

    explicit NestedFillingSpec(ContinuedFraction c) : cf(std::move(c)), core(core_direction(cf)) {}
};

/// Direction of the core rod after each annular filling, c_m first.
/// The filling with c_j shears x by c_j*y when j is odd and y by c_j*x when j
/// is even. Vectors keep their signs; the last one is +-(p, q, 0).
inline std::vector<IntVector> nested_trace(const ContinuedFraction& cf)
{
    const std::size_t m = cf.length();
    Integer x = m % 2 == 0 ? 1 : 0;
    Integer y = m % 2 == 0 ? 0 : 1;
    std::vector<IntVector> trace;
    trace.reserve(m + 1);
    trace.push_back(IntVector{x, y, 0});
    for (std::size_t j = m; j >= 1; --j) {
        const Integer& c = cf[j - 1];
        if (j % 2 == 1)
            x += c * y;
        else
            y += c * x;
        trace.push_back(IntVector{x, y, 0});
    }
    return trace;
}

/// Filling slope 1/ell on one filling rod of the parent manifold.
/// index 1 is the merged outermost rod above the family's sandwich; inner
/// rods carry index j >= 2 and side +1 (R_j^+) or -1 (R_j^-).
struct FillingSlope {
    std::size_t family = 0; // 1-based horizontal rod
    std::size_t index = 0;
    int side = 0;
    Integer ell;

    bool outermost() const noexcept { return index == 1; }
    bool meridional() const noexcept { return ell == 0; }

    friend bool operator==(const FillingSlope&, const FillingSlope&) = default;
};

/// Slopes for cyclically ordered families. Inner pair j of family i gets
/// +-1/c_ij; the outermost rods of neighbouring sandwiches merge into one rod
/// with slope 1/(c_i1 - c_(i-1)1), indices taken cyclically. Families with an
/// empty expansion have no filling rods and are skipped by the merge.
inline std::vector<FillingSlope> compose_slopes(const std::vector<ContinuedFraction>& cfs)
{
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < cfs.size(); ++i)
        if (!cfs[i].empty())
            active.push_back(i);

    std::vector<FillingSlope> slopes;
    for (std::size_t a = 0; a < active.size(); ++a) {
        const std::size_t i = active[a];
        const std::size_t above = active[(a + active.size() - 1) % active.size()];
        slopes.push_back(FillingSlope{i + 1, 1, 0, cfs[i][0] - cfs[above][0]});
        for (std::size_t j = 2; j <= cfs[i].length(); ++j) {
            slopes.push_back(FillingSlope{i + 1, j, +1, cfs[i][j - 1]});
            slopes.push_back(FillingSlope{i + 1, j, -1, -cfs[i][j - 1]});
        }
    }
    return slopes;
}

/// Length of slope 1/ell on a filling-rod cusp whose meridian has length 2
/// and longitude length 1.
inline double slope_length(const Integer& ell)
{
    const double l = static_cast<double>(ell);
    return std::sqrt(l * l + 4.0);
}

inline double slope_length(long long ell) { return slope_length(Integer(ell)); }

struct TwoPiCheck {
    bool exceeds = true;
    double min_length = std::numeric_limits<double>::infinity();
};

/// Whether every slope is longer than 2*pi. Meridional slopes make the check inapplicable.
inline TwoPiCheck two_pi_check(const std::vector<FillingSlope>& slopes)
{
    TwoPiCheck out;
    for (const auto& s : slopes) {
        if (s.meridional())
            throw Error(ErrorCode::Precondition,
                        "meridional slope on family " + std::to_string(s.family) + "; 2*pi check inapplicable");
        out.min_length = std::min(out.min_length, slope_length(s.ell));
    }
    out.exceeds = out.min_length > 2.0 * std::numbers::pi;
    return out;
}

struct ParentManifold {
    std::size_t E = 0; // (1,0,0) core rods: families with even length
    std::size_t O = 0; // (0,1,0) core rods: families with odd length
    std::size_t filling_rod_count = 0;
    std::size_t octahedron_count = 0;
    std::vector<FillingSlope> slopes;
    Integer volume_units; // volume = volume_units * v_oct
    std::vector<ContinuedFraction> cfs;
    std::size_t sum_m = 0;
    /// False when some family has an empty expansion: its (1,0,0) core rod then
    /// sits next to (1,0,0) outermost filling rods and the horizontals of the
    /// parent no longer alternate, so the octahedral count is unverified.
    bool alternating = true;
};

/// Standard parent of a stacked configuration with one vertical rod, given
/// one expansion per horizontal rod (top to bottom).
inline ParentManifold parent_manifold(const StackedConfig& stacked, const std::vector<ContinuedFraction>& cf_choice)
{
    if (stacked.vertical.size() != 1)
        throw Error(ErrorCode::Precondition, "parent construction needs exactly one vertical rod");
    if (cf_choice.size() != stacked.horizontal.size())
        throw Error(ErrorCode::Mismatch, "need one continued fraction per horizontal rod");
    for (std::size_t i = 0; i < cf_choice.size(); ++i)
        if (eval_cf(cf_choice[i]) != stacked.horizontal[i].slope())
            throw Error(ErrorCode::Mismatch, cf_choice[i].str() + " does not evaluate to " +
                                                 stacked.horizontal[i].slope().str());
    const GeometryType g = classify(stacked);
    if (!g.is(GeometryType::Kind::Hyperbolic))
        throw Error(ErrorCode::NotHyperbolic, std::string(to_string(g.kind)) + ": " + g.reason);

    ParentManifold pm;
    pm.cfs = cf_choice;
    for (const auto& cf : cf_choice) {
        (cf.length() % 2 == 0 ? pm.E : pm.O) += 1;
        pm.sum_m += cf.length();
        if (cf.empty())
            pm.alternating = false;
    }
    pm.filling_rod_count = 2 * pm.sum_m;
    pm.octahedron_count = 2 * pm.sum_m;
    pm.volume_units = pm.octahedron_count;
    pm.slopes = compose_slopes(cf_choice);
    return pm;
}

} // namespace rodvol
