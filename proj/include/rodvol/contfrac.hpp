#pragma once

// Finite continued fractions [c1; c2, ..., cm] over exact rationals.
// Terms after the first are nonzero and may be negative; [] is the formal 1/0.

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "intlinalg.hpp"

namespace rodvol {

/// Reduced fraction p/q with q >= 0. The only value with q = 0 is 1/0.
class Rational {
public:
    Rational() : p_(0), q_(1) {}
    Rational(long long p) : p_(p), q_(1) {} // NOLINT: implicit from integers is intended
    Rational(Integer p, Integer q) : p_(std::move(p)), q_(std::move(q)) { normalize(); }

    static Rational infinity() { return Rational(1, 0); }

    const Integer& num() const noexcept { return p_; }
    const Integer& den() const noexcept { return q_; }
    bool is_infinite() const noexcept { return q_ == 0; }
    bool is_integer() const noexcept { return q_ == 1; }

    Rational operator-() const
    {
        if (is_infinite())
            return *this;
        return Rational(-p_, q_);
    }

    friend bool operator==(const Rational&, const Rational&) = default;

    std::string str() const { return p_.str() + "/" + q_.str(); }

    double to_double() const { return static_cast<double>(p_) / static_cast<double>(q_); }

private:
    void normalize()
    {
        if (p_ == 0 && q_ == 0)
            throw Error(ErrorCode::Precondition, "0/0 is not a rational");
        if (q_ == 0) {
            p_ = 1;
            return;
        }
        if (q_ < 0) {
            p_ = -p_;
            q_ = -q_;
        }
        const Integer g = boost::multiprecision::gcd(abs_int(p_), q_);
        if (g > 1) {
            p_ /= g;
            q_ /= g;
        }
    }

    Integer p_;
    Integer q_;
};

class ContinuedFraction {
public:
    ContinuedFraction() = default;

    explicit ContinuedFraction(std::vector<Integer> terms) : terms_(std::move(terms))
    {
        for (std::size_t j = 1; j < terms_.size(); ++j)
            if (terms_[j] == 0)
                throw Error(ErrorCode::Precondition,
                            "continued fraction term " + std::to_string(j + 1) + " is zero");
    }

    ContinuedFraction(std::initializer_list<long long> terms)
        : ContinuedFraction(to_int_vector(terms))
    {
    }

    std::size_t length() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }
    const std::vector<Integer>& terms() const noexcept { return terms_; }
    const Integer& operator[](std::size_t j) const { return terms_[j]; }

    friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;

    std::string str() const
    {
        std::string s = "[";
        for (std::size_t j = 0; j < terms_.size(); ++j) {
            if (j == 1)
                s += ";";
            else if (j > 1)
                s += ",";
            s += terms_[j].str();
        }
        return s + "]";
    }

private:
    std::vector<Integer> terms_;
};

inline std::size_t cf_length(const ContinuedFraction& cf) { return cf.length(); }

/// Value via the convergent recurrence p_k = c_k p_{k-1} + p_{k-2}, seeded
/// with 1/0 and 0/1, so an intermediate zero never divides.
inline Rational eval_cf(const ContinuedFraction& cf)
{
    Integer p = 1, q = 0;         // p_{k-1}, q_{k-1}
    Integer pp = 0, qq = 1;       // p_{k-2}, q_{k-2}
    for (const auto& c : cf.terms()) {
        Integer np = c * p + pp;
        Integer nq = c * q + qq;
        pp = std::move(p);
        qq = std::move(q);
        p = std::move(np);
        q = std::move(nq);
    }
    return Rational(p, q);
}

/// Floor-based (regular) expansion; terms after the first are positive.
inline ContinuedFraction euclidean_cf(const Rational& x)
{
    if (x.is_infinite())
        return {};
    std::vector<Integer> terms;
    Integer p = x.num(), q = x.den();
    while (true) {
        Integer a = floor_div(p, q);
        Integer r = p - a * q;
        terms.push_back(a);
        if (r == 0)
            break;
        p = q;
        q = r;
    }
    // A trailing 1 folds into its predecessor; with floor steps it cannot occur.
    if (terms.size() >= 2 && terms.back() == 1) {
        terms.pop_back();
        terms.back() += 1;
    }
    return ContinuedFraction(std::move(terms));
}

/// Nearest-integer expansion. Half-integers round away from zero.
inline ContinuedFraction nicf(const Rational& x)
{
    if (x.is_infinite())
        return {};
    std::vector<Integer> terms;
    Integer p = x.num(), q = x.den();
    while (true) {
        Integer c = p >= 0 ? floor_div(2 * p + q, 2 * q) : Integer(-floor_div(-2 * p + q, 2 * q));
        Integer r = p - c * q;
        terms.push_back(c);
        if (r == 0)
            break;
        // next value is q / r
        if (r < 0) {
            p = -q;
            q = -r;
        } else {
            p = q;
            q = r;
        }
    }
    return ContinuedFraction(std::move(terms));
}

enum class SearchStatus { Found, BoundTooSmall, TooLarge };

struct MinimalCfResult {
    SearchStatus status = SearchStatus::BoundTooSmall;
    std::optional<ContinuedFraction> cf;

    bool found() const noexcept { return status == SearchStatus::Found; }
};

/// Largest Stern-Brocot path the minimal-length search will build.
inline constexpr std::size_t kMaxLadderVertices = 20000;

namespace detail {

// Vertices of the Farey ladder between 1/0 and x: 1/0, floor(x), floor(x)+1
// and every mediant on the Stern-Brocot descent to x, with the Farey edges
// among them. Vertex 0 is 1/0; the target is the last vertex.
struct Ladder {
    std::vector<std::pair<Integer, Integer>> verts; // (num, den), den >= 0
    std::vector<std::vector<std::size_t>> adj;
    std::size_t target = 0;
    bool truncated = false;

    std::size_t add(Integer a, Integer b)
    {
        verts.emplace_back(std::move(a), std::move(b));
        adj.emplace_back();
        return verts.size() - 1;
    }
    void link(std::size_t u, std::size_t v)
    {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
};

inline Ladder build_ladder(const Integer& p, const Integer& q, std::size_t max_vertices)
{
    Ladder L;
    const std::size_t inf = L.add(1, 0);
    const Integer fl = floor_div(p, q);
    std::size_t left = L.add(fl, 1);
    std::size_t right = L.add(fl + 1, 1);
    L.link(inf, left);
    L.link(inf, right);
    L.link(left, right);
    while (true) {
        if (L.verts.size() >= max_vertices) {
            L.truncated = true;
            return L;
        }
        Integer a = L.verts[left].first + L.verts[right].first;
        Integer b = L.verts[left].second + L.verts[right].second;
        // compare x = p/q with a/b (both denominators positive)
        const Integer lhs = p * b, rhs = a * q;
        const std::size_t med = L.add(std::move(a), std::move(b));
        L.link(med, left);
        L.link(med, right);
        if (lhs == rhs) {
            L.target = med;
            return L;
        }
        if (lhs < rhs)
            right = med;
        else
            left = med;
    }
}

} // namespace detail

namespace detail {

// Shortest ladder path from 1/0 to the target, read as a continued fraction
// with |c_j| <= term_bound for j >= 2 (no bound when empty) and no trailing 1.
// Breadth-first over consecutive convergent pairs.
inline std::optional<ContinuedFraction> ladder_search(const Ladder& L, const std::optional<Integer>& term_bound)
{
    struct State {
        std::size_t prev, cur;
        Integer pa, pb, ca, cb; // raw signed convergent vectors
        Integer term;           // term that produced cur
        std::size_t parent;     // index into states, npos for first step
    };
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<State> states;
    // visited key: (prev, cur, relative sign of raw vs canonical vectors)
    std::map<std::tuple<std::size_t, std::size_t, bool>, bool> seen;

    auto relsign = [&](const State& s) {
        const bool ps = (s.pb > 0) || (s.pb == 0 && s.pa > 0);
        const bool cs = (s.cb > 0) || (s.cb == 0 && s.ca > 0);
        return ps == cs;
    };
    auto unwind = [&](std::size_t idx, std::vector<Integer> tail_rev) {
        std::vector<Integer> terms = std::move(tail_rev);
        for (std::size_t i = idx; i != npos; i = states[i].parent)
            terms.push_back(states[i].term);
        std::reverse(terms.begin(), terms.end());
        return ContinuedFraction(std::move(terms));
    };

    // first step: 1/0 -> integer vertex c1 (vertices 1 and 2 are floor and floor+1)
    std::vector<std::size_t> level;
    for (std::size_t v : {std::size_t{1}, std::size_t{2}}) {
        State s{0, v, 1, 0, L.verts[v].first, 1, L.verts[v].first, npos};
        seen[{s.prev, s.cur, relsign(s)}] = true;
        states.push_back(std::move(s));
        level.push_back(states.size() - 1);
    }

    while (!level.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t si : level) {
            const State s = states[si];
            for (std::size_t w : L.adj[s.cur]) {
                if (w == s.prev || w == 0)
                    continue;
                const auto& [wa, wb] = L.verts[w];
                // find sign and term with  sign*w = prev + c*cur
                Integer c;
                Integer ra, rb;
                bool ok = false;
                for (int sg : {1, -1}) {
                    const Integer da = sg * wa - s.pa;
                    const Integer db = sg * wb - s.pb;
                    const Integer& ref = s.ca != 0 ? s.ca : s.cb;
                    const Integer& dref = s.ca != 0 ? da : db;
                    if (dref % ref != 0)
                        continue;
                    const Integer k = dref / ref;
                    if (k * s.ca == da && k * s.cb == db) {
                        c = k;
                        ra = sg * wa;
                        rb = sg * wb;
                        ok = true;
                        break;
                    }
                }
                if (!ok || c == 0 || (term_bound && abs_int(c) > *term_bound))
                    continue;
                if (w == L.target) {
                    if (c == 1)
                        continue;
                    return unwind(si, std::vector<Integer>{c});
                }
                State t{s.cur, w, s.ca, s.cb, ra, rb, c, si};
                auto key = std::make_tuple(t.prev, t.cur, relsign(t));
                if (seen.count(key))
                    continue;
                seen[key] = true;
                states.push_back(std::move(t));
                next.push_back(states.size() - 1);
            }
        }
        level = std::move(next);
    }
    return std::nullopt;
}

// Breadth-first search over tail values y = [c_j; c_{j+1}, ...], so each
// rational is expanded once. A tail of r more terms with |c| <= bound has
// numerator and denominator at most (bound + 1)^r, which limits both the
// unbounded first term and the later branching. Finds expansions of length
// <= max_len only.
enum class BoundedOutcome { Found, None, Budget };

inline std::pair<BoundedOutcome, std::optional<ContinuedFraction>>
bounded_search(const Rational& x, const Integer& bound, std::size_t max_len)
{
    constexpr std::size_t kNodeBudget = 2000000;
    struct Node {
        Integer a, b;       // y = a/b, b > 0 or y = 1/0
        Integer term;       // term that led here
        std::size_t parent; // npos for the first layer
    };
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<Node> nodes;
    std::set<std::pair<Integer, Integer>> seen;

    std::vector<Integer> reach(max_len + 1, Integer(1)); // reach[r] = (bound + 1)^r
    for (std::size_t r = 1; r <= max_len; ++r)
        reach[r] = reach[r - 1] * (bound + 1);

    auto unwind = [&](std::size_t idx, const Integer& last) {
        std::vector<Integer> terms{last};
        for (; idx != npos; idx = nodes[idx].parent)
            terms.push_back(nodes[idx].term);
        return ContinuedFraction(std::vector<Integer>(terms.rbegin(), terms.rend()));
    };
    // children of y = a/b are b/(a - c b); c ranges over the integers with
    // |a - c b| <= limit, intersected with [lo, hi]
    auto push = [&](const Integer& a, const Integer& b, const Integer& c, std::size_t parent) {
        Integer na = b, nb = a - c * b;
        if (nb < 0 || (nb == 0 && na < 0)) {
            na = -na;
            nb = -nb;
        }
        if (seen.insert({na, nb}).second)
            nodes.push_back({na, nb, c, parent});
    };
    auto expand = [&](const Integer& a, const Integer& b, const Integer& limit, const std::optional<Integer>& cap,
                      std::size_t parent) {
        if (b == 0) { // every term sends 1/0 to 0
            push(a, b, Integer(1), parent);
            return;
        }
        if (b > limit)
            return;
        Integer lo = -floor_div(limit - a, b), hi = floor_div(a + limit, b);
        if (cap) {
            lo = lo < -*cap ? Integer(-*cap) : lo;
            hi = hi > *cap ? *cap : hi;
        }
        for (Integer c = lo; c <= hi; ++c)
            if (c != 0 || !cap)
                push(a, b, c, parent);
    };

    if (max_len < 2)
        return {BoundedOutcome::None, std::nullopt};
    if (2 * reach[max_len - 1] > kNodeBudget * x.den())
        return {BoundedOutcome::Budget, std::nullopt};
    expand(x.num(), x.den(), reach[max_len - 1], std::nullopt, npos);
    std::size_t begin = 0;
    for (std::size_t depth = 1; depth < max_len; ++depth) {
        const std::size_t end = nodes.size();
        for (std::size_t i = begin; i < end; ++i) {
            const Integer a = nodes[i].a, b = nodes[i].b;
            if (b == 1 && a != 0 && a != 1 && abs_int(a) <= bound)
                return {BoundedOutcome::Found, unwind(i, a)};
        }
        if (depth + 1 == max_len)
            break;
        for (std::size_t i = begin; i < end; ++i) {
            const Integer a = nodes[i].a, b = nodes[i].b;
            expand(a, b, reach[max_len - depth - 1], bound, i);
            if (nodes.size() > kNodeBudget)
                return {BoundedOutcome::Budget, std::nullopt};
        }
        begin = end;
    }
    return {BoundedOutcome::None, std::nullopt};
}

} // namespace detail

/// Shortest expansion of x with |c_j| <= term_bound for j >= 2 (c1 unbounded)
/// and no trailing 1. Shortest paths from 1/0 to x in the Farey graph stay in
/// the ladder of x, so the ladder search is exact whenever its answer meets
/// the bound; otherwise a breadth-first search over tail values takes over.
inline MinimalCfResult minimal_cf(const Rational& x, const Integer& term_bound,
                                  std::size_t max_ladder = kMaxLadderVertices)
{
    if (term_bound < 1)
        throw Error(ErrorCode::Precondition, "term bound must be positive");
    if (x.is_infinite())
        return {SearchStatus::Found, ContinuedFraction{}};
    if (x.is_integer())
        return {SearchStatus::Found, ContinuedFraction(std::vector<Integer>{x.num()})};

    const detail::Ladder L = detail::build_ladder(x.num(), x.den(), max_ladder);
    if (L.truncated)
        return {SearchStatus::TooLarge, std::nullopt};
    const ContinuedFraction shortest = *detail::ladder_search(L, std::nullopt);
    bool within = true;
    for (std::size_t j = 1; j < shortest.length(); ++j)
        within = within && abs_int(shortest[j]) <= term_bound;
    if (within)
        return {SearchStatus::Found, shortest};
    const auto in_ladder = detail::ladder_search(L, term_bound);
    if (in_ladder && in_ladder->length() == shortest.length())
        return {SearchStatus::Found, in_ladder};

    const std::size_t cap = in_ladder ? in_ladder->length() - 1 : 3 * shortest.length() + 6;
    auto [outcome, cf] = detail::bounded_search(x, term_bound, cap);
    if (outcome == detail::BoundedOutcome::Found)
        return {SearchStatus::Found, cf};
    if (outcome == detail::BoundedOutcome::Budget)
        return {SearchStatus::TooLarge, std::nullopt};
    if (in_ladder)
        return {SearchStatus::Found, in_ladder};
    return {SearchStatus::BoundTooSmall, std::nullopt};
}

inline MinimalCfResult minimal_cf(const Rational& x)
{
    if (x.is_infinite())
        return minimal_cf(x, 1);
    return minimal_cf(x, std::max(abs_int(x.num()), x.den()));
}

/// Default expansion policy: a minimal-length expansion when the search is
/// affordable, preferring the Euclidean, then the nearest-integer expansion
/// when either is already minimal; otherwise the shorter of those two.
inline ContinuedFraction preferred_cf(const Rational& x)
{
    ContinuedFraction eu = euclidean_cf(x);
    ContinuedFraction ni = nicf(x);
    const auto best = minimal_cf(x);
    if (best.found()) {
        if (eu.length() == best.cf->length())
            return eu;
        if (ni.length() == best.cf->length())
            return ni;
        return *best.cf;
    }
    return ni.length() < eu.length() ? ni : eu;
}

// Text forms: rationals "p/q" or "p" (optional sign), cfs "[c1;c2,...,cm]", "[c1]", "[]".

namespace detail {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

inline Integer parse_integer(std::string_view s)
{
    s = trim(s);
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+'))
        digits.remove_prefix(1);
    if (digits.empty())
        throw Error(ErrorCode::Malformed, "expected an integer, got '" + std::string(s) + "'");
    for (char ch : digits)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw Error(ErrorCode::Malformed, "expected an integer, got '" + std::string(s) + "'");
    Integer v{std::string(digits)};
    return s.front() == '-' ? Integer(-v) : v;
}

} // namespace detail

inline Rational parse_rational(std::string_view text)
{
    const auto s = detail::trim(text);
    const auto slash = s.find('/');
    if (slash == std::string_view::npos)
        return Rational(detail::parse_integer(s), 1);
    Integer p = detail::parse_integer(s.substr(0, slash));
    Integer q = detail::parse_integer(s.substr(slash + 1));
    if (p == 0 && q == 0)
        throw Error(ErrorCode::Malformed, "0/0 is not a rational");
    return Rational(std::move(p), std::move(q));
}

inline ContinuedFraction parse_cf(std::string_view text)
{
    auto s = detail::trim(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw Error(ErrorCode::Malformed, "continued fraction must look like [c1;c2,...]");
    s = detail::trim(s.substr(1, s.size() - 2));
    std::vector<Integer> terms;
    if (s.empty())
        return {};
    const auto semi = s.find(';');
    terms.push_back(detail::parse_integer(s.substr(0, semi)));
    if (semi != std::string_view::npos) {
        auto rest = s.substr(semi + 1);
        while (true) {
            const auto comma = rest.find(',');
            terms.push_back(detail::parse_integer(rest.substr(0, comma)));
            if (comma == std::string_view::npos)
                break;
            rest = rest.substr(comma + 1);
        }
    }
    for (std::size_t j = 1; j < terms.size(); ++j)
        if (terms[j] == 0)
            throw Error(ErrorCode::Malformed, "terms after the first must be nonzero");
    return ContinuedFraction(std::move(terms));
}

} // namespace rodvol
