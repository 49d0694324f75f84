#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "motifstream/core.hpp"

// Detection probabilities for the clique estimators. Every function returns
// the exact probability that the estimator's detection event fires for a
// clique with the given edge arrival indexes, given the reservoir capacities
// and the substructure-counter value at detection time. The estimators add
// the inverse of these values to their running estimates.

namespace motifstream {

namespace detail {

// min(1, num/den); probability ratios are clamped so the deterministic
// (pre-eviction) regime yields exactly 1.
inline double ratio1(double num, double den) {
    if (num >= den) return 1.0;
    return num / den;
}

}  // namespace detail

// --- single-reservoir kernels ---------------------------------------------

// Probability that the five earlier edges of a 4-clique all reside in an
// M-slot edge reservoir when the closing edge arrives at step t6.
inline double prob_clique_fourest(std::uint64_t t6, std::uint64_t M) {
    if (M < 5) throw std::domain_error("prob_clique_fourest: M < 5");
    if (t6 < 6) throw std::domain_error("prob_clique_fourest: t6 < 6");
    if (t6 <= M + 1) return 1.0;
    double p = 1.0;
    for (std::uint64_t i = 0; i < 5; ++i)
        p *= static_cast<double>(M - i) / static_cast<double>(t6 - 1 - i);
    return p;
}

// Probability that the nine earlier edges of a 5-clique all reside in an
// M-slot edge reservoir when the closing edge arrives at step t10.
inline double prob_clique_fiveest(std::uint64_t t10, std::uint64_t M) {
    if (M < 9) throw std::domain_error("prob_clique_fiveest: M < 9");
    if (t10 < 10) throw std::domain_error("prob_clique_fiveest: t10 < 10");
    if (t10 <= M + 1) return 1.0;
    double p = 1.0;
    for (std::uint64_t i = 0; i < 9; ++i)
        p *= static_cast<double>(M - i) / static_cast<double>(t10 - 1 - i);
    return p;
}

// Detection probability used by the tiered 5-clique estimator: a resident
// 4-clique (observed at t_star, one of t_c seen so far) plus three edges in
// the edge reservoir at the current step. This is the estimator's own
// normalization expression, clamped per factor.
inline double prob_clique_ts5c(std::uint64_t t_now, std::uint64_t t_star, std::uint64_t t_c,
                               std::uint64_t M_e, std::uint64_t M_c) {
    if (M_e < 1 || M_c < 1) throw std::domain_error("prob_clique_ts5c: bad capacities");
    if (t_c < 1) throw std::domain_error("prob_clique_ts5c: t_c < 1");
    if (t_star >= t_now) throw std::domain_error("prob_clique_ts5c: t_star must precede t_now");
    const double fe_now = detail::ratio1(static_cast<double>(M_e), static_cast<double>(t_now));
    const double fe_star = detail::ratio1(static_cast<double>(M_e), static_cast<double>(t_star));
    double p = detail::ratio1(static_cast<double>(M_c), static_cast<double>(t_c));
    p *= fe_now * fe_now * fe_now;
    p *= fe_star * fe_star * fe_star * fe_star * fe_star;
    return p;
}

// --- tiered 4-clique kernels -----------------------------------------------

// Arrival data for a detection through one resident triangle plus two edges:
// the triangle's three edge arrivals, the two companion edge arrivals, the
// closing step t6, and the number of triangles observed before step t6.
struct Ts4c1Timestamps {
    std::uint64_t tri_a = 0, tri_b = 0, tri_c = 0;  // triangle edge arrivals
    std::uint64_t comp_a = 0, comp_b = 0;           // companion edge arrivals
    std::uint64_t t6 = 0;                           // closing edge arrival
    std::uint64_t M_e = 0;                          // edge reservoir capacity
    std::uint64_t M_tri = 0;                        // triangle reservoir capacity
    std::uint64_t tau = 0;                          // triangles observed before t6
};

struct Ts4c1Prob {
    double p = 0.0;
    int branch = 0;  // which order-dependence case produced the correction
};

namespace detail {

inline void check_distinct5(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d,
                            std::uint64_t e, std::uint64_t t6) {
    std::uint64_t v[5] = {a, b, c, d, e};
    std::sort(v, v + 5);
    for (int i = 0; i < 4; ++i)
        if (v[i] == v[i + 1]) throw std::domain_error("clique arrival indexes must be distinct");
    if (v[0] < 1) throw std::domain_error("arrival indexes start at 1");
    if (v[4] >= t6) throw std::domain_error("closing arrival must be the latest");
}

}  // namespace detail

// Exact probability that the triangle is resident in the triangle reservoir
// and both companion edges are resident in the edge reservoir at step t6.
// Decomposes as (triangle observed) * (triangle retained) * (companions
// resident given the triangle was observed); the last factor depends on how
// the companion arrivals interleave with the triangle's completion.
inline Ts4c1Prob prob_clique_ts4c1_detail(const Ts4c1Timestamps& in) {
    using detail::ratio1;
    if (in.M_e < 5) throw std::domain_error("prob_clique_ts4c1: M_e < 5");
    if (in.M_tri < 1) throw std::domain_error("prob_clique_ts4c1: M_tri < 1");
    if (in.tau < 1) throw std::domain_error("prob_clique_ts4c1: tau < 1");
    detail::check_distinct5(in.tri_a, in.tri_b, in.tri_c, in.comp_a, in.comp_b, in.t6);

    const double Me = static_cast<double>(in.M_e);
    const double t6 = static_cast<double>(in.t6);
    // Completion step of the triangle, floored at M_e+1 so the pre-eviction
    // regime contributes probability-1 factors.
    const std::uint64_t tstar_i =
        std::max(std::max({in.tri_a, in.tri_b, in.tri_c}), in.M_e + 1);
    const double ts = static_cast<double>(tstar_i);
    const std::uint64_t lo = std::min(in.comp_a, in.comp_b);
    const std::uint64_t hi = std::max(in.comp_a, in.comp_b);

    Ts4c1Prob out;
    // Triangle observed: its two earlier edges resident when its last edge
    // arrived.
    double p = ratio1(Me, ts - 1) * ratio1(Me - 1, ts - 2);
    // Triangle retained among tau observed ones.
    p *= ratio1(static_cast<double>(in.M_tri), static_cast<double>(in.tau));

    double corr;
    if (in.t6 <= in.M_e) {
        corr = 1.0;
        out.branch = 1;
    } else if (lo > tstar_i) {
        corr = ratio1(Me, t6 - 1) * ratio1(Me - 1, t6 - 2);
        out.branch = 2;
    } else if (hi > tstar_i) {
        corr = ratio1(Me - 1, t6 - 2) * ratio1(Me - 2, ts - 3) * ratio1(ts - 1, t6 - 1);
        out.branch = 3;
    } else {
        corr = ratio1(Me - 2, ts - 3) * ratio1(Me - 3, ts - 4) * ratio1(ts - 1, t6 - 1) *
               ratio1(ts - 2, t6 - 2);
        out.branch = 4;
    }
    out.p = p * corr;
    return out;
}

inline double prob_clique_ts4c1(const Ts4c1Timestamps& in) {
    return prob_clique_ts4c1_detail(in).p;
}

// Arrival data for a detection through two resident triangles sharing an
// edge: t1 is the shared edge, (t2,t4) the first triangle's private edges,
// (t3,t5) the second's, t6 the closing step.
struct Ts4c2Timestamps {
    std::uint64_t t1 = 0;
    std::uint64_t t2 = 0, t4 = 0;
    std::uint64_t t3 = 0, t5 = 0;
    std::uint64_t t6 = 0;
    std::uint64_t M_e = 0;
    std::uint64_t M_tri = 0;
    std::uint64_t tau = 0;
};

struct Ts4c2Prob {
    double p = 0.0;
    int branch = 0;
};

namespace detail {

// Shared body for the two-triangle kernel; with_retention controls whether
// the triangle-tier retention pair factor is folded in.
inline Ts4c2Prob ts4c2_core(const Ts4c2Timestamps& in, bool with_retention) {
    using detail::ratio1;
    if (in.M_e < 5) throw std::domain_error("prob_clique_ts4c2: M_e < 5");
    if (in.M_tri < 2) throw std::domain_error("prob_clique_ts4c2: M_tri < 2");
    detail::check_distinct5(in.t1, in.t2, in.t3, in.t4, in.t5, in.t6);

    const std::uint64_t t1 = in.t1;
    const std::uint64_t a2 = std::max(in.t2, in.t4), a4 = std::min(in.t2, in.t4);
    const std::uint64_t a3 = std::max(in.t3, in.t5), a5 = std::min(in.t3, in.t5);
    const std::uint64_t Mi = in.M_e;
    const double Me = static_cast<double>(Mi);

    Ts4c2Prob out;

    // Second triangle observed at its completion step max(t1, t3, t5).
    const double tc2 = static_cast<double>(std::max(t1, a3));
    double p = ratio1(Me, tc2 - 1) * ratio1(Me - 1, tc2 - 2);

    // Both triangles retained among tau observed ones.
    if (with_retention && in.tau >= 2) {
        p *= ratio1(static_cast<double>(in.M_tri), static_cast<double>(in.tau)) *
             ratio1(static_cast<double>(in.M_tri - 1), static_cast<double>(in.tau - 1));
    }

    const double d1 = static_cast<double>(t1);
    const double d2 = static_cast<double>(a2);
    const double d3 = static_cast<double>(a3);

    double corr;
    int branch;
    if (std::max(t1, a2) <= Mi) {
        corr = 1.0;
        branch = 1;
    } else if (t1 > a2) {
        // First triangle completes with the shared edge.
        if (t1 > a3) {
            corr = ratio1(Me - 2, d1 - 3) * ratio1(Me - 3, d1 - 4);
            branch = 2;
        } else if (t1 > a5) {
            corr = ratio1(Me - 1, d1 - 2) * ratio1(Me - 2, d1 - 3);
            branch = 3;
        } else {
            corr = ratio1(Me, d1 - 1) * ratio1(Me - 1, d1 - 2);
            branch = 5;
        }
    } else if (a3 > a2) {
        // Second triangle completes after the first.
        if (a2 > a5) {
            corr = ratio1(Me - 2, d2 - 3);
            branch = 4;
        } else {
            corr = ratio1(Me - 1, d2 - 2);
            branch = 6;
        }
    } else if (t1 > a3 && t1 > a4) {
        if (t1 > Mi) {
            corr = ratio1(Me - 1, d2 - 2) * ratio1(Me - 2, d1 - 3) * ratio1(d1 - 1, d2 - 1);
            branch = 7;
        } else {
            corr = ratio1(Me, d2 - 1) * ratio1(Me - 1, d2 - 2);
            branch = 8;
        }
    } else if (a3 > t1 && a3 > a4) {
        if (a3 > Mi) {
            corr = ratio1(d3 - 1, d2 - 1) * ratio1(d3 - 2, d2 - 2) * ratio1(Me - 2, d3 - 3);
            branch = 9;
        } else {
            corr = ratio1(Me, d2 - 1) * ratio1(Me - 1, d2 - 2);
            branch = 10;
        }
    } else if (t1 > a3) {
        corr = ratio1(Me, d2 - 1) * ratio1(Me - 1, d2 - 2);
        branch = 11;
    } else if (a3 > Mi) {
        corr = ratio1(Me - 1, d2 - 2) * ratio1(d3 - 1, d2 - 1);
        branch = 12;
    } else {
        corr = ratio1(Me - 1, d2 - 2) * ratio1(Me, d2 - 1);
        branch = 13;
    }

    out.p = p * corr;
    out.branch = branch;
    return out;
}

}  // namespace detail

// Exact probability that both triangles are resident in the triangle
// reservoir at step t6. Written as (second triangle observed) * (both
// retained) * (first triangle observed given the second was): the last
// factor has thirteen interleaving cases. Within each private pair the
// labels are canonicalized so t2 >= t4 and t3 >= t5; the result is invariant
// under swapping the two triangles.
inline Ts4c2Prob prob_clique_ts4c2_detail(const Ts4c2Timestamps& in) {
    return detail::ts4c2_core(in, true);
}

inline double prob_clique_ts4c2(const Ts4c2Timestamps& in) {
    return detail::ts4c2_core(in, true).p;
}

// Edge-residency part alone (observation of both triangles, no retention
// factor); the adaptive estimator multiplies in retention factors that
// depend on which tier region holds each triangle.
inline Ts4c2Prob prob_clique_ts4c2_edges_only(const Ts4c2Timestamps& in) {
    return detail::ts4c2_core(in, false);
}

}  // namespace motifstream
