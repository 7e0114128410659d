#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "quiverpoly/quiver.hpp"

namespace quiverpoly {

/// Arrow subsets are bitmasks over arrow indices (bit i = arrow i present).
using ArrowMask = std::uint64_t;
/// Vertex subsets are bitmasks over vertex ids.
using VertexSet = std::uint32_t;

inline ArrowMask full_arrow_mask(const Quiver& q) {
    if (q.arrow_count() > 63) throw CapacityError("arrow masks support at most 63 arrows");
    return (ArrowMask{1} << q.arrow_count()) - 1;
}

enum class StabilityStatus { stable, strictly_semistable, unstable };

inline const char* to_string(StabilityStatus s) {
    switch (s) {
        case StabilityStatus::stable: return "stable";
        case StabilityStatus::strictly_semistable: return "strictly-semistable";
        case StabilityStatus::unstable: return "unstable";
    }
    return "?";
}

struct StabilityWitness {
    VertexSet vertex_set = 0;
    Rational total = 0;
};

/// Verdict for one subquiver. The witness is a successor-closed vertex set of
/// minimal weight sum (ties broken by smallest bitmask value); it is absent
/// exactly when the subquiver is stable.
struct StabilityVerdict {
    StabilityStatus status = StabilityStatus::stable;
    std::optional<StabilityWitness> witness;
};

/// Precomputed tables for repeated stability queries against one (Q, theta):
/// scaled integer subset sums, per-subset leaving-arrow masks, and all
/// nonempty proper vertex subsets sorted by (sum, subset). The first closed
/// subset in that order realizes the minimum, so one scan decides a verdict.
class StabilityContext {
  public:
    StabilityContext(const Quiver& q, const Weight& theta) : quiver_(&q), theta_(&theta) {
        const int n = q.vertex_count();
        if (theta.size() != n) throw DimensionError("stability: weight size mismatch");
        if (n > 24) throw CapacityError("stability enumeration limited to 24 vertices");
        if (q.arrow_count() > 63) throw CapacityError("arrow masks support at most 63 arrows");

        // Scale theta to integers; stability verdicts are scale-invariant.
        scale_ = common_denominator(theta.values());
        std::vector<std::int64_t> scaled(static_cast<std::size_t>(n));
        BigInt magnitude = 0;
        for (int i = 0; i < n; ++i) {
            Rational entry = theta[i] * scale_;
            BigInt value = numerator(entry);
            magnitude += abs(value);
            scaled[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(value);
        }
        if (magnitude >= (BigInt(1) << 62)) {
            throw CapacityError("stability: weight magnitude too large for scaled arithmetic");
        }

        const std::uint32_t subset_count = 1u << n;
        sums_.assign(subset_count, 0);
        for (std::uint32_t v = 1; v < subset_count; ++v) {
            int low = std::countr_zero(v);
            sums_[v] = sums_[v & (v - 1)] + scaled[static_cast<std::size_t>(low)];
        }

        leaving_.assign(subset_count, 0);
        for (int i = 0; i < q.arrow_count(); ++i) {
            const Arrow& a = q.arrow(i);
            if (a.tail == a.head) continue;
            const std::uint32_t tail_bit = 1u << a.tail;
            const std::uint32_t head_bit = 1u << a.head;
            for (std::uint32_t v = 1; v + 1 < subset_count; ++v) {
                if ((v & tail_bit) && !(v & head_bit)) leaving_[v] |= ArrowMask{1} << i;
            }
        }

        order_.resize(subset_count >= 2 ? subset_count - 2 : 0);
        std::iota(order_.begin(), order_.end(), 1u);
        std::sort(order_.begin(), order_.end(), [this](std::uint32_t a, std::uint32_t b) {
            return sums_[a] != sums_[b] ? sums_[a] < sums_[b] : a < b;
        });
    }

    const Quiver& quiver() const { return *quiver_; }
    const Weight& theta() const { return *theta_; }

    Rational subset_sum(VertexSet v) const { return Rational(sums_[v]) / Rational(scale_); }

    bool is_closed(VertexSet v, ArrowMask mask) const { return (leaving_[v] & mask) == 0; }

    StabilityVerdict verdict(ArrowMask mask) const {
        for (std::uint32_t v : order_) {
            if (!is_closed(v, mask)) continue;
            StabilityVerdict out;
            if (sums_[v] < 0) {
                out.status = StabilityStatus::unstable;
            } else if (sums_[v] == 0) {
                out.status = StabilityStatus::strictly_semistable;
            } else {
                out.status = StabilityStatus::stable;
                return out;  // minimum is positive; no witness for stable
            }
            out.witness = StabilityWitness{v, subset_sum(v)};
            return out;
        }
        return StabilityVerdict{};  // no closed subsets at all: vacuously stable
    }

    /// Smallest zero-sum nonempty proper vertex subset, if any. Its absence
    /// is the fast sufficient condition for genericity.
    std::optional<VertexSet> zero_sum_subset() const {
        std::optional<VertexSet> best;
        for (std::uint32_t v = 1; v + 1 < sums_.size(); ++v) {
            if (sums_[v] == 0 && (!best || v < *best)) best = v;
        }
        return best;
    }

  private:
    const Quiver* quiver_;
    const Weight* theta_;
    BigInt scale_ = 1;
    std::vector<std::int64_t> sums_;
    std::vector<ArrowMask> leaving_;
    std::vector<std::uint32_t> order_;
};

/// All nonempty proper vertex subsets with no masked arrow leaving them.
inline std::vector<VertexSet> successor_closed_sets(const Quiver& q, ArrowMask mask) {
    if (q.vertex_count() > 24) {
        throw CapacityError("successor_closed_sets limited to 24 vertices");
    }
    if (q.arrow_count() > 63) throw CapacityError("arrow masks support at most 63 arrows");
    std::vector<ArrowMask> leaving(1u << q.vertex_count(), 0);
    for (int i = 0; i < q.arrow_count(); ++i) {
        const Arrow& a = q.arrow(i);
        if (a.tail == a.head) continue;
        for (std::uint32_t v = 1; v + 1 < leaving.size(); ++v) {
            if ((v & (1u << a.tail)) && !(v & (1u << a.head))) leaving[v] |= ArrowMask{1} << i;
        }
    }
    std::vector<VertexSet> out;
    for (std::uint32_t v = 1; v + 1 < leaving.size(); ++v) {
        if ((leaving[v] & mask) == 0) out.push_back(v);
    }
    return out;
}

inline StabilityVerdict stability(const Quiver& q, ArrowMask mask, const Weight& theta) {
    return StabilityContext(q, theta).verdict(mask);
}

enum class GenericityMode { fast, exhaustive };

struct GenericityResult {
    bool generic = false;
    GenericityMode mode = GenericityMode::fast;
    std::optional<VertexSet> zero_sum_subset;    // fast mode, when the test fails
    std::optional<ArrowMask> semistable_mask;    // exhaustive mode, when non-generic
};

inline GenericityResult is_generic_with_context(const StabilityContext& context,
                                                GenericityMode mode) {
    GenericityResult result;
    result.mode = mode;
    // No zero-sum subset means no closed set can ever have sum zero, so every
    // semistable subquiver is stable.
    std::optional<VertexSet> zero = context.zero_sum_subset();
    if (!zero) {
        result.generic = true;
        return result;
    }
    result.zero_sum_subset = zero;
    if (mode == GenericityMode::fast) {
        result.generic = false;
        return result;
    }
    const Quiver& q = context.quiver();
    if (q.arrow_count() > 24) {
        throw CapacityError("exhaustive genericity scan limited to 24 arrows");
    }
    const ArrowMask full = full_arrow_mask(q);
    for (ArrowMask mask = 0; mask <= full; ++mask) {
        if (context.verdict(mask).status == StabilityStatus::strictly_semistable) {
            result.generic = false;
            result.semistable_mask = mask;
            return result;
        }
    }
    result.generic = true;
    return result;
}

inline GenericityResult is_generic(const Quiver& q, const Weight& theta, GenericityMode mode) {
    StabilityContext context(q, theta);
    return is_generic_with_context(context, mode);
}

struct TightnessResult {
    bool tight = false;
    std::optional<int> offending_arrow;          // first arrow whose removal is non-stable
    std::optional<StabilityVerdict> offending_verdict;
};

/// Tight iff every single-arrow removal leaves a stable subquiver.
inline TightnessResult is_tight_with_context(const StabilityContext& context) {
    const Quiver& q = context.quiver();
    const ArrowMask full = full_arrow_mask(q);
    for (int i = 0; i < q.arrow_count(); ++i) {
        StabilityVerdict verdict = context.verdict(full & ~(ArrowMask{1} << i));
        if (verdict.status != StabilityStatus::stable) {
            return TightnessResult{false, i, verdict};
        }
    }
    return TightnessResult{true, std::nullopt, std::nullopt};
}

inline TightnessResult is_tight(const Quiver& q, const Weight& theta) {
    StabilityContext context(q, theta);
    return is_tight_with_context(context);
}

struct CodimCertificate {
    int codim = 0;
    std::vector<int> witness_removal;  // sorted arrow indices, |.| == codim
    bool exhaustive_below = false;     // all smaller removal sets were checked
};

namespace detail {

/// Next same-popcount mask in increasing numeric order (= colex order on the
/// underlying index sets).
inline std::uint64_t next_subset_colex(std::uint64_t mask) {
    std::uint64_t c = mask & (~mask + 1);
    std::uint64_t r = mask + c;
    return (((r ^ mask) >> 2) / c) | r;
}

}  // namespace detail

/// Minimal number of arrows whose removal yields an unstable subquiver,
/// searched breadth-first over removal sizes with colex enumeration inside
/// each size. Equals the codimension of the unstable locus, since that locus
/// is the union of the coordinate subspaces of unstable supports.
inline CodimCertificate unstable_codim_with_context(const StabilityContext& context,
                                                    std::uint64_t max_subsets = 50000000) {
    const Quiver& q = context.quiver();
    if (q.arrow_count() == 0 || context.theta().is_zero()) {
        throw StructureError("unstable_codim: no removal can be unstable (is theta zero?)");
    }
    const int m = q.arrow_count();
    const ArrowMask full = full_arrow_mask(q);
    std::uint64_t checked = 0;
    for (int size = 1; size <= m; ++size) {
        ArrowMask removal = (ArrowMask{1} << size) - 1;
        for (;;) {
            if (++checked > max_subsets) {
                throw CapacityError("unstable_codim: removal-set budget exhausted at size " +
                                    std::to_string(size));
            }
            if (context.verdict(full & ~removal).status == StabilityStatus::unstable) {
                CodimCertificate certificate;
                certificate.codim = size;
                certificate.exhaustive_below = true;
                for (int i = 0; i < m; ++i) {
                    if (removal >> i & 1) certificate.witness_removal.push_back(i);
                }
                return certificate;
            }
            ArrowMask next = detail::next_subset_colex(removal);
            if (next > full) break;
            removal = next;
        }
    }
    // The empty-arrow subquiver is unstable for every nonzero theta, so the
    // loop must have returned by size == m.
    throw StructureError("unstable_codim: exhausted all removals without an unstable subquiver");
}

inline CodimCertificate unstable_codim(const Quiver& q, const Weight& theta,
                                       std::uint64_t max_subsets = 50000000) {
    StabilityContext context(q, theta);
    return unstable_codim_with_context(context, max_subsets);
}

/// Partition of the arrows relative to a vertex set V: inside V, inside the
/// complement, entering V, and leaving V.
struct ArrowPartition {
    std::vector<int> within;    // A1: tail and head in V
    std::vector<int> outside;   // A2: tail and head in the complement
    std::vector<int> entering;  // A3: tail outside, head in V
    std::vector<int> leaving;   // A4: tail in V, head outside
};

inline ArrowPartition arrow_partition(const Quiver& q, VertexSet v) {
    ArrowPartition partition;
    for (int i = 0; i < q.arrow_count(); ++i) {
        const Arrow& a = q.arrow(i);
        bool tail_in = v >> a.tail & 1;
        bool head_in = v >> a.head & 1;
        if (tail_in && head_in) partition.within.push_back(i);
        else if (!tail_in && !head_in) partition.outside.push_back(i);
        else if (!tail_in) partition.entering.push_back(i);
        else partition.leaving.push_back(i);
    }
    return partition;
}

/// |A4|: the number of arrows leaving V. This is the computable quantity in
/// the edge-connectivity bound chain.
inline int a4_size(const Quiver& q, VertexSet v) {
    return static_cast<int>(arrow_partition(q, v).leaving.size());
}

struct PerturbOptions {
    int max_denominator_steps = 40;       // denominators 2n+1, 2n+3, ...
    std::uint64_t max_candidates = 5000000;
};

namespace detail {

/// Enumerate integer vectors c with sum 0 and |c|_1 == weight in a fixed
/// deterministic order (entry values tried as 0, 1, -1, 2, -2, ...).
/// Returns false when the visitor stops the enumeration.
template <typename Visitor>
bool enumerate_balanced_vectors(int length, int weight, Visitor&& visit) {
    std::vector<int> entries(static_cast<std::size_t>(length), 0);
    // Recursive descent with budget pruning.
    auto recurse = [&](auto&& self, int position, int budget, int running_sum) -> bool {
        if (position == length) {
            if (budget == 0 && running_sum == 0) return visit(entries);
            return true;
        }
        for (int magnitude = 0; magnitude <= budget; ++magnitude) {
            for (int value : magnitude == 0 ? std::vector<int>{0} : std::vector<int>{magnitude, -magnitude}) {
                // The remaining entries must be able to cancel the sum.
                if (std::abs(running_sum + value) > budget - magnitude) continue;
                entries[static_cast<std::size_t>(position)] = value;
                if (!self(self, position + 1, budget - magnitude, running_sum + value)) return false;
            }
        }
        entries[static_cast<std::size_t>(position)] = 0;
        return true;
    };
    return recurse(recurse, 0, weight, 0);
}

}  // namespace detail

/// Deterministic search for a generic weight within L1 distance 1 of `base`:
/// candidates base + c/N with integer c summing to zero, |c|_1 < N, and N
/// running through 2|Q0|+1, 2|Q0|+3, ... Returns `base` itself when it is
/// already generic (exhaustive check).
inline Weight perturb_to_generic(const Quiver& q, const Weight& base,
                                 PerturbOptions options = {}) {
    require_connected_acyclic(q, "perturb_to_generic");
    {
        StabilityContext context(q, base);
        if (is_generic_with_context(context, GenericityMode::exhaustive).generic) return base;
    }
    const int n = q.vertex_count();
    std::uint64_t candidates = 0;
    for (int step = 0; step < options.max_denominator_steps; ++step) {
        const int denominator = 2 * n + 1 + 2 * step;
        std::optional<Weight> found;
        for (int weight = 2; weight < denominator && !found; weight += 2) {
            bool keep_going = detail::enumerate_balanced_vectors(n, weight, [&](const std::vector<int>& c) {
                if (++candidates > options.max_candidates) return false;
                std::vector<Rational> values(base.values());
                for (int i = 0; i < n; ++i) {
                    values[static_cast<std::size_t>(i)] += Rational(c[static_cast<std::size_t>(i)], denominator);
                }
                Weight candidate(std::move(values));
                StabilityContext context(q, candidate);
                if (is_generic_with_context(context, GenericityMode::exhaustive).generic) {
                    found = std::move(candidate);
                    return false;
                }
                return true;
            });
            if (!keep_going && !found) {
                throw SearchError("perturb_to_generic: candidate budget exhausted after " +
                                  std::to_string(candidates) + " candidates");
            }
        }
        if (found) return *found;
    }
    throw SearchError("perturb_to_generic: no generic weight found with denominators up to " +
                      std::to_string(2 * n + 1 + 2 * (options.max_denominator_steps - 1)));
}

}  // namespace quiverpoly
