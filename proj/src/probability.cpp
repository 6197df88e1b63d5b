#include "betafreq/probability.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "betafreq/field.hpp"

namespace betafreq {

namespace {

Rat geometric_sum(const Rat& first, const Rat& ratio) {
    Rat s = first / (Rat(1) - ratio);
    s.canonicalize();
    return s;
}

// Expected steps to absorption for the run-of-n-zeros chain: from a state
// with z zeros pending, E_z = 1 + (E_0 + E_{z+1})/2 and E_n = 0. Solved by
// expressing E_z = a_z + b_z E_0 and closing the loop at z = 0.
std::vector<Rat> completion_expectations(int n) {
    std::vector<Rat> a(static_cast<size_t>(n) + 1, Rat(0));
    std::vector<Rat> b(static_cast<size_t>(n) + 1, Rat(0));
    for (int z = n - 1; z >= 0; --z) {
        a[z] = Rat(1) + a[z + 1] / 2;
        b[z] = rat(1, 2) + b[z + 1] / 2;
        a[z].canonicalize();
        b[z].canonicalize();
    }
    Rat e0 = a[0] / (Rat(1) - b[0]);
    e0.canonicalize();
    std::vector<Rat> e(static_cast<size_t>(n) + 1, Rat(0));
    for (int z = 0; z <= n; ++z) {
        e[z] = a[z] + b[z] * e0;
        e[z].canonicalize();
    }
    return e;
}

// ---------------------------------------------------------------------------
// Future cylinders: exact value-interval digit emission.
//
// The value of every extension of a prefix w lies in
// [value(w), value(w) + beta^-|w| / (beta - 1)], the upper endpoint being
// attained only by the all-ones tail. The (t+1)-st greedy digit is 1 for the
// whole cylinder once the interval lies at or above the running threshold
// E_t + beta^-(t+1), and 0 once it lies at or below it; the boundary fiber
// {value = threshold} carries no fair-coin mass, so folding it into the
// zero side is sound for probabilities.
// ---------------------------------------------------------------------------

struct FutureEngine {
    const BetaParams& params;
    int arity;
    int depth;
    const DigitEvent* event;  // nullptr => collect per-class masses

    detail::RootEnclosure enc;
    FieldElement tail_factor;             // 1/(beta-1)
    std::vector<FieldElement> pow_binv;   // beta^-d

    std::vector<Rat> class_mass;
    Rat sure_true = 0, sure_false = 0, undecided = 0;

    FutureEngine(const BetaParams& p, int k, int d, const DigitEvent* ev)
        : params(p), arity(k), depth(d), event(ev), enc(p),
          tail_factor(FieldElement::one(p) /
                      (FieldElement::beta(p) - FieldElement::one(p))) {
        const FieldElement binv = FieldElement::beta_inverse(p);
        pow_binv.reserve(static_cast<size_t>(depth) + 2);
        pow_binv.push_back(FieldElement::one(p));
        for (int i = 1; i <= depth + 1; ++i) pow_binv.push_back(pow_binv.back() * binv);
        class_mass.assign(static_cast<size_t>(1) << arity, Rat(0));
    }

    bool ge(const FieldElement& a, const FieldElement& b) {
        return detail::compare_with(enc, a, b) != Ordering::less;
    }
    bool le(const FieldElement& a, const FieldElement& b) {
        return detail::compare_with(enc, a, b) != Ordering::greater;
    }

    // True if the event value is the same for every completion of the t
    // emitted digits; digits are packed msb-first into `digits`.
    bool event_constant(std::uint32_t digits, int t, bool& value) const {
        std::vector<Bit> buf(static_cast<size_t>(arity));
        bool first = true;
        for (std::uint32_t fill = 0; fill < (1u << (arity - t)); ++fill) {
            for (int i = 0; i < t; ++i)
                buf[static_cast<size_t>(i)] = (digits >> (arity - 1 - i)) & 1u;
            for (int i = t; i < arity; ++i)
                buf[static_cast<size_t>(i)] = (fill >> (arity - 1 - i)) & 1u;
            const bool v = event->pred(buf);
            if (first) {
                value = v;
                first = false;
            } else if (v != value) {
                return false;
            }
        }
        return true;
    }

    void visit(FieldElement lo, int d, int t, FieldElement emitted_value,
               std::uint32_t digits) {
        while (t < arity) {
            const FieldElement theta = emitted_value + pow_binv[static_cast<size_t>(t) + 1];
            if (ge(lo, theta)) {
                digits |= 1u << (arity - 1 - t);
                emitted_value = theta;
                ++t;
                continue;
            }
            const FieldElement hi = lo + pow_binv[static_cast<size_t>(d)] * tail_factor;
            if (le(hi, theta)) {
                ++t;
                continue;
            }
            break;
        }
        if (event) {
            bool v = false;
            if (event_constant(digits, t, v)) {
                (v ? sure_true : sure_false) += pow2(-d);
                return;
            }
        } else if (t == arity) {
            class_mass[digits] += pow2(-d);
            return;
        }
        if (d == depth) {
            undecided += pow2(-d);
            return;
        }
        visit(lo, d + 1, t, emitted_value, digits);
        visit(lo + pow_binv[static_cast<size_t>(d) + 1], d + 1, t, emitted_value, digits);
    }

    void run() { visit(FieldElement::zero(params), 0, 0, FieldElement::zero(params), 0); }
};

// ---------------------------------------------------------------------------
// Past cylinders. The window grows leftward; its normalization V is stable
// behind the leading 1-run under any left extension (carries entering from
// the left are absorbed while consuming that run and never reach past the
// zero that ends it), so once |V| minus the leading-run length covers the
// query the digits are final.
// ---------------------------------------------------------------------------

struct PastEngine {
    const BetaParams& params;
    int arity;
    int depth;
    const DigitEvent* event;

    std::vector<Rat> class_mass;
    Rat sure_true = 0, sure_false = 0, undecided = 0;

    PastEngine(const BetaParams& p, int k, int d, const DigitEvent* ev)
        : params(p), arity(k), depth(d), event(ev) {
        class_mass.assign(static_cast<size_t>(1) << arity, Rat(0));
    }

    bool event_constant(const BitWord& stable_tail, bool& value) const {
        const int known = std::min<int>(static_cast<int>(stable_tail.size()), arity);
        const int unknown = arity - known;
        std::vector<Bit> buf(static_cast<size_t>(arity));
        for (int i = 0; i < known; ++i)
            buf[static_cast<size_t>(arity - 1 - i)] = stable_tail[stable_tail.size() - 1 -
                                                                  static_cast<size_t>(i)];
        bool first = true;
        for (std::uint32_t fill = 0; fill < (1u << unknown); ++fill) {
            for (int i = 0; i < unknown; ++i)
                buf[static_cast<size_t>(i)] = (fill >> i) & 1u;
            const bool v = event->pred(buf);
            if (first) {
                value = v;
                first = false;
            } else if (v != value) {
                return false;
            }
        }
        return true;
    }

    // rev[0] holds coordinate 0, rev[i] coordinate -i.
    void visit(BitWord& rev, int d) {
        BitWord window(rev.rbegin(), rev.rend());
        const BitWord v = normalize(window, params);
        std::size_t lead = 0;
        while (lead < v.size() && v[lead]) ++lead;
        const std::size_t stable = v.size() - lead;

        BitWord stable_tail(v.end() - static_cast<std::ptrdiff_t>(stable), v.end());
        if (event) {
            bool val = false;
            if (event_constant(stable_tail, val)) {
                (val ? sure_true : sure_false) += pow2(-d);
                return;
            }
        } else if (stable >= static_cast<std::size_t>(arity)) {
            std::uint32_t digits = 0;
            for (int i = 0; i < arity; ++i)
                digits |= static_cast<std::uint32_t>(v[v.size() - 1 - static_cast<size_t>(i)])
                          << i;
            class_mass[digits] += pow2(-d);
            return;
        }
        if (d == depth) {
            undecided += pow2(-d);
            return;
        }
        for (Bit b : {Bit(0), Bit(1)}) {
            rev.push_back(b);
            visit(rev, d + 1);
            rev.pop_back();
        }
    }

    void run() {
        BitWord rev;
        visit(rev, 0);
    }
};

ProbabilityBracket bracket_from(Rat sure_true, Rat undecided, int depth, std::string name) {
    ProbabilityBracket b;
    b.lower = std::move(sure_true);
    b.lower.canonicalize();
    b.undecided = std::move(undecided);
    b.undecided.canonicalize();
    b.upper = b.lower + b.undecided;
    b.upper.canonicalize();
    b.depth = depth;
    b.event = std::move(name);
    return b;
}

std::string join_name(const std::vector<std::pair<int, Bit>>& constraints, bool future) {
    std::ostringstream os;
    bool sep = false;
    for (const auto& [off, bit] : constraints) {
        if (sep) os << ",";
        os << "y" << off << "=" << int(bit);
        sep = true;
    }
    return future ? os.str() : os.str();
}

}  // namespace

DigitEvent future_event(const std::vector<std::pair<int, Bit>>& constraints) {
    if (constraints.empty()) throw std::invalid_argument("event needs a constraint");
    int k = 0;
    for (const auto& [off, bit] : constraints) {
        if (off < 1) throw std::invalid_argument("future offsets are 1-based");
        if (bit > 1) throw std::invalid_argument("digits are 0 or 1");
        k = std::max(k, off);
    }
    DigitEvent ev;
    ev.arity = k;
    ev.name = join_name(constraints, true);
    auto cs = constraints;
    ev.pred = [cs](std::span<const Bit> digits) {
        for (const auto& [off, bit] : cs)
            if (digits[static_cast<size_t>(off - 1)] != bit) return false;
        return true;
    };
    return ev;
}

DigitEvent past_event(const std::vector<std::pair<int, Bit>>& constraints) {
    if (constraints.empty()) throw std::invalid_argument("event needs a constraint");
    int k = 1;
    for (const auto& [off, bit] : constraints) {
        if (off > 0) throw std::invalid_argument("past offsets are <= 0");
        if (bit > 1) throw std::invalid_argument("digits are 0 or 1");
        k = std::max(k, 1 - off);
    }
    DigitEvent ev;
    ev.arity = k;
    ev.name = join_name(constraints, false);
    auto cs = constraints;
    ev.pred = [cs, k](std::span<const Bit> digits) {
        // digits[k-1] is y_0, digits[k-1+off] is y_off for off <= 0.
        for (const auto& [off, bit] : cs)
            if (digits[static_cast<size_t>(k - 1 + off)] != bit) return false;
        return true;
    };
    return ev;
}

ProbabilityBracket prob_future_digit(const DigitEvent& event, int depth,
                                     const BetaParams& params) {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    if (depth < event.arity) throw std::invalid_argument("depth must cover the event arity");
    if (event.arity > 20) throw std::invalid_argument("event arity above 20 not supported");
    FutureEngine eng(params, event.arity, depth, &event);
    eng.run();
    return bracket_from(std::move(eng.sure_true), std::move(eng.undecided), depth, event.name);
}

ProbabilityBracket prob_past_digit(const DigitEvent& event, int depth,
                                   const BetaParams& params) {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    if (depth < event.arity) throw std::invalid_argument("depth must cover the event arity");
    if (event.arity > 20) throw std::invalid_argument("event arity above 20 not supported");
    PastEngine eng(params, event.arity, depth, &event);
    eng.run();
    return bracket_from(std::move(eng.sure_true), std::move(eng.undecided), depth, event.name);
}

CenterDigitReport prob_center_digit(int depth, const BetaParams& params) {
    if (params.order() != 2)
        throw std::invalid_argument("center digit rule is derived for order 2 only");
    if (depth < 2) throw std::invalid_argument("depth must be >= 2");

    PastEngine past(params, 2, depth, nullptr);
    past.run();
    FutureEngine fut(params, 2, depth, nullptr);
    fut.run();

    // Past classes are indexed y_{-1}*2 + y_0, future classes y_1*2 + y_2.
    const auto& p = past.class_mass;
    const auto& f = fut.class_mass;
    const Rat pu = past.undecided;
    const Rat fu = fut.undecided;

    auto set_mass = [](const std::vector<Rat>& m, std::initializer_list<int> idx) {
        Rat s = 0;
        for (int i : idx) s += m[static_cast<size_t>(i)];
        s.canonicalize();
        return s;
    };

    CenterDigitReport rep;
    {
        // The two sides are independent coordinates of the product measure,
        // so class masses multiply exactly.
        Rat sure1 = 0, sure0 = 0;
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                const Bit x0 = center_digit_rule((a >> 1) & 1, a & 1, (b >> 1) & 1, b & 1);
                const Rat m = p[static_cast<size_t>(a)] * f[static_cast<size_t>(b)];
                (x0 ? sure1 : sure0) += m;
            }
        }
        sure1.canonicalize();
        sure0.canonicalize();
        rep.x0_one = bracket_from(sure1, Rat(1) - sure1 - sure0, depth, "x0=1");
    }
    {
        // y_0 = 1 and y_1 = 0.
        const Rat a_lo = set_mass(p, {1, 3});
        const Rat b_lo = set_mass(f, {0, 1});
        rep.case_one.lower = a_lo * b_lo;
        rep.case_one.upper = (a_lo + pu) * (b_lo + fu);
        rep.case_one.lower.canonicalize();
        rep.case_one.upper.canonicalize();
        rep.case_one.undecided = rep.case_one.upper - rep.case_one.lower;
        rep.case_one.depth = depth;
        rep.case_one.event = "y0=1,y1=0";
    }
    {
        // y_{-1} = y_0 = 0 and y_1 = y_2 = 1.
        const Rat a_lo = set_mass(p, {0});
        const Rat b_lo = set_mass(f, {3});
        rep.case_two.lower = a_lo * b_lo;
        rep.case_two.upper = (a_lo + pu) * (b_lo + fu);
        rep.case_two.lower.canonicalize();
        rep.case_two.upper.canonicalize();
        rep.case_two.undecided = rep.case_two.upper - rep.case_two.lower;
        rep.case_two.depth = depth;
        rep.case_two.event = "y-1=0,y0=0,y1=1,y2=1";
    }
    return rep;
}

GoldenClosedForms golden_exact_digit_probabilities(const BetaParams& params) {
    if (params.order() != 2) throw std::invalid_argument("closed forms not available");
    GoldenClosedForms cf;
    const Rat quarter = rat(1, 4);
    // Future side: the cylinders (01)^k 1 (mass 2^-(2k+1)) force y_1 = 1 and
    // the cylinders (01)^k 00 end the matter with y_1 = 0.
    cf.p_y1_one = geometric_sum(rat(1, 2), quarter);
    // y_1 = y_2 = 1 happens exactly on the cylinders 1 (01)^k 1.
    cf.p_y1_y2_one = geometric_sum(quarter, quarter);
    // Past side: the windows 0 1^(2k+1) normalize to (10)^k 01.
    cf.p_y0_one = geometric_sum(quarter, quarter);
    // Windows 0 1^(2k) (k >= 1) and 0 1^(2k) 0 (k >= 0) both end in 00.
    cf.p_ym1_y0_zero = geometric_sum(rat(1, 8), quarter) + geometric_sum(quarter, quarter);
    cf.p_ym1_y0_zero.canonicalize();
    // Joining normalized halves flips the center digit in exactly two local
    // patterns; the sides are independent, so the probabilities multiply.
    cf.p_x0_one = cf.p_y0_one * (Rat(1) - cf.p_y1_one) +
                  cf.p_ym1_y0_zero * cf.p_y1_y2_one;
    cf.p_x0_one.canonicalize();
    return cf;
}

Rat bernoulli_digit_frequency_exact(const BetaParams& params) {
    const int n = params.order();
    // Stationary chain-length distribution is geometric with ratio 2^-n and
    // mass 2^-n at length 1; a pushed 1 adds a digit, a cascade over j chain
    // units retracts j(n-1). Summing j * 2^(-nj) gives the retraction rate.
    const Rat twon = pow2(n);
    Rat freq = (Rat(1) - Rat(n - 1) * twon / ((twon - 1) * (twon - 1))) / 2;
    freq.canonicalize();
    return freq;
}

namespace detail {

long chain_push(ChainState& s, Bit bit, int order) {
    const int n = order;
    if (bit == 0) {
        switch (s.kind) {
            case ChainState::lead:
                s = {ChainState::dangling, 0, 0};
                return 0;
            case ChainState::chain:
                s = {ChainState::dangling, s.j, 0};
                return 0;
            case ChainState::dangling:
                s = {ChainState::dangling, 0, 0};
                return 0;
        }
    } else {
        switch (s.kind) {
            case ChainState::lead:
                return 1;
            case ChainState::dangling:
                if (s.r + 1 == n - 1)
                    s = {ChainState::chain, s.j + 1, 0};
                else
                    s = {ChainState::dangling, s.j, s.r + 1};
                return 1;
            case ChainState::chain: {
                const long fired = s.j;
                s = {ChainState::dangling, 0, 0};
                return 1 - fired * (n - 1);
            }
        }
    }
    return 0;  // unreachable
}

}  // namespace detail

OmegaEnumeration enumerate_omega(const BetaParams& params, int L, int list_limit) {
    const int n = params.order();
    if (L < n) throw std::invalid_argument("truncation length must be >= order");
    OmegaEnumeration out;
    out.truncation_length = L;

    // Waiting-time DP over the pending-zero count; alive[z] counts prefixes
    // of each length with no completed 0^n run.
    std::vector<mpz_class> alive(static_cast<size_t>(n), 0);
    alive[0] = 1;
    Rat captured = 0, length_sum = 0;
    for (int len = 1; len <= L; ++len) {
        std::vector<mpz_class> next(static_cast<size_t>(n), 0);
        mpz_class completed = 0;
        for (int z = 0; z < n; ++z) {
            if (alive[static_cast<size_t>(z)] == 0) continue;
            next[0] += alive[static_cast<size_t>(z)];  // push 1
            if (z + 1 == n)
                completed += alive[static_cast<size_t>(z)];  // push 0 completes
            else
                next[static_cast<size_t>(z) + 1] += alive[static_cast<size_t>(z)];
        }
        if (completed != 0) {
            const Rat w = Rat(completed) * pow2(-len);
            captured += w;
            length_sum += Rat(len) * w;
        }
        alive = std::move(next);
    }
    captured.canonicalize();
    length_sum.canonicalize();
    out.captured_mass = captured;
    out.tail_mass = Rat(1) - captured;
    out.tail_mass.canonicalize();
    out.captured_length_sum = length_sum;
    out.expected_length = completion_expectations(n)[0];

    if (L <= list_limit) {
        // Explicit listing by depth-first search over incomplete prefixes.
        BitWord w;
        auto rec = [&](auto&& self, int zeros) -> void {
            if (static_cast<int>(w.size()) >= L) return;
            // push 0
            w.push_back(0);
            if (zeros + 1 == n)
                out.words.emplace_back(w, pow2(-static_cast<long>(w.size())));
            else
                self(self, zeros + 1);
            w.pop_back();
            // push 1
            w.push_back(1);
            self(self, 0);
            w.pop_back();
        };
        rec(rec, 0);
        std::sort(out.words.begin(), out.words.end(),
                  [](const auto& a, const auto& b) {
                      if (a.first.size() != b.first.size())
                          return a.first.size() < b.first.size();
                      return a.first < b.first;
                  });
    }
    return out;
}

OmegaFrequency omega_frequency(const BetaParams& params, int L, OmegaVariant variant) {
    const int n = params.order();
    if (L < n) throw std::invalid_argument("truncation length must be >= order");

    // The exact aggregation horizon; survivors past it are interval-bounded.
    const int horizon = L + 128 * (n - 1);

    struct Node {
        mpz_class count;
        mpz_class ones;  // sum over words of the running digit count
    };
    using Key = std::pair<detail::ChainState, int>;  // (suffix state, pending zeros)
    std::map<Key, Node> level;

    detail::ChainState seed;
    switch (variant) {
        case OmegaVariant::normalized_in_context:
            // The stream renews on a fresh separator, so the block sees a
            // preceding 0^n: its leading ones are not rewrite-exempt.
            seed = {detail::ChainState::dangling, 0, 0};
            break;
        case OmegaVariant::normalized_standalone:
        case OmegaVariant::raw_digits:
            seed = {detail::ChainState::lead, 0, 0};
            break;
    }
    level[{seed, 0}] = Node{1, 0};

    Rat cap_mass = 0, cap_len = 0, cap_ones = 0;
    Rat cap_mass_at_L = 0;
    for (int len = 1; len <= horizon; ++len) {
        std::map<Key, Node> next;
        const Rat w = pow2(-len);
        for (const auto& [key, node] : level) {
            const auto& [state, zeros] = key;
            for (Bit bit : {Bit(0), Bit(1)}) {
                detail::ChainState s = state;
                long delta = detail::chain_push(s, bit, n);
                if (variant == OmegaVariant::raw_digits) delta = bit;
                if (bit == 0 && zeros + 1 == n) {
                    // Word complete at this length.
                    const Rat cm = Rat(node.count) * w;
                    cap_mass += cm;
                    cap_len += Rat(len) * cm;
                    cap_ones += Rat(node.ones + delta * node.count) * w;
                    if (len <= L) cap_mass_at_L += cm;
                    continue;
                }
                const int z = bit ? 0 : zeros + 1;
                Node& tgt = next[{s, z}];
                tgt.count += node.count;
                tgt.ones += node.ones + delta * node.count;
            }
        }
        level = std::move(next);
    }
    cap_mass.canonicalize();
    cap_len.canonicalize();
    cap_ones.canonicalize();
    cap_mass_at_L.canonicalize();

    // Survivors: expected remaining length is exact (strong Markov over the
    // pending-zero chain); their digit counts are bracketed by [0, len - n]
    // since every completed word ends in n zeros.
    const std::vector<Rat> ez = completion_expectations(n);
    Rat alive_mass = 0, alive_len = 0;
    const Rat wh = pow2(-horizon);
    for (const auto& [key, node] : level) {
        const int z = key.second;
        const Rat m = Rat(node.count) * wh;
        alive_mass += m;
        alive_len += m * (Rat(horizon) + ez[static_cast<size_t>(z)]);
    }
    alive_mass.canonicalize();
    alive_len.canonicalize();

    OmegaFrequency out;
    out.variant = variant;
    out.truncation_length = L;
    out.captured_mass = cap_mass_at_L;
    out.expected_length = cap_len + alive_len;
    out.expected_length.canonicalize();

    Rat num_lo = cap_ones;
    Rat num_hi = cap_ones + (alive_len - Rat(n) * alive_mass);
    num_hi.canonicalize();
    out.lower = num_lo / out.expected_length;
    out.upper = num_hi / out.expected_length;
    out.lower.canonicalize();
    out.upper.canonicalize();
    return out;
}

}  // namespace betafreq
