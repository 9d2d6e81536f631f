// forms.cpp
//
// Combinatorics of the coefficient system: projective equivalence classes of
// the binary forms Lam_j = a_j*alpha + b_j*beta, the rank condition (every
// direction (c,d) kills at most 7 forms), the deterministic 21-form subset,
// frame normalization to a_2 = b_1 = 0, and the multiplicity-shuffle
// schedule whose every maximal path must end at (7,7,7).

#include "qpl/forms.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace qpl::forms {

std::pair<i64, i64> canonical_pair(std::pair<i64, i64> p) {
    auto [a, b] = p;
    if (a == 0 && b == 0) throw config_error("canonical_pair: (0,0) has no direction");
    const i64 g = std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
    a /= g;
    b /= g;
    if (a < 0 || (a == 0 && b < 0)) { a = -a; b = -b; }
    return {a, b};
}

std::vector<Violation> validate_system(const QuarticPairSystem& system) {
    std::vector<Violation> out;
    if (system.s() < 1) {
        out.push_back({-1, "system has no variables", true});
        return out;
    }
    for (i64 j = 0; j < system.s(); ++j)
        if (system.a(j) == 0 && system.b(j) == 0)
            out.push_back({j, "coefficient pair is (0,0)", true});
    if (system.s() < 22)
        out.push_back({-1, "s < 22: below the intended range of the method (diagnostic only)", false});
    return out;
}

EquivalenceClassing equivalence_classes(const QuarticPairSystem& system) {
    system.require_valid();
    std::map<std::pair<i64, i64>, std::vector<i64>> fibers;
    for (i64 j = 0; j < system.s(); ++j)
        fibers[canonical_pair(system.pairs[static_cast<std::size_t>(j)])].push_back(j);

    // order classes by smallest member index
    std::vector<std::pair<i64, std::pair<i64, i64>>> order;
    for (const auto& [canon, members] : fibers) order.push_back({members.front(), canon});
    std::sort(order.begin(), order.end());

    EquivalenceClassing ec;
    for (const auto& [first, canon] : order) {
        ec.classes.push_back(fibers[canon]);
        ec.canonical.push_back(canon);
        ec.multiplicities.push_back(static_cast<i64>(fibers[canon].size()));
    }
    return ec;
}

i64 EquivalenceClassing::max_multiplicity() const {
    i64 m = 0;
    for (i64 r : multiplicities) m = std::max(m, r);
    return m;
}

RankWitness rank_condition(const QuarticPairSystem& system, i64 slack) {
    // only (c,d) proportional to (b_j, -a_j) can annihilate form j, so the
    // count annihilated by any direction is an equivalence-class size
    const auto ec = equivalence_classes(system);
    for (std::size_t k = 0; k < ec.classes.size(); ++k) {
        if (ec.multiplicities[k] > slack) {
            const auto [a, b] = ec.canonical[k];
            return {false, canonical_pair({b, -a}), ec.multiplicities[k]};
        }
    }
    return {true, {0, 0}, 0};
}

SubsetSelection select_S21(const QuarticPairSystem& system) {
    if (system.s() < 22) throw config_error("select_S21: requires s >= 22");
    if (!rank_condition(system).pass)
        throw config_error("select_S21: rank condition fails, no admissible subset");

    // classes among indices {1..s-1}
    QuarticPairSystem tail;
    tail.pairs.assign(system.pairs.begin() + 1, system.pairs.end());
    auto ec = equivalence_classes(tail);

    std::vector<std::size_t> order(ec.classes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (ec.multiplicities[x] != ec.multiplicities[y])
            return ec.multiplicities[x] > ec.multiplicities[y];
        return ec.classes[x].front() < ec.classes[y].front();
    });

    SubsetSelection sel;
    i64 need = 21;
    for (std::size_t k : order) {
        if (need == 0) break;
        const i64 take = std::min<i64>({ec.multiplicities[k], 7, need});
        for (i64 m = 0; m < take; ++m)
            sel.indices.push_back(ec.classes[k][static_cast<std::size_t>(m)] + 1);  // shift back
        sel.r.push_back(take);
        need -= take;
    }
    if (need != 0) throw config_error("select_S21: cannot assemble 21 forms under the cap");
    sel.t = static_cast<i64>(sel.r.size());
    std::sort(sel.indices.begin(), sel.indices.end());
    return sel;
}

NormalizedFrame normalize_frame(const QuarticPairSystem& system, i64 i, i64 j) {
    system.require_valid();
    const i64 s = system.s();
    if (i < 0 || j < 0 || i >= s || j >= s || i == j)
        throw config_error("normalize_frame: pivot indices out of range");
    const i64 ai = system.a(i), bi = system.b(i);
    const i64 aj = system.a(j), bj = system.b(j);
    const i64 det = ai * bj - aj * bi;
    if (det == 0)
        throw config_error("normalize_frame: singular pivot block, choose different i,j");

    NormalizedFrame out;
    out.variable_order.resize(static_cast<std::size_t>(s));
    out.variable_order[0] = i;
    out.variable_order[1] = j;
    {
        std::size_t pos = 2;
        for (i64 k = 0; k < s; ++k)
            if (k != i && k != j) out.variable_order[pos++] = k;
    }

    if (i == 0 && j == 1 && system.a(1) == 0 && system.b(0) == 0 && system.a(0) != 0 &&
        system.b(1) != 0) {
        out.system = system;
        out.row = {{{1, 0}, {0, 1}}};
        out.den = {1, 1};
        out.already_normalized = true;
        return out;
    }

    // eq1 = bj*L1 - aj*L2 vanishes at j; eq2 = -bi*L1 + ai*L2 vanishes at i
    std::array<std::array<i64, 2>, 2> raw = {{{bj, -aj}, {-bi, ai}}};
    out.system.pairs.resize(static_cast<std::size_t>(s));
    std::array<std::vector<i64>, 2> coeff;
    for (int r = 0; r < 2; ++r) {
        coeff[r].resize(static_cast<std::size_t>(s));
        for (i64 k = 0; k < s; ++k) {
            const i64 orig = out.variable_order[static_cast<std::size_t>(k)];
            coeff[r][static_cast<std::size_t>(k)] =
                raw[r][0] * system.a(orig) + raw[r][1] * system.b(orig);
        }
        // clear content, make the pivot coefficient positive
        i64 g = 0;
        for (i64 c : coeff[r]) g = std::gcd(g, c < 0 ? -c : c);
        if (g == 0) g = 1;
        const i64 pivot = coeff[r][static_cast<std::size_t>(r)];
        const i64 sign = pivot < 0 ? -1 : 1;
        for (auto& c : coeff[r]) c = sign * c / g;
        out.row[r] = {sign * raw[r][0], sign * raw[r][1]};
        out.den[r] = g;
    }
    for (i64 k = 0; k < s; ++k)
        out.system.pairs[static_cast<std::size_t>(k)] = {coeff[0][static_cast<std::size_t>(k)],
                                                         coeff[1][static_cast<std::size_t>(k)]};
    out.already_normalized = false;
    return out;
}

namespace {

struct ShuffleSearch {
    std::map<std::vector<i64>, i64> longest;  // state -> longest remaining path
    i64 states = 0;
    bool ok = true;

    i64 visit(const std::vector<i64>& v) {
        auto it = longest.find(v);
        if (it != longest.end()) return it->second;
        ++states;
        const std::size_t t = v.size();
        // a move exists iff the second-smallest part is below 7
        if (t < 2 || v[t - 2] >= 7) {
            if (!(v == std::vector<i64>{7, 7, 7})) ok = false;
            longest[v] = 0;
            return 0;
        }
        // both branches of the move produce the same multiset {u+1, v-1}
        std::vector<i64> next(v);
        next[t - 2] += 1;
        next[t - 1] -= 1;
        if (next[t - 1] == 0) next.pop_back();
        std::sort(next.begin(), next.end(), std::greater<>());
        const i64 len = 1 + visit(next);
        longest[v] = len;
        return len;
    }
};

}  // namespace

ShuffleReport shuffle_schedule(std::vector<i64> r) {
    std::sort(r.begin(), r.end(), std::greater<>());
    i64 sum = 0;
    for (i64 x : r) {
        if (x < 1 || x > 7) throw config_error("shuffle_schedule: parts must lie in [1,7]");
        sum += x;
    }
    if (sum != 21) throw config_error("shuffle_schedule: parts must sum to 21");

    ShuffleSearch search;
    const i64 len = search.visit(r);
    return {search.states, len, search.ok};
}

}  // namespace qpl::forms
