// degeneration.cpp — scale classification, clustering, and bubble-tree
// assembly for degenerating monopole configurations.

#include "monopole/degeneration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace monopole {

namespace {

constexpr double kShrinkFactor = 0.5;  // per-step contraction for a collision
constexpr double kGrowStep = 0.45;     // per-step stride for an escape
constexpr double kGrowTotal = 1.0;     // total gain demanded of an escape
constexpr double kStableWindow = 0.25; // tolerance band for a stable distance

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::string point_label(int i) { return "points[" + std::to_string(i) + "]"; }

std::string pair_label(int a, int b) {
    return "pair (" + std::to_string(a) + "," + std::to_string(b) + ")";
}

// Groups `items` (point indices) into components under `uf`, each component
// sorted, components ordered by smallest member.
std::vector<std::vector<int>> components_of(UnionFind& uf,
                                            const std::vector<int>& items) {
    std::vector<std::vector<int>> comps;
    std::vector<int> roots;
    for (int i : items) {
        const int r = uf.find(i);
        auto it = std::find(roots.begin(), roots.end(), r);
        if (it == roots.end()) {
            roots.push_back(r);
            comps.push_back({i});
        } else {
            comps[std::size_t(it - roots.begin())].push_back(i);
        }
    }
    for (auto& c : comps) std::sort(c.begin(), c.end());
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return comps;
}

long long charge_of(const MonopoleConfig& cfg, const std::vector<int>& idx) {
    long long q = 0;
    for (int i : idx) q += cfg.points[std::size_t(i)].charge;
    return q;
}

// -----------------------------------------------------------------------
// recursive bubble construction
// -----------------------------------------------------------------------

// Builds the ALE bubble for a set of points known to collide as one cluster.
// `dist(j, a, b)` returns the distance history; the sub-scale structure comes
// from ratios against the cluster diameter per sample.
struct ClusterAnalyzer {
    const std::vector<MonopoleConfig>& samples;
    std::vector<std::size_t> last3;  // indices of the last three samples

    double dist(std::size_t j, int a, int b) const {
        return dist_h(samples[j].points[std::size_t(a)].pos,
                      samples[j].points[std::size_t(b)].pos);
    }

    // Sub-collision components of `members` under the ratio classification.
    // Returns components ordered by smallest index.
    std::vector<std::vector<int>> sub_components(
        const std::vector<int>& members) const {
        // Cluster diameter per retained sample.
        std::vector<double> diam(last3.size(), 0.0);
        for (std::size_t t = 0; t < last3.size(); ++t) {
            for (std::size_t u = 0; u < members.size(); ++u)
                for (std::size_t v = u + 1; v < members.size(); ++v)
                    diam[t] = std::max(diam[t],
                                       dist(last3[t], members[u], members[v]));
            if (!(diam[t] > 0.0))
                throw IndeterminateScaleError(
                    "cluster of " + point_label(members.front()) +
                    " has zero diameter; points coincide");
        }
        UnionFind uf(int(samples[0].points.size()));
        for (std::size_t u = 0; u < members.size(); ++u) {
            for (std::size_t v = u + 1; v < members.size(); ++v) {
                std::vector<double> ratios(last3.size());
                for (std::size_t t = 0; t < last3.size(); ++t)
                    ratios[t] = dist(last3[t], members[u], members[v]) / diam[t];
                const PairClass pc = classify_pair(
                    ratios, "rescaled " + pair_label(members[u], members[v]));
                if (pc == PairClass::Shrink) uf.unite(members[u], members[v]);
                else if (pc == PairClass::Grow)
                    throw IndeterminateScaleError(
                        "rescaled " + pair_label(members[u], members[v]) +
                        " grows beyond the cluster diameter");
            }
        }
        return components_of(uf, members);
    }

    // ALE bubble for one colliding cluster (>= 2 points).
    BubbleNode instanton_node(const std::vector<int>& members) const {
        const auto comps = sub_components(members);
        BubbleNode node;
        for (const auto& c : comps)
            node.multiplicities.push_back(charge_of(samples[0], c));
        std::sort(node.multiplicities.begin(), node.multiplicities.end());

        const bool unit_pair = node.multiplicities.size() == 2 &&
                               node.multiplicities[0] == 1 &&
                               node.multiplicities[1] == 1;
        node.kind = unit_pair ? NodeKind::EguchiHanson : NodeKind::GibbonsHawking;
        node.budget = unit_pair ? budget_eguchi_hanson()
                                : budget_gibbons_hawking(node.multiplicities);

        for (const auto& c : comps) {
            if (c.size() < 2) continue;
            BubbleNode neck;
            neck.kind = NodeKind::Neck;
            neck.order = charge_of(samples[0], c);
            neck.multiplicities = {neck.order};
            neck.budget = budget_neck(neck.order);
            neck.children.push_back(instanton_node(c));
            node.children.push_back(std::move(neck));
        }
        return node;
    }

    // Asymptotically flat bubble for one escape group (any size >= 1).
    BubbleNode boundary_node(const std::vector<int>& members,
                             UnionFind& shrink_uf) const {
        // Internal collision structure at the escape scale: mutual distances
        // are isometry-invariant, so the shrink components alone decide it.
        const auto comps = components_of(shrink_uf, members);
        BubbleNode node;
        node.kind = NodeKind::LeBrunAF;
        for (const auto& c : comps)
            node.multiplicities.push_back(charge_of(samples[0], c));
        std::sort(node.multiplicities.begin(), node.multiplicities.end());
        node.budget = budget_lebrun_af(node.multiplicities);

        for (const auto& c : comps) {
            if (c.size() < 2) continue;
            BubbleNode neck;
            neck.kind = NodeKind::Neck;
            neck.order = charge_of(samples[0], c);
            neck.multiplicities = {neck.order};
            neck.budget = budget_neck(neck.order);
            neck.children.push_back(instanton_node(c));
            node.children.push_back(std::move(neck));
        }
        return node;
    }
};

void render_node(const BubbleNode& node, int depth, std::ostringstream& out) {
    for (int i = 0; i < depth; ++i) out << "  ";
    out << node_kind_name(node.kind);
    if (node.kind == NodeKind::Neck) {
        out << "(" << node.order << ")";
    } else if (node.kind != NodeKind::EguchiHanson) {
        out << "(";
        for (std::size_t i = 0; i < node.multiplicities.size(); ++i) {
            if (i) out << ",";
            out << node.multiplicities[i];
        }
        out << ")";
    }
    out << "  [chi=" << node.budget.chi.str() << ", tau=" << node.budget.tau.str()
        << ", w2=" << node.budget.w2.str()
        << ", sigma2=" << node.budget.sigma2.str() << "]\n";
    for (const auto& child : node.children) render_node(child, depth + 1, out);
}

void collect_rows(const BubbleNode& node, std::vector<EnergyLedgerRow>& rows) {
    rows.push_back({node.budget.label, node.budget.w2});
    for (const auto& child : node.children) collect_rows(child, rows);
}

void collect_bubbles(const BubbleNode& node,
                     std::vector<const BubbleNode*>& out) {
    if (node.kind != NodeKind::Neck) out.push_back(&node);
    for (const auto& child : node.children) collect_bubbles(child, out);
}

} // namespace

const char* pair_class_name(PairClass c) {
    switch (c) {
        case PairClass::Shrink: return "Shrink";
        case PairClass::Grow: return "Grow";
        case PairClass::Stable: return "Stable";
    }
    return "Stable";
}

const char* node_kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::CompactLeBrunOrbifold: return "CompactLeBrunOrbifold";
        case NodeKind::Neck: return "Neck";
        case NodeKind::GibbonsHawking: return "GibbonsHawking";
        case NodeKind::EguchiHanson: return "EguchiHanson";
        case NodeKind::LeBrunAF: return "LeBrunAF";
    }
    return "CompactLeBrunOrbifold";
}

PairClass classify_pair(const std::vector<double>& d, const std::string& label) {
    if (d.size() < 3)
        throw std::invalid_argument("classify_pair: need at least three samples");
    const double d0 = d[d.size() - 3];
    const double d1 = d[d.size() - 2];
    const double d2 = d[d.size() - 1];
    for (double v : {d0, d1, d2})
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("classify_pair: " + label +
                                        " has a non-finite distance");

    if (d1 <= kShrinkFactor * d0 && d2 <= kShrinkFactor * d1)
        return PairClass::Shrink;
    if (d1 >= d0 + kGrowStep && d2 >= d1 + kGrowStep && d2 - d0 >= kGrowTotal)
        return PairClass::Grow;
    const double lo = std::min({d0, d1, d2});
    const double hi = std::max({d0, d1, d2});
    if (hi - lo <= kStableWindow) return PairClass::Stable;
    throw IndeterminateScaleError(
        label + ": distance history (" + std::to_string(d0) + ", " +
        std::to_string(d1) + ", " + std::to_string(d2) +
        ") is neither contracting geometrically, escaping steadily, nor stable");
}

BubbleTree predict_tree(const DegenerationScenario& scenario) {
    const auto& S = scenario.samples;
    if (S.size() < 4)
        throw std::invalid_argument("predict_tree: need at least four samples");
    const std::size_t npts = S[0].points.size();
    if (npts == 0)
        throw std::invalid_argument("predict_tree: empty configuration");
    for (std::size_t j = 0; j < S.size(); ++j) {
        validate_config(S[j]);
        if (S[j].points.size() != npts)
            throw std::invalid_argument("predict_tree: samples[" +
                                        std::to_string(j) +
                                        "] changes the point count");
        for (std::size_t i = 0; i < npts; ++i)
            if (S[j].points[i].charge != S[0].points[i].charge)
                throw std::invalid_argument(
                    "predict_tree: samples[" + std::to_string(j) +
                    "] changes the charge of " + point_label(int(i)));
    }

    ClusterAnalyzer an{S, {S.size() - 3, S.size() - 2, S.size() - 1}};

    // Interior or boundary, per point, from the last two displacements.
    std::vector<bool> boundary(npts, false);
    for (std::size_t i = 0; i < npts; ++i) {
        const double step1 = dist_h(S[S.size() - 3].points[i].pos,
                                    S[S.size() - 2].points[i].pos);
        const double step2 = dist_h(S[S.size() - 2].points[i].pos,
                                    S[S.size() - 1].points[i].pos);
        if (step1 >= kGrowStep && step2 >= kGrowStep) {
            boundary[i] = true;
        } else if (step1 <= kStableWindow && step2 <= kStableWindow) {
            boundary[i] = false;
        } else {
            throw IndeterminateScaleError(
                point_label(int(i)) + ": displacement history (" +
                std::to_string(step1) + ", " + std::to_string(step2) +
                ") is neither settling at an interior point nor escaping "
                "steadily");
        }
    }

    // Pair classes over the full point set (raw distances).
    std::vector<std::vector<PairClass>> cls(npts,
                                            std::vector<PairClass>(npts));
    for (std::size_t a = 0; a < npts; ++a) {
        for (std::size_t b = a + 1; b < npts; ++b) {
            std::vector<double> hist(an.last3.size());
            for (std::size_t t = 0; t < an.last3.size(); ++t)
                hist[t] = an.dist(an.last3[t], int(a), int(b));
            cls[a][b] = cls[b][a] =
                classify_pair(hist, pair_label(int(a), int(b)));
        }
    }

    // Consistency between per-point fate and pair classes, then clustering:
    // interior collisions merge on Shrink; escape groups travel together, so
    // they merge on Shrink or Stable.
    UnionFind shrink_uf{int(npts)};    // collisions only (also used inside AF)
    UnionFind group_uf{int(npts)};     // escape-group clustering
    for (std::size_t a = 0; a < npts; ++a) {
        for (std::size_t b = a + 1; b < npts; ++b) {
            const PairClass pc = cls[a][b];
            if (pc == PairClass::Shrink) {
                if (boundary[a] != boundary[b])
                    throw IndeterminateScaleError(
                        pair_label(int(a), int(b)) +
                        ": colliding points disagree about escaping");
                shrink_uf.unite(int(a), int(b));
                group_uf.unite(int(a), int(b));
            } else if (pc == PairClass::Stable) {
                if (boundary[a] != boundary[b])
                    throw IndeterminateScaleError(
                        pair_label(int(a), int(b)) +
                        ": a stable distance joins an interior point to an "
                        "escaping one");
                if (boundary[a]) group_uf.unite(int(a), int(b));
            }
        }
    }

    std::vector<int> interior_idx, boundary_idx;
    for (std::size_t i = 0; i < npts; ++i)
        (boundary[i] ? boundary_idx : interior_idx).push_back(int(i));
    if (interior_idx.empty())
        throw IndeterminateScaleError(
            "every point escapes to the ideal boundary; no interior limit "
            "remains");

    BubbleTree tree;
    tree.total_charge = S[0].total_charge();

    // Root: compact orbifold limit over the interior components.
    const auto interior_comps = components_of(shrink_uf, interior_idx);
    BubbleNode& root = tree.root;
    root.kind = NodeKind::CompactLeBrunOrbifold;
    for (const auto& c : interior_comps)
        root.multiplicities.push_back(charge_of(S[0], c));
    std::sort(root.multiplicities.begin(), root.multiplicities.end());
    root.budget = budget_compact_lebrun(root.multiplicities);

    for (const auto& c : interior_comps) {
        if (c.size() < 2) continue;
        BubbleNode neck;
        neck.kind = NodeKind::Neck;
        neck.order = charge_of(S[0], c);
        neck.multiplicities = {neck.order};
        neck.budget = budget_neck(neck.order);
        neck.children.push_back(an.instanton_node(c));
        root.children.push_back(std::move(neck));
    }

    // Boundary bubbles: one asymptotically flat space per escape group,
    // attached through an order-1 neck (the root is smooth where the group
    // leaves).
    for (const auto& g : components_of(group_uf, boundary_idx)) {
        BubbleNode neck;
        neck.kind = NodeKind::Neck;
        neck.order = 1;
        neck.multiplicities = {1};
        neck.budget = budget_neck(1);
        neck.children.push_back(an.boundary_node(g, shrink_uf));
        root.children.push_back(std::move(neck));
    }

    return tree;
}

std::vector<const BubbleNode*> bubble_view(const BubbleTree& tree) {
    std::vector<const BubbleNode*> out;
    collect_bubbles(tree.root, out);
    return out;
}

std::string render_tree(const BubbleTree& tree) {
    std::ostringstream out;
    render_node(tree.root, 0, out);
    return out.str();
}

EnergyCheck tree_energy_check(const BubbleTree& tree) {
    EnergyCheck check;
    collect_rows(tree.root, check.rows);
    check.sum = Rat(0);
    for (const auto& row : check.rows) check.sum += row.w2;
    check.expected = Rat(12) * Rat(tree.total_charge);
    check.balanced = (check.sum == check.expected);
    return check;
}

} // namespace monopole
