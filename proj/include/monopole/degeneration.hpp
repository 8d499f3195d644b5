// degeneration.hpp — bubble-tree prediction for degenerating monopole
// configurations.
//
// The input is a scenario: at least four snapshots of one configuration whose
// points drift as a parameter increases (collisions contract geometrically,
// escapes march toward the ideal boundary by fixed hyperbolic strides).  The
// predictor classifies every pairwise-distance history, groups points by
// union-find, and emits the expected degeneration tree:
//
//   * colliding interior points bubble off a multi-center ALE space, reached
//     through a neck whose order is the total colliding charge;
//   * points escaping to the ideal boundary bubble off an asymptotically flat
//     space through an order-1 neck, keeping their own collision structure;
//   * sub-collisions (visible only after rescaling the cluster by its own
//     diameter) recurse into deeper ALE bubbles.
//
// Every node carries its exact characteristic-number budget, and
// tree_energy_check verifies in exact arithmetic that the per-node Weyl
// budgets sum to the smooth total 12 N (units of pi^2, N = total charge).

#pragma once

#include "monopole/budgets.hpp"
#include "monopole/hgeom.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace monopole {

struct DegenerationScenario {
    // Snapshots of the same points (same count, same multiplicities), ordered
    // by the degeneration parameter.  At least four are required, and
    // consecutive snapshots must be separated enough that collision scales
    // contract by at least a factor of two per step.
    std::vector<MonopoleConfig> samples;
};

// Thrown when a distance history fits none of the recognized scaling classes
// (geometric contraction, steady escape, stable separation), or when the
// classes contradict each other.
struct IndeterminateScaleError : std::runtime_error {
    explicit IndeterminateScaleError(const std::string& what)
        : std::runtime_error(what) {}
};

enum class PairClass { Shrink, Grow, Stable };
const char* pair_class_name(PairClass c);

// Classifies the last three entries of one distance history:
//   Shrink : d falls by at least half on each of the two transitions;
//   Grow   : d gains at least 0.45 per transition and at least 1.0 in total;
//   Stable : the three values sit in a window of width <= 0.25;
// anything else throws IndeterminateScaleError mentioning `label`.
PairClass classify_pair(const std::vector<double>& d, const std::string& label);

enum class NodeKind {
    CompactLeBrunOrbifold,  // root: compact orbifold limit
    Neck,                   // connecting annulus, order = parent cone order
    GibbonsHawking,         // multi-center ALE bubble
    EguchiHanson,           // two-center unit ALE bubble
    LeBrunAF                // asymptotically flat boundary bubble
};
const char* node_kind_name(NodeKind k);

struct BubbleNode {
    NodeKind kind = NodeKind::CompactLeBrunOrbifold;
    std::vector<long long> multiplicities;  // node cone orders, ascending
    long long order = 1;                    // neck order (Neck nodes only)
    CharBudget budget;
    std::vector<BubbleNode> children;
};

struct BubbleTree {
    BubbleNode root;
    long long total_charge = 0;
};

// Predicts the degeneration tree of a scenario; throws IndeterminateScaleError
// when the samples do not separate scales cleanly and std::invalid_argument
// when the scenario itself is malformed.
BubbleTree predict_tree(const DegenerationScenario& scenario);

// Depth-first list of the non-neck nodes (the "bubble view" of the tree).
std::vector<const BubbleNode*> bubble_view(const BubbleTree& tree);

// Indented text rendering, one node per line with its budget.
std::string render_tree(const BubbleTree& tree);

struct EnergyLedgerRow {
    std::string label;
    Rat w2;
};

struct EnergyCheck {
    std::vector<EnergyLedgerRow> rows;  // one per node, depth-first
    Rat sum;                            // total of the rows
    Rat expected;                       // 12 * total charge
    bool balanced = false;              // sum == expected, exactly
};

// Exact conservation audit: the Weyl budgets of all nodes (necks contribute
// zero) must sum to the smooth-model total 12 N.
EnergyCheck tree_energy_check(const BubbleTree& tree);

} // namespace monopole
