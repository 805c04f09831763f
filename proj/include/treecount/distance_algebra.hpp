#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treecount/graph.hpp"

namespace treecount {

// Symmetric matrix of pairwise parameter distances over N ∪ {far}, zero
// diagonal. Indices are 0-based in the API; the text format is 1-based.
class DistanceConfig {
public:
    explicit DistanceConfig(std::uint32_t n) : n_(n), d_(std::size_t{n} * n, Dist::infinite()) {
        for (std::uint32_t i = 0; i < n; ++i) set(i, i, Dist(0));
    }

    static DistanceConfig from_graph(const Graph& g, std::span<const Vertex> params);

    // Text format: first line "n"; then lines "i j d" (1-based, i<j) with d a
    // non-negative integer or "far"; unlisted pairs default to far.
    static DistanceConfig parse(const std::string& text);
    std::string render() const;

    std::uint32_t size() const { return n_; }
    Dist at(std::uint32_t i, std::uint32_t j) const { return d_[std::size_t{i} * n_ + j]; }
    void set(std::uint32_t i, std::uint32_t j, Dist d) {
        d_[std::size_t{i} * n_ + j] = d;
        d_[std::size_t{j} * n_ + i] = d;
    }

    // Restriction to a subset of parameter indices, in the given order.
    DistanceConfig restrict(std::span<const std::uint32_t> idx) const;

    bool operator==(const DistanceConfig&) const = default;

private:
    std::uint32_t n_;
    std::vector<Dist> d_;
};

// Levels ell_ij = (k_i + k_j - d_ij)/2, stored doubled so half-integers stay
// exact; nullopt for far pairs.
class EllValues {
public:
    EllValues(std::uint32_t n) : n_(n), twice_(std::size_t{n} * n) {}
    std::optional<std::int64_t> twice(std::uint32_t i, std::uint32_t j) const {
        return twice_[std::size_t{i} * n_ + j];
    }
    void set(std::uint32_t i, std::uint32_t j, std::optional<std::int64_t> v) {
        twice_[std::size_t{i} * n_ + j] = v;
        twice_[std::size_t{j} * n_ + i] = v;
    }
    std::uint32_t size() const { return n_; }

private:
    std::uint32_t n_;
    std::vector<std::optional<std::int64_t>> twice_;
};

EllValues ell_values(const DistanceConfig& cfg, std::span<const std::uint32_t> ks);

// Minimal tree realization of one finite-distance class: labeled vertices
// carry parameter indices (several when parameters coincide), unlabeled
// branch vertices have degree >= 3, edge lengths are positive integers.
class HullTree {
public:
    struct Node {
        std::vector<std::uint32_t> labels; // original parameter indices
    };
    struct Edge {
        std::uint32_t a, b;
        std::uint32_t length;
    };

    std::uint32_t node_count() const { return static_cast<std::uint32_t>(nodes_.size()); }
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::uint32_t>& members() const { return members_; }

    std::uint32_t node_of_label(std::uint32_t param) const;
    std::uint32_t node_dist(std::uint32_t a, std::uint32_t b) const {
        return dist_[std::size_t{a} * nodes_.size() + b];
    }
    std::uint32_t label_dist(std::uint32_t pi, std::uint32_t pj) const {
        return node_dist(node_of_label(pi), node_of_label(pj));
    }
    std::uint32_t node_degree(std::uint32_t v) const;

private:
    friend struct HullTreeBuilder;

    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> members_; // original indices covered, sorted
    std::vector<std::uint32_t> dist_;    // node-to-node distances

    void finalize(); // fills dist_
};

// One tree per finite-distance class. Validates the tree-metric conditions
// (triangle inequality, integrality, four-point condition) and reports a
// violating triple/quadruple otherwise.
std::vector<HullTree> realize_hull(const DistanceConfig& cfg);

struct CenterLocus {
    bool on_node = true;
    std::uint32_t node_a = 0; // the node, or the edge endpoint nearer offset 0
    std::uint32_t node_b = 0;
    std::uint32_t offset = 0; // distance from node_a when inside an edge
};

struct CenterResult {
    enum class Status { Empty, NonEmpty };
    Status status = Status::Empty;
    std::uint32_t level = 0;    // ell: distance from every solution to the hull
    std::uint32_t hull_deg = 0; // m: neighbors of the center inside the hull
    CenterLocus locus{};
    std::optional<HullTree> hull{};

    bool nonempty() const { return status == Status::NonEmpty; }
};

// Decides the system dist(x, a_i) = k_i over the configuration alone:
// coincident parameters are merged (conflicting k -> Empty), far pairs and
// negative/non-integral levels -> Empty, otherwise the hull is scanned for
// the unique center at distance k_i - ell from every a_i.
CenterResult solve_center(const DistanceConfig& cfg, std::span<const std::uint32_t> ks);

// Cross-check oracle: the closed-form satisfiability conditions with some
// level-minimizing pair in the distinguished role.
bool closed_form_satisfiable(const DistanceConfig& cfg, std::span<const std::uint32_t> ks);

} // namespace treecount
