#ifndef DISASM_CCC_GRAPH_HPP
#define DISASM_CCC_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <disasm/assembly_model.hpp>

namespace disasm {

enum class LinkTag { Contact, Connection, Constraint };

// Contact-connection-constraint graph. Contact and connection links are
// undirected, constraint links are directed blocker -> blocked. Supports node
// removal so it can serve as the working graph of the initializer.
class CccGraph {
  public:
    static CccGraph build(const AssemblyModel& model);

    int base() const { return base_; }
    int max_id() const { return eta_; }
    bool contains(int id) const { return present_[static_cast<std::size_t>(id)]; }
    std::vector<int> nodes() const;  // present ids, ascending
    int node_count() const { return alive_; }

    // Undirected skeleton: contact plus connection links.
    const std::vector<int>& skeleton_neighbors(int id) const {
        return skeleton_[static_cast<std::size_t>(id)];
    }
    const std::vector<int>& connection_neighbors(int id) const {
        return connection_[static_cast<std::size_t>(id)];
    }
    int constraint_in_degree(int id) const;

    std::size_t link_count(LinkTag tag) const;

    // Deletes the node and every incident link.
    void remove_node(int id);

  private:
    int eta_ = 0;
    int base_ = 0;
    int alive_ = 0;
    std::vector<char> present_;                     // by id
    std::vector<std::vector<int>> skeleton_;        // by id; includes removed neighbors, filter on use
    std::vector<std::vector<int>> connection_;
    std::vector<std::vector<int>> contact_;
    std::vector<std::vector<int>> constraint_out_;  // blocker -> blocked
    std::vector<std::vector<int>> constraint_in_;
};

// BFS layers over the undirected skeleton: the unreachable set first, then
// reachable layers farthest to nearest. The base is excluded, empty groups
// are dropped, members are sorted by id.
std::vector<std::vector<int>> distance_layers(const CccGraph& graph);

// Non-base nodes with zero incoming constraint links.
std::vector<int> constraint_free(const CccGraph& graph);

// Members of layer with at least one removal direction free of interference
// against every other node still in the graph.
std::vector<int> collision_free(const std::vector<int>& layer, const CccGraph& graph,
                                const AssemblyModel& model);

// One chromosome in last-removed-first storage: order[0] is the part removed
// last. Removal replays from the back of the array.
struct SequenceChromosome {
    std::vector<int> order;

    std::vector<int> removal_order() const { return {order.rbegin(), order.rend()}; }
    static SequenceChromosome from_removal_order(const std::vector<int>& removal) {
        return SequenceChromosome{{removal.rbegin(), removal.rend()}};
    }
};

// CCC-graph-based chromosome initialization. Deterministic for a fixed
// (model, n_genes, rng_seed); chromosome builds use independent seed streams.
std::vector<SequenceChromosome> initialize_population(const AssemblyModel& model, int n_genes,
                                                      std::uint64_t rng_seed);

// Graphviz dump, nodes carry the part kind, edges their tag.
void dump_dot(const CccGraph& graph, const AssemblyModel& model, std::ostream& os);

}  // namespace disasm

#endif
