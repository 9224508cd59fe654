#include <disasm/ccc_graph.hpp>

#include <algorithm>
#include <deque>
#include <ostream>

#include <disasm/rng.hpp>

namespace disasm {

CccGraph CccGraph::build(const AssemblyModel& model) {
    CccGraph g;
    g.eta_ = model.eta;
    g.base_ = model.base_id;
    g.alive_ = model.eta;
    g.present_.assign(static_cast<std::size_t>(model.eta) + 1, 1);
    g.present_[0] = 0;
    g.skeleton_.resize(static_cast<std::size_t>(model.eta) + 1);
    g.connection_.resize(static_cast<std::size_t>(model.eta) + 1);
    g.contact_.resize(static_cast<std::size_t>(model.eta) + 1);
    g.constraint_out_.resize(static_cast<std::size_t>(model.eta) + 1);
    g.constraint_in_.resize(static_cast<std::size_t>(model.eta) + 1);
    for (int u = 1; u <= model.eta; ++u) {
        for (int v = 1; v <= model.eta; ++v) {
            if (u != v && model.relations.contact(u, v))
                g.contact_[static_cast<std::size_t>(u)].push_back(v);
            if (u != v && model.relations.connection(u, v))
                g.connection_[static_cast<std::size_t>(u)].push_back(v);
            if (u != v &&
                (model.relations.contact(u, v) || model.relations.connection(u, v)))
                g.skeleton_[static_cast<std::size_t>(u)].push_back(v);
            if (model.relations.constraint(u, v)) {
                g.constraint_out_[static_cast<std::size_t>(u)].push_back(v);
                g.constraint_in_[static_cast<std::size_t>(v)].push_back(u);
            }
        }
    }
    return g;
}

std::vector<int> CccGraph::nodes() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(alive_));
    for (int id = 1; id <= eta_; ++id)
        if (present_[static_cast<std::size_t>(id)]) out.push_back(id);
    return out;
}

int CccGraph::constraint_in_degree(int id) const {
    int deg = 0;
    for (int u : constraint_in_[static_cast<std::size_t>(id)])
        if (present_[static_cast<std::size_t>(u)]) ++deg;
    return deg;
}

std::size_t CccGraph::link_count(LinkTag tag) const {
    std::size_t n = 0;
    const auto& adj = tag == LinkTag::Contact     ? contact_
                      : tag == LinkTag::Connection ? connection_
                                                   : constraint_out_;
    for (int u = 1; u <= eta_; ++u) {
        if (!present_[static_cast<std::size_t>(u)]) continue;
        for (int v : adj[static_cast<std::size_t>(u)])
            if (present_[static_cast<std::size_t>(v)]) ++n;
    }
    return tag == LinkTag::Constraint ? n : n / 2;
}

void CccGraph::remove_node(int id) {
    if (!present_[static_cast<std::size_t>(id)]) return;
    present_[static_cast<std::size_t>(id)] = 0;
    --alive_;
}

std::vector<std::vector<int>> distance_layers(const CccGraph& graph) {
    const int base = graph.base();
    std::vector<int> dist;
    {
        // BFS on the skeleton; constraint links carry precedence, not adjacency.
        dist.assign(static_cast<std::size_t>(graph.max_id()) + 1, -1);
        std::deque<int> q;
        dist[static_cast<std::size_t>(base)] = 0;
        q.push_back(base);
        while (!q.empty()) {
            const int u = q.front();
            q.pop_front();
            for (int v : graph.skeleton_neighbors(u)) {
                if (!graph.contains(v) || dist[static_cast<std::size_t>(v)] >= 0) continue;
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                q.push_back(v);
            }
        }
    }

    std::vector<int> unreachable;
    int max_dist = 0;
    for (int id : graph.nodes()) {
        if (id == base) continue;
        if (dist[static_cast<std::size_t>(id)] < 0)
            unreachable.push_back(id);
        else
            max_dist = std::max(max_dist, dist[static_cast<std::size_t>(id)]);
    }

    std::vector<std::vector<int>> layers;
    if (!unreachable.empty()) layers.push_back(std::move(unreachable));
    for (int d = max_dist; d >= 1; --d) {
        std::vector<int> layer;
        for (int id : graph.nodes()) {
            if (id != base && dist[static_cast<std::size_t>(id)] == d) layer.push_back(id);
        }
        if (!layer.empty()) layers.push_back(std::move(layer));
    }
    return layers;
}

std::vector<int> constraint_free(const CccGraph& graph) {
    std::vector<int> out;
    for (int id : graph.nodes()) {
        if (id != graph.base() && graph.constraint_in_degree(id) == 0) out.push_back(id);
    }
    return out;
}

std::vector<int> collision_free(const std::vector<int>& layer, const CccGraph& graph,
                                const AssemblyModel& model) {
    std::vector<int> out;
    for (int u : layer) {
        bool free_dir = false;
        for (Direction d : model.part(u).geometry.removal_directions) {
            bool blocked = false;
            for (int v : graph.nodes()) {
                if (v != u && model.relations.interference(u, v, d)) {
                    blocked = true;
                    break;
                }
            }
            if (!blocked) {
                free_dir = true;
                break;
            }
        }
        if (free_dir) out.push_back(u);
    }
    return out;
}

namespace {

std::vector<int> remaining_connected_fasteners(const CccGraph& g, const AssemblyModel& model,
                                               int id) {
    std::vector<int> out;
    for (int v : g.connection_neighbors(id)) {
        if (g.contains(v) && model.fastener(v)) out.push_back(v);
    }
    return out;
}

// One pass of the per-step selection; returns 0 when no layer admits a pick.
int pick_next(CccGraph& g, const AssemblyModel& model, Rng& rng) {
    const auto layers = distance_layers(g);
    const auto unconstrained = constraint_free(g);
    for (const auto& layer : layers) {
        const auto movable = collision_free(layer, g, model);
        std::vector<int> admissible;
        for (int id : movable) {
            if (std::binary_search(unconstrained.begin(), unconstrained.end(), id))
                admissible.push_back(id);
        }
        if (admissible.empty()) continue;

        std::vector<int> fasteners, connector_free_regular;
        for (int id : admissible) {
            if (model.fastener(id))
                fasteners.push_back(id);
            else if (remaining_connected_fasteners(g, model, id).empty())
                connector_free_regular.push_back(id);
        }
        const auto& candidates = !fasteners.empty() ? fasteners : connector_free_regular;
        if (candidates.empty()) continue;

        int pick = candidates[rand_below(rng, candidates.size())];
        if (!model.fastener(pick)) {
            const auto attached = remaining_connected_fasteners(g, model, pick);
            if (!attached.empty()) pick = attached[rand_below(rng, attached.size())];
        }
        return pick;
    }
    return 0;
}

// Builds one chromosome or returns nullopt when the selection stalls.
std::optional<SequenceChromosome> build_one(const AssemblyModel& model, std::uint64_t seed) {
    CccGraph g = CccGraph::build(model);
    Rng rng(seed);
    std::vector<int> order;  // grown last-to-first
    while (g.node_count() > 1) {
        const int pick = pick_next(g, model, rng);
        if (pick == 0) return std::nullopt;
        order.insert(order.begin(), pick);
        g.remove_node(pick);
    }
    return SequenceChromosome{std::move(order)};
}

constexpr int kStallRetries = 20;

}  // namespace

std::vector<SequenceChromosome> initialize_population(const AssemblyModel& model, int n_genes,
                                                      std::uint64_t rng_seed) {
    std::vector<SequenceChromosome> population;
    population.reserve(static_cast<std::size_t>(n_genes));
    for (int l = 0; l < n_genes; ++l) {
        std::optional<SequenceChromosome> chromo;
        for (int attempt = 0; attempt <= kStallRetries && !chromo; ++attempt) {
            chromo = build_one(model, mix64(rng_seed, static_cast<std::uint64_t>(l),
                                            static_cast<std::uint64_t>(attempt)));
        }
        if (!chromo)
            throw InitializationStalled("no admissible node found for chromosome " +
                                        std::to_string(l) + " after " +
                                        std::to_string(kStallRetries) + " retries");
        population.push_back(std::move(*chromo));
    }
    return population;
}

void dump_dot(const CccGraph& graph, const AssemblyModel& model, std::ostream& os) {
    os << "digraph ccc {\n";
    for (int id : graph.nodes()) {
        os << "  p" << id << " [kind=\"" << to_string(model.part(id).label.kind) << "\"];\n";
    }
    for (int u : graph.nodes()) {
        for (int v : graph.skeleton_neighbors(u)) {
            if (!graph.contains(v) || v < u) continue;
            const bool contact = model.relations.contact(u, v);
            const bool connection = model.relations.connection(u, v);
            if (contact) os << "  p" << u << " -> p" << v << " [tag=\"contact\", dir=none];\n";
            if (connection) os << "  p" << u << " -> p" << v << " [tag=\"connection\", dir=none];\n";
        }
    }
    for (int u : graph.nodes()) {
        for (int v = 1; v <= model.eta; ++v) {
            if (graph.contains(v) && model.relations.constraint(u, v))
                os << "  p" << u << " -> p" << v << " [tag=\"constraint\"];\n";
        }
    }
    os << "}\n";
}

}  // namespace disasm
