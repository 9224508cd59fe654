#include <disasm/moga.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace disasm {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    bool strict = false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] > b[j]) return false;
        if (a[j] < b[j]) strict = true;
    }
    return strict;
}

double mean_scalar(const ObjectiveVector& v) {
    if (v.empty()) return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::size_t knee_point(const std::vector<ObjectiveVector>& front) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < front.size(); ++i) {
        const double a = mean_scalar(front[i]);
        const double b = mean_scalar(front[best]);
        if (a < b || (a == b && front[i] < front[best])) best = i;
    }
    return best;
}

std::vector<std::vector<std::size_t>> non_dominated_sort(
    const std::vector<ObjectiveVector>& points) {
    const std::size_t n = points.size();
    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<int> dom_count(n, 0);
    std::vector<std::vector<std::size_t>> fronts;

    std::vector<std::size_t> current;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p == q) continue;
            if (dominates(points[p], points[q]))
                dominated[p].push_back(q);
            else if (dominates(points[q], points[p]))
                ++dom_count[p];
        }
        if (dom_count[p] == 0) current.push_back(p);
    }
    while (!current.empty()) {
        fronts.push_back(current);
        std::vector<std::size_t> next;
        for (std::size_t p : current) {
            for (std::size_t q : dominated[p]) {
                if (--dom_count[q] == 0) next.push_back(q);
            }
        }
        std::sort(next.begin(), next.end());
        current = std::move(next);
    }
    return fronts;
}

namespace {

void enumerate_refs(int objectives, int divisions, int axis, int left,
                    std::vector<double>& scratch, std::vector<std::vector<double>>& out) {
    if (axis == objectives - 1) {
        scratch[static_cast<std::size_t>(axis)] =
            static_cast<double>(left) / static_cast<double>(divisions);
        out.push_back(scratch);
        return;
    }
    for (int c = 0; c <= left; ++c) {
        scratch[static_cast<std::size_t>(axis)] =
            static_cast<double>(c) / static_cast<double>(divisions);
        enumerate_refs(objectives, divisions, axis + 1, left - c, scratch, out);
    }
}

}  // namespace

std::vector<std::vector<double>> reference_points(int objectives, int divisions) {
    std::vector<std::vector<double>> out;
    std::vector<double> scratch(static_cast<std::size_t>(objectives), 0.0);
    enumerate_refs(objectives, divisions, 0, divisions, scratch, out);
    return out;
}

namespace {

double perpendicular_distance(const ObjectiveVector& point, const std::vector<double>& dir) {
    double dot = 0.0, norm2 = 0.0;
    for (std::size_t j = 0; j < dir.size(); ++j) {
        dot += point[j] * dir[j];
        norm2 += dir[j] * dir[j];
    }
    const double t = dot / norm2;
    double d2 = 0.0;
    for (std::size_t j = 0; j < dir.size(); ++j) {
        const double r = point[j] - t * dir[j];
        d2 += r * r;
    }
    return std::sqrt(d2);
}

// Objective normalization of NSGA-III: translate by the ideal point, then
// divide by intercepts of the hyperplane through the extreme points. Falls
// back to per-objective maxima when the hyperplane is degenerate.
std::vector<ObjectiveVector> normalize_objectives(const std::vector<ObjectiveVector>& points,
                                                  const std::vector<std::size_t>& members) {
    const std::size_t m = points.front().size();
    ObjectiveVector ideal(m, std::numeric_limits<double>::infinity());
    for (std::size_t i : members)
        for (std::size_t j = 0; j < m; ++j) ideal[j] = std::min(ideal[j], points[i][j]);

    auto translated = [&](std::size_t i, std::size_t j) { return points[i][j] - ideal[j]; };

    // Extreme point per axis via the achievement scalarizing function.
    std::vector<std::size_t> extremes(m);
    for (std::size_t axis = 0; axis < m; ++axis) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_i = members.front();
        for (std::size_t i : members) {
            double asf = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                const double w = (j == axis) ? 1.0 : 1e-6;
                asf = std::max(asf, translated(i, j) / w);
            }
            if (asf < best) {
                best = asf;
                best_i = i;
            }
        }
        extremes[axis] = best_i;
    }

    // Solve E * beta = 1 by Gaussian elimination; intercepts are 1/beta.
    std::vector<double> intercepts(m, 0.0);
    bool degenerate = false;
    {
        std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < m; ++c) a[r][c] = translated(extremes[r], c);
            a[r][m] = 1.0;
        }
        for (std::size_t col = 0; col < m && !degenerate; ++col) {
            std::size_t pivot = col;
            for (std::size_t r = col + 1; r < m; ++r)
                if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
            if (std::fabs(a[pivot][col]) < 1e-12) {
                degenerate = true;
                break;
            }
            std::swap(a[col], a[pivot]);
            for (std::size_t r = 0; r < m; ++r) {
                if (r == col) continue;
                const double f = a[r][col] / a[col][col];
                for (std::size_t c = col; c <= m; ++c) a[r][c] -= f * a[col][c];
            }
        }
        if (!degenerate) {
            for (std::size_t j = 0; j < m; ++j) {
                const double beta = a[j][m] / a[j][j];
                if (beta <= 1e-12) {
                    degenerate = true;
                    break;
                }
                intercepts[j] = 1.0 / beta;
            }
        }
    }
    if (degenerate) {
        for (std::size_t j = 0; j < m; ++j) {
            double mx = 0.0;
            for (std::size_t i : members) mx = std::max(mx, translated(i, j));
            intercepts[j] = mx;
        }
    }
    for (std::size_t j = 0; j < m; ++j)
        if (intercepts[j] < 1e-12) intercepts[j] = 1e-12;

    std::vector<ObjectiveVector> normalized(points.size());
    for (std::size_t i : members) {
        ObjectiveVector v(m);
        for (std::size_t j = 0; j < m; ++j) v[j] = translated(i, j) / intercepts[j];
        normalized[i] = std::move(v);
    }
    return normalized;
}

}  // namespace

std::vector<std::size_t> niching_select(const std::vector<ObjectiveVector>& points,
                                        std::size_t target_size,
                                        const std::vector<std::vector<double>>& refs, Rng& rng) {
    const auto fronts = non_dominated_sort(points);

    std::vector<std::size_t> survivors;
    std::size_t last = 0;
    while (last < fronts.size() && survivors.size() + fronts[last].size() <= target_size) {
        survivors.insert(survivors.end(), fronts[last].begin(), fronts[last].end());
        ++last;
    }
    if (survivors.size() == target_size || last >= fronts.size()) return survivors;

    const std::vector<std::size_t>& split = fronts[last];
    std::vector<std::size_t> considered = survivors;
    considered.insert(considered.end(), split.begin(), split.end());

    const auto normalized = normalize_objectives(points, considered);

    // Associate members with their nearest reference direction.
    std::vector<std::size_t> assoc(points.size(), 0);
    std::vector<double> assoc_dist(points.size(), 0.0);
    for (std::size_t i : considered) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_r = 0;
        for (std::size_t r = 0; r < refs.size(); ++r) {
            const double d = perpendicular_distance(normalized[i], refs[r]);
            if (d < best) {
                best = d;
                best_r = r;
            }
        }
        assoc[i] = best_r;
        assoc_dist[i] = best;
    }

    std::vector<std::size_t> niche_count(refs.size(), 0);
    for (std::size_t i : survivors) ++niche_count[assoc[i]];

    std::vector<std::vector<std::size_t>> pool(refs.size());
    for (std::size_t i : split) pool[assoc[i]].push_back(i);

    std::vector<char> active(refs.size(), 1);
    std::size_t need = target_size - survivors.size();
    while (need > 0) {
        std::size_t min_count = std::numeric_limits<std::size_t>::max();
        for (std::size_t r = 0; r < refs.size(); ++r)
            if (active[r]) min_count = std::min(min_count, niche_count[r]);
        std::vector<std::size_t> minimal;
        for (std::size_t r = 0; r < refs.size(); ++r)
            if (active[r] && niche_count[r] == min_count) minimal.push_back(r);
        const std::size_t r = minimal[rand_below(rng, minimal.size())];
        if (pool[r].empty()) {
            active[r] = 0;
            continue;
        }
        std::size_t chosen;
        if (niche_count[r] == 0) {
            // Empty niche: take the member closest to the direction.
            std::size_t best_k = 0;
            for (std::size_t k = 1; k < pool[r].size(); ++k)
                if (assoc_dist[pool[r][k]] < assoc_dist[pool[r][best_k]]) best_k = k;
            chosen = best_k;
        } else {
            chosen = rand_below(rng, pool[r].size());
        }
        survivors.push_back(pool[r][chosen]);
        pool[r].erase(pool[r].begin() + static_cast<std::ptrdiff_t>(chosen));
        ++niche_count[r];
        --need;
    }
    return survivors;
}

Genome order_crossover(const Genome& a, const Genome& b, std::size_t cut1, std::size_t cut2) {
    const std::size_t n = a.size();
    Genome child(n, 0);
    std::vector<char> taken(n, 0);
    for (std::size_t i = cut1; i < cut2; ++i) {
        child[i] = a[i];
        taken[i] = 1;
    }
    auto in_window = [&](int gene) {
        for (std::size_t i = cut1; i < cut2; ++i)
            if (a[i] == gene) return true;
        return false;
    };
    std::size_t fill = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (in_window(b[i])) continue;
        while (fill < n && taken[fill]) ++fill;
        child[fill] = b[i];
        taken[fill] = 1;
    }
    return child;
}

Genome order_crossover(const Genome& a, const Genome& b, Rng& rng) {
    if (a.size() < 2) return a;
    std::size_t c1 = rand_below(rng, a.size());
    std::size_t c2 = rand_below(rng, a.size());
    if (c1 > c2) std::swap(c1, c2);
    return order_crossover(a, b, c1, c2 + 1);
}

Genome uniform_crossover(const Genome& a, const Genome& b, Rng& rng) {
    Genome child(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) child[i] = (rng() & 1u) ? b[i] : a[i];
    return child;
}

Genome swap_mutation(Genome x, Rng& rng) {
    if (x.size() >= 2) {
        const std::size_t i = rand_below(rng, x.size());
        const std::size_t j = rand_below(rng, x.size());
        std::swap(x[i], x[j]);
    }
    return x;
}

Genome flip_mutation(Genome x, Rng& rng) {
    if (!x.empty()) {
        const std::size_t i = rand_below(rng, x.size());
        x[i] = (x[i] == 1) ? 2 : 1;
    }
    return x;
}

namespace {

constexpr int kOffspringRetries = 10;

std::size_t best_scalar_index(const std::vector<ObjectiveVector>& objectives) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < objectives.size(); ++i)
        if (mean_scalar(objectives[i]) < mean_scalar(objectives[best])) best = i;
    return best;
}

GaTracePoint trace_point(int gen, const std::vector<ObjectiveVector>& objectives) {
    GaTracePoint t;
    t.generation = gen;
    t.best_scalar = mean_scalar(objectives[best_scalar_index(objectives)]);
    t.best_objectives = objectives.front();
    for (const auto& v : objectives)
        for (std::size_t j = 0; j < v.size(); ++j)
            t.best_objectives[j] = std::min(t.best_objectives[j], v[j]);
    return t;
}

}  // namespace

GaResult evolve(const GaProblem& problem, const GaConfig& config) {
    if (config.population_size < 4) throw Error("population_size must be at least 4");
    if (config.crossover_rate < 0.0 || config.crossover_rate > 1.0 || config.mutation_rate < 0.0 ||
        config.mutation_rate > 1.0)
        throw Error("rates must lie in [0,1]");
    const std::size_t n = static_cast<std::size_t>(config.population_size);
    Rng rng(mix64(config.rng_seed, 0x6d6f6761ULL));

    std::vector<Genome> population;
    for (Genome& g : problem.initialize(config.rng_seed, config.population_size)) {
        if (problem.feasible(g)) population.push_back(std::move(g));
    }
    if (population.empty()) throw NoFeasibleStart("initializer produced no feasible chromosome");
    while (population.size() < n) {
        // Top up from feasible members when the initializer fell short.
        const Genome& parent = population[rand_below(rng, population.size())];
        Genome filler = parent;
        for (int t = 0; t < kOffspringRetries; ++t) {
            Genome candidate = problem.mutate(parent, rng);
            if (problem.feasible(candidate)) {
                filler = std::move(candidate);
                break;
            }
        }
        population.push_back(std::move(filler));
    }

    std::vector<ObjectiveVector> objectives(population.size());
    for (std::size_t i = 0; i < population.size(); ++i) objectives[i] = problem.evaluate(population[i]);

    GaResult result;
    result.trace.push_back(trace_point(0, objectives));

    const auto refs = reference_points(static_cast<int>(objectives.front().size()),
                                       config.reference_divisions);

    for (int gen = 1; gen <= config.generations; ++gen) {
        std::vector<Genome> offspring;
        offspring.reserve(n);
        while (offspring.size() < n) {
            Genome child;
            bool ok = false;
            for (int attempt = 0; attempt < kOffspringRetries && !ok; ++attempt) {
                const Genome& a = population[rand_below(rng, population.size())];
                const Genome& b = population[rand_below(rng, population.size())];
                child = (rand_real01(rng) < config.crossover_rate) ? problem.crossover(a, b, rng) : a;
                if (rand_real01(rng) < config.mutation_rate) child = problem.mutate(child, rng);
                ok = problem.feasible(child);
            }
            if (!ok) {
                // Fall back to a mutated copy of a feasible parent.
                const Genome& parent = population[rand_below(rng, population.size())];
                child = parent;
                for (int attempt = 0; attempt < kOffspringRetries; ++attempt) {
                    Genome candidate = problem.mutate(parent, rng);
                    if (problem.feasible(candidate)) {
                        child = std::move(candidate);
                        break;
                    }
                }
            }
            offspring.push_back(std::move(child));
        }

        std::vector<Genome> merged = population;
        merged.insert(merged.end(), std::make_move_iterator(offspring.begin()),
                      std::make_move_iterator(offspring.end()));
        std::vector<ObjectiveVector> merged_obj = objectives;
        merged_obj.resize(merged.size());
        for (std::size_t i = population.size(); i < merged.size(); ++i)
            merged_obj[i] = problem.evaluate(merged[i]);

        auto selected = niching_select(merged_obj, n, refs, rng);

        // Niching may drop the scalar-best member; keep it so the best score
        // trace never regresses between generations.
        const std::size_t best = best_scalar_index(merged_obj);
        if (std::find(selected.begin(), selected.end(), best) == selected.end()) {
            std::size_t worst_pos = 0;
            for (std::size_t k = 1; k < selected.size(); ++k)
                if (mean_scalar(merged_obj[selected[k]]) > mean_scalar(merged_obj[selected[worst_pos]]))
                    worst_pos = k;
            selected[worst_pos] = best;
        }

        std::vector<Genome> next_pop;
        std::vector<ObjectiveVector> next_obj;
        next_pop.reserve(n);
        next_obj.reserve(n);
        for (std::size_t i : selected) {
            next_pop.push_back(std::move(merged[i]));
            next_obj.push_back(std::move(merged_obj[i]));
        }
        population = std::move(next_pop);
        objectives = std::move(next_obj);
        result.trace.push_back(trace_point(gen, objectives));
    }

    result.front = non_dominated_sort(objectives).front();
    result.population = std::move(population);
    result.objectives = std::move(objectives);
    return result;
}

}  // namespace disasm
