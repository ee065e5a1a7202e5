#include "uavdc/moaha_engine.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "uavdc/scenario_model.hpp"

namespace uavdc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

SolutionVector repair(SolutionVector x, const Bounds& b, const AlgoConfig& cfg) {
    x = clamp(std::move(x), b);
    if (cfg.snap) x = snap_to_grid(std::move(x), *cfg.snap);
    return x;
}

void evaluate_all(const Scenario& scn, std::span<const SolutionVector> xs, std::span<ObjectiveVector> out,
                  std::size_t threads) {
    const std::size_t n = xs.size();
    threads = std::max<std::size_t>(1, std::min(threads, n));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = evaluate_objectives(scn, xs[i]);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += threads) out[i] = evaluate_objectives(scn, xs[i]);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

void validate_config(const AlgoConfig& cfg) {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(what);
    };
    require(cfg.pop_size >= 2, "pop_size must be >= 2");
    require(cfg.max_iters >= 1, "max_iters must be >= 1");
    require(cfg.guided_prob >= 0.0 && cfg.guided_prob <= 1.0, "guided_prob must lie in [0, 1]");
    require(cfg.cauchy_prob >= 0.0 && cfg.cauchy_prob <= 1.0, "cauchy_prob must lie in [0, 1]");
    require(cfg.cauchy.scale_t > 0.0, "cauchy.scale_t must be positive");
    require(cfg.cauchy.e_pos_max >= 0.0, "cauchy.e_pos_max must be non-negative");
    require(cfg.cauchy.e_speed >= 0.0, "cauchy.e_speed must be non-negative");
    require(cfg.eval_threads >= 1, "eval_threads must be >= 1");
    validate_tent(cfg.tent);
    if (cfg.snap) {
        require(!cfg.snap->hover_x.empty() && !cfg.snap->hover_y.empty() && !cfg.snap->speed.empty() &&
                    !cfg.snap->power.empty(),
                "snap grid needs at least one value per component");
    }
}

// ---------------------------------------------------------------- visit table

VisitTable::VisitTable(std::size_t n) : n_(n), cells_(n * n, 1) {
    for (std::size_t i = 0; i < n; ++i) cells_[i * n + i] = 0;
}

void VisitTable::record_guided(std::size_t i, std::size_t target) {
    record_territorial(i);
    cells_[i * n_ + target] = 0;
}

void VisitTable::record_territorial(std::size_t i) {
    for (std::size_t j = 0; j < n_; ++j)
        if (j != i) ++cells_[i * n_ + j];
}

std::uint64_t VisitTable::row_max_excluding_diag(std::size_t row) const {
    std::uint64_t m = 0;
    for (std::size_t j = 0; j < n_; ++j)
        if (j != row) m = std::max(m, cells_[row * n_ + j]);
    return m;
}

void VisitTable::refill(std::size_t i) {
    for (std::size_t l = 0; l < n_; ++l)
        if (l != i) cells_[l * n_ + i] = row_max_excluding_diag(l) + 1;
}

void VisitTable::record_migration(std::size_t i) {
    record_territorial(i);
    refill(i);
}

std::size_t VisitTable::select_target(std::size_t i, std::span<const std::size_t> ranks) const {
    std::size_t best = n_;
    for (std::size_t j = 0; j < n_; ++j) {
        if (j == i) continue;
        if (best == n_) {
            best = j;
            continue;
        }
        const auto a = at(i, j), b = at(i, best);
        if (a > b || (a == b && ranks[j] < ranks[best])) best = j;
    }
    if (best == n_) throw std::logic_error("select_target: population of one");
    return best;
}

// ------------------------------------------------------------------ foraging

std::vector<double> flight_mask(FlightSkill skill, std::size_t dim, Rng& rng) {
    if (dim == 0) throw std::invalid_argument("flight_mask: dim must be >= 1");
    std::vector<double> mask(dim, 0.0);
    switch (skill) {
        case FlightSkill::omnidirectional:
            std::fill(mask.begin(), mask.end(), 1.0);
            break;
        case FlightSkill::axial:
            mask[uniform_index(rng, dim)] = 1.0;
            break;
        case FlightSkill::diagonal: {
            const std::size_t count = dim <= 2 ? 1 : 2 + uniform_index(rng, dim - 2);
            std::vector<std::size_t> idx(dim);
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            for (std::size_t c = 0; c < count; ++c) {
                std::swap(idx[c], idx[c + uniform_index(rng, dim - c)]);
                mask[idx[c]] = 1.0;
            }
            break;
        }
    }
    return mask;
}

std::vector<double> flight_direction(std::size_t dim, Rng& rng, FlightSkill* chosen) {
    const auto skill = static_cast<FlightSkill>(uniform_index(rng, 3));
    if (chosen) *chosen = skill;
    return flight_mask(skill, dim, rng);
}

std::vector<double> guided_update(std::span<const double> bird, std::span<const double> target, double a,
                                  std::span<const double> mask) {
    if (bird.size() != target.size() || bird.size() != mask.size())
        throw std::invalid_argument("guided_update: length mismatch");
    std::vector<double> v(bird.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = target[j] + a * mask[j] * (bird[j] - target[j]);
    return v;
}

std::vector<double> territorial_update(std::span<const double> bird, double b, std::span<const double> mask) {
    if (bird.size() != mask.size()) throw std::invalid_argument("territorial_update: length mismatch");
    std::vector<double> v(bird.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = bird[j] + b * mask[j] * bird[j];
    return v;
}

SolutionVector guided_forage(const Hummingbird& bird, const Hummingbird& target,
                             const std::vector<std::size_t>& lead_seq, const Bounds& b, Rng& rng) {
    const auto xb = continuous_genes(bird.solution);
    const auto xt = continuous_genes(target.solution);
    const auto mask = flight_direction(xb.size(), rng);
    const double a = standard_normal(rng);
    SolutionVector v = bird.solution;
    set_continuous_genes(v, guided_update(xb, xt, a, mask));
    v.visit_seq = discrete_mutation(lead_seq, rng);
    return clamp(std::move(v), b);
}

SolutionVector territorial_forage(const Hummingbird& bird, const Archive& arch, const Bounds& b, Rng& rng) {
    const auto xb = continuous_genes(bird.solution);
    const auto mask = flight_direction(xb.size(), rng);
    const double beta = standard_normal(rng);
    SolutionVector v = bird.solution;
    set_continuous_genes(v, territorial_update(xb, beta, mask));
    const auto& seq_source =
        arch.empty() ? bird.solution.visit_seq : arch.entries[uniform_index(rng, arch.size())].solution.visit_seq;
    v.visit_seq = discrete_mutation(seq_source, rng);
    return clamp(std::move(v), b);
}

SolutionVector migration_forage(const Bounds& b, std::size_t num_hovers, std::size_t num_devices, Rng& rng) {
    return random_solution(b, num_hovers, num_devices, rng);
}

std::size_t worst_bird(std::span<const std::size_t> ranks) {
    if (ranks.empty()) throw std::invalid_argument("worst_bird: empty population");
    std::size_t w = 0;
    for (std::size_t i = 1; i < ranks.size(); ++i)
        if (ranks[i] > ranks[w]) w = i;
    return w;
}

std::size_t lead_bird(std::span<const ObjectiveVector> objs, const FrontRank& ranks) {
    const auto front = ranks.front(1);
    std::vector<ObjectiveVector> fo;
    fo.reserve(front.size());
    for (std::size_t i : front) fo.push_back(objs[i]);
    const auto cd = crowding_distance(fo);
    std::size_t best = 0;
    for (std::size_t m = 1; m < front.size(); ++m)
        if (cd[m] > cd[best]) best = m;
    return front.at(best);
}

// --------------------------------------------------------------------- loop

EngineState initialize(const Scenario& scn, const AlgoConfig& cfg) {
    validate_config(cfg);
    validate_scenario(scn);
    const auto t0 = Clock::now();
    const Bounds b = scenario_bounds(scn);
    const std::size_t u = scn.num_hovers, k = scn.devices.size();

    EngineState st;
    st.rng.seed(cfg.seed);
    st.visits = VisitTable(cfg.pop_size);
    st.archive.capacity = cfg.effective_archive_cap();

    std::vector<SolutionVector> xs;
    xs.reserve(cfg.pop_size);
    const bool chaotic = cfg.mode == Mode::imoaha && cfg.hybrid_init;
    ChaoticChain chain(cfg.tent);
    for (std::size_t i = 0; i < cfg.pop_size; ++i) {
        SolutionVector x = chaotic ? hybrid_init(b, u, k, chain, st.rng) : random_solution(b, u, k, st.rng);
        xs.push_back(repair(std::move(x), b, cfg));
    }
    std::vector<ObjectiveVector> fs(xs.size());
    evaluate_all(scn, xs, fs, cfg.eval_threads);
    st.stats.evaluations += xs.size();

    const FrontRank ranks = nondominated_sort(fs);
    std::vector<ArchiveEntry> entries;
    entries.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        st.population.push_back({xs[i], fs[i], ranks.rank[i]});
        entries.push_back({xs[i], fs[i], 0.0});
    }
    st.archive = archive_update(std::move(st.archive), entries);
    st.timings.init_s += seconds_since(t0);
    return st;
}

void step(const Scenario& scn, const AlgoConfig& cfg, EngineState& st) {
    const Bounds b = scenario_bounds(scn);
    const std::size_t n = st.population.size();
    const bool cauchy_on = cfg.mode == Mode::imoaha && cfg.cauchy_prob > 0.0;

    // Ranks of the current population drive target choice and the lead.
    auto t0 = Clock::now();
    std::vector<ObjectiveVector> pop_objs(n);
    for (std::size_t i = 0; i < n; ++i) pop_objs[i] = st.population[i].objectives;
    const FrontRank pop_ranks = nondominated_sort(pop_objs);
    for (std::size_t i = 0; i < n; ++i) st.population[i].rank = pop_ranks.rank[i];
    const std::size_t lead = lead_bird(pop_objs, pop_ranks);
    const std::vector<std::size_t> lead_seq = st.population[lead].solution.visit_seq;

    // All random draws happen here, in index order, before evaluation.
    std::vector<SolutionVector> cand(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Hummingbird& bird = st.population[i];
        if (uniform01(st.rng) < cfg.guided_prob) {
            const std::size_t target = st.visits.select_target(i, pop_ranks.rank);
            SolutionVector v = guided_forage(bird, st.population[target], lead_seq, b, st.rng);
            if (cauchy_on && uniform01(st.rng) < cfg.cauchy_prob) {
                for (GeneBlock block : {GeneBlock::positions, GeneBlock::speeds}) {
                    set_gene_block(v, block, cauchy_mutate(gene_block(v, block), st.archive, block, cfg.cauchy, st.rng));
                }
                ++st.stats.cauchy_invocations;
            }
            cand[i] = repair(std::move(v), b, cfg);
            st.visits.record_guided(i, target);
            ++st.stats.guided;
        } else {
            cand[i] = repair(territorial_forage(bird, st.archive, b, st.rng), b, cfg);
            st.visits.record_territorial(i);
            ++st.stats.territorial;
        }
    }
    st.timings.forage_s += seconds_since(t0);

    t0 = Clock::now();
    std::vector<ObjectiveVector> cand_objs(n);
    evaluate_all(scn, cand, cand_objs, cfg.eval_threads);
    st.stats.evaluations += n;
    st.timings.evaluate_s += seconds_since(t0);

    // Candidates enter the archive before acceptance consumes them.
    t0 = Clock::now();
    std::vector<ArchiveEntry> entries;
    entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        if (!cand_objs[i].is_infeasible()) entries.push_back({cand[i], cand_objs[i], 0.0});
    st.archive = archive_update(std::move(st.archive), entries);
    st.timings.archive_s += seconds_since(t0);

    // Front ranks over incumbents and candidates together.
    t0 = Clock::now();
    std::vector<ObjectiveVector> joint(pop_objs);
    joint.insert(joint.end(), cand_objs.begin(), cand_objs.end());
    const FrontRank joint_ranks = nondominated_sort(joint);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t q = joint_ranks.rank[i];
        const std::size_t p = joint_ranks.rank[n + i];
        if (nds_accept(q, p, st.rng) == Accept::candidate) {
            if (p > q) ++st.stats.worse_front_replacements;
            st.population[i] = {std::move(cand[i]), cand_objs[i], p};
            st.visits.refill(i);
            ++st.stats.accepted;
        }
    }
    st.timings.select_s += seconds_since(t0);

    ++st.iteration;

    if (st.iteration % cfg.effective_migration_period() == 0) {
        t0 = Clock::now();
        std::vector<ObjectiveVector> objs(n);
        for (std::size_t i = 0; i < n; ++i) objs[i] = st.population[i].objectives;
        const FrontRank ranks = nondominated_sort(objs);
        const std::size_t w = worst_bird(ranks.rank);
        SolutionVector x = repair(migration_forage(b, scn.num_hovers, scn.devices.size(), st.rng), b, cfg);
        const ObjectiveVector f = evaluate_objectives(scn, x);
        ++st.stats.evaluations;
        if (!f.is_infeasible()) {
            const ArchiveEntry e{x, f, 0.0};
            st.archive = archive_update(std::move(st.archive), std::span<const ArchiveEntry>(&e, 1));
        }
        st.population[w] = {std::move(x), f, 0};
        st.visits.record_migration(w);
        ++st.stats.migrations;
        st.timings.forage_s += seconds_since(t0);
    }
}

RunResult run(const Scenario& scn, const AlgoConfig& cfg) {
    EngineState st = initialize(scn, cfg);
    RunResult out;
    out.initial_archive = st.archive;
    if (cfg.keep_snapshots) out.snapshots.reserve(cfg.max_iters);
    for (std::size_t t = 0; t < cfg.max_iters; ++t) {
        step(scn, cfg, st);
        if (cfg.keep_snapshots) out.snapshots.push_back(st.archive.objectives());
    }
    out.archive = std::move(st.archive);
    out.stats = st.stats;
    out.timings = st.timings;
    return out;
}

}  // namespace uavdc
