#include "specrev/bench.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "specrev/aamrp.hpp"
#include "specrev/oracle.hpp"

namespace specrev {

void RandomDagParams::validate() const {
    if (nodes_per_dag < 1) throw input_error("nodes_per_dag must be >= 1");
    if (edge_factor < 1.0 || edge_factor > 10.0) throw input_error("edge_factor must be in [1,10]");
    if (final_fraction < 0.0 || final_fraction > 1.0)
        throw input_error("final_fraction must be in [0,1]");
    if (ap_count < 0) throw input_error("ap_count must be >= 0");
}

namespace {

// Random connected DAG skeleton over nodes 0..n-1 (edges only forward),
// self-loops added to leaves afterwards by the callers.
std::vector<std::vector<int>> random_dag(Rng& rng, int n, double edge_factor) {
    std::set<std::pair<int, int>> edge_set;
    for (int j = 1; j < n; ++j) edge_set.emplace(rng.below(j), j);
    int target = static_cast<int>(edge_factor * n);
    int attempts = 0;
    while (static_cast<int>(edge_set.size()) < target && attempts < 20 * target + 20) {
        ++attempts;
        if (n < 2) break;
        int i = rng.below(n - 1);
        int j = rng.in_range(i + 1, n - 1);
        edge_set.emplace(i, j);
    }
    std::vector<std::vector<int>> out(static_cast<size_t>(n));
    for (const auto& [i, j] : edge_set) out[static_cast<size_t>(i)].push_back(j);
    for (auto& succ : out) std::sort(succ.begin(), succ.end());
    return out;
}

std::vector<Literal> random_clause(Rng& rng, int ap_count) {
    int len = rng.in_range(1, std::min(3, ap_count));
    std::vector<int> aps;
    while (static_cast<int>(aps.size()) < len) {
        int ap = rng.below(ap_count);
        if (std::find(aps.begin(), aps.end(), ap) == aps.end()) aps.push_back(ap);
    }
    std::vector<Literal> clause;
    for (int ap : aps) clause.push_back(Literal{ap, rng.chance(0.25)});
    return clause;
}

Guard random_guard(Rng& rng, int ap_count) {
    int n_clauses = rng.chance(0.8) ? 1 : 2;
    std::vector<std::vector<Literal>> raw;
    for (int i = 0; i < n_clauses; ++i) raw.push_back(random_clause(rng, ap_count));
    GuardSimplification s = simplify_guard(raw);
    // Clauses never contradict by construction, but duplicates can occur.
    return s.guard ? *s.guard : Guard::make_top();
}

}  // namespace

std::pair<Fsm, SpecAutomaton> gen_random_instance(const RandomDagParams& params) {
    params.validate();
    Rng rng(params.seed);
    const int n = params.nodes_per_dag;
    const int ap_count = params.ap_count > 0 ? params.ap_count : 4 * n;

    Fsm fsm;
    for (int i = 0; i < n; ++i) fsm.state_names.push_back("q" + std::to_string(i));
    fsm.initial = {0};
    fsm.out = random_dag(rng, n, params.edge_factor);
    for (int i = 0; i < n; ++i)
        if (fsm.out[static_cast<size_t>(i)].empty()) fsm.out[static_cast<size_t>(i)] = {i};
    fsm.labels.assign(static_cast<size_t>(n), {});
    for (int i = 0; i < n; ++i)
        for (int ap = 0; ap < ap_count; ++ap)
            if (rng.chance(0.3)) fsm.labels[static_cast<size_t>(i)].push_back(ap);

    SpecAutomaton spec;
    for (int i = 0; i < n; ++i) spec.state_names.push_back("s" + std::to_string(i));
    spec.initial = 0;
    auto spec_dag = random_dag(rng, n, params.edge_factor);
    for (int i = 0; i < n; ++i)
        if (spec_dag[static_cast<size_t>(i)].empty()) spec_dag[static_cast<size_t>(i)] = {i};
    for (int i = 0; i < n; ++i)
        for (int j : spec_dag[static_cast<size_t>(i)])
            spec.guards.emplace(std::make_pair(i, j), random_guard(rng, ap_count));

    // Finals exclude the initial state; the last node is always a leaf
    // with a self-loop, keeping every instance satisfiable under full
    // relaxation.
    for (int i = 1; i < n; ++i)
        if (rng.chance(params.final_fraction)) spec.finals.push_back(i);
    if (n > 1 && std::find(spec.finals.begin(), spec.finals.end(), n - 1) == spec.finals.end())
        spec.finals.push_back(n - 1);
    if (spec.finals.empty()) spec.finals.push_back(n - 1);
    std::sort(spec.finals.begin(), spec.finals.end());

    fsm.validate();
    spec.validate();
    return {std::move(fsm), std::move(spec)};
}

namespace {

// Assembles a synthetic graph whose atoms are positive literals over
// `prop_names`, all attached to a single nominal spec self-loop.
struct SyntheticGraphBuilder {
    RevisionGraph graph;

    explicit SyntheticGraphBuilder(std::vector<std::string> prop_names) {
        graph.spec_state_names = {"s"};
        graph.prop_names = std::move(prop_names);
        for (int ap = 0; ap < static_cast<int>(graph.prop_names.size()); ++ap)
            graph.atom_table.push_back(RemovalAtom{{0, 0}, 0, Literal{ap, false}});
    }

    int add_node(const std::string& name) {
        RevNode node;
        node.name = name;
        graph.nodes.push_back(std::move(node));
        graph.n_real = static_cast<int>(graph.nodes.size());
        return graph.n_real - 1;
    }

    void add_edge(int from, int to, std::vector<int> atoms) {
        std::sort(atoms.begin(), atoms.end());
        bool labeled = !atoms.empty();
        graph.edges.push_back(RevEdge{from, to, std::move(atoms), labeled});
    }

    RevisionGraph finish(std::vector<int> sources, std::vector<int> finals) {
        std::sort(sources.begin(), sources.end());
        std::sort(finals.begin(), finals.end());
        graph.sources = std::move(sources);
        graph.finals = std::move(finals);
        build_adjacency(graph);
        graph.validate();
        return std::move(graph);
    }
};

}  // namespace

RevisionGraph gen_unbounded_family(int m) {
    if (m < 1) throw input_error("gen_unbounded_family: m must be >= 1");
    std::vector<std::string> props;
    for (int i = 0; i <= m; ++i) props.push_back("p" + std::to_string(i));
    props.push_back("pc");  // the two atoms shared by every upper branch
    props.push_back("ps");
    SyntheticGraphBuilder b(std::move(props));
    const int shared_a = m + 1, shared_b = m + 2;

    std::vector<int> junctions;
    for (int i = 1; i <= m; ++i) {
        junctions.push_back(b.add_node("v" + std::to_string(i)));
        b.add_node("a" + std::to_string(i));
        b.add_node("b" + std::to_string(i));
    }
    int vf = b.add_node("vf");

    for (int i = 0; i < m; ++i) {
        int v = junctions[static_cast<size_t>(i)];
        int upper = v + 1, lower = v + 2;
        int next = i + 1 < m ? junctions[static_cast<size_t>(i + 1)] : vf;
        b.add_edge(v, upper, {shared_a, shared_b});
        b.add_edge(v, lower, {i + 1});  // atom p_{i+1}, distinct per stage
        b.add_edge(upper, next, {0});
        b.add_edge(lower, next, {0});
    }
    b.add_edge(vf, vf, {0});
    return b.finish({junctions.front()}, {vf});
}

RevisionGraph gen_series_merge_dag(int stages, int label_width, std::uint64_t seed) {
    if (stages < 1) throw input_error("gen_series_merge_dag: stages must be >= 1");
    if (label_width < 1) throw input_error("gen_series_merge_dag: label_width must be >= 1");
    Rng rng(seed);
    const int pool = 3 * stages + 2;
    std::vector<std::string> props;
    for (int i = 0; i < pool; ++i) props.push_back("p" + std::to_string(i));
    SyntheticGraphBuilder b(std::move(props));

    auto random_label = [&](int min_size) {
        int len = rng.in_range(min_size, label_width);
        std::vector<int> atoms;
        while (static_cast<int>(atoms.size()) < len) {
            int a = rng.below(pool);
            if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
        }
        return atoms;
    };

    int current = b.add_node("c0");
    const int source = current;
    for (int i = 1; i <= stages; ++i) {
        int upper = b.add_node("a" + std::to_string(i));
        int lower = b.add_node("b" + std::to_string(i));
        int merge = b.add_node("c" + std::to_string(i));
        b.add_edge(current, upper, random_label(1));
        b.add_edge(upper, merge, {});
        b.add_edge(current, lower, random_label(1));
        b.add_edge(lower, merge, {});
        current = merge;
    }
    int sink = b.add_node("t");
    b.add_edge(current, sink, random_label(0));
    b.add_edge(sink, sink, {});
    return b.finish({source}, {sink});
}

CnfFormula parse_dimacs(std::istream& in) {
    CnfFormula cnf;
    int declared_clauses = -1;
    std::string line;
    std::vector<int> pending;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        if (line[0] == 'p') {
            std::istringstream hs(line);
            std::string p, fmt;
            if (!(hs >> p >> fmt >> cnf.num_vars >> declared_clauses) || fmt != "cnf")
                throw input_error("dimacs: malformed problem line '" + line + "'");
            have_header = true;
            continue;
        }
        if (!have_header) throw input_error("dimacs: clause before 'p cnf' header");
        std::istringstream ls(line);
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                if (pending.size() != 3)
                    throw input_error("dimacs: clause must have exactly 3 literals");
                cnf.clauses.push_back({pending[0], pending[1], pending[2]});
                pending.clear();
            } else {
                if (std::abs(lit) > cnf.num_vars)
                    throw input_error("dimacs: literal out of range: " + std::to_string(lit));
                pending.push_back(lit);
            }
        }
    }
    if (!have_header) throw input_error("dimacs: missing 'p cnf' header");
    if (!pending.empty()) throw input_error("dimacs: unterminated clause");
    if (declared_clauses >= 0 && declared_clauses != static_cast<int>(cnf.clauses.size()))
        throw input_error("dimacs: clause count does not match the header");
    return cnf;
}

bool brute_force_sat(const CnfFormula& cnf) {
    if (cnf.num_vars > 20) throw input_error("brute_force_sat: too many variables");
    const std::uint32_t limit = 1u << cnf.num_vars;
    for (std::uint32_t assignment = 0; assignment < limit; ++assignment) {
        bool ok = true;
        for (const auto& clause : cnf.clauses) {
            bool sat = false;
            for (int lit : clause) {
                bool value = (assignment >> (std::abs(lit) - 1)) & 1u;
                if ((lit > 0) == value) {
                    sat = true;
                    break;
                }
            }
            if (!sat) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

int MceClass::weight() const {
    int w = 0;
    for (const MceEdge& e : edges) w += e.weight;
    return w;
}

int MceInstance::node_id(const std::string& name) const {
    for (int i = 0; i < static_cast<int>(node_names.size()); ++i)
        if (node_names[static_cast<size_t>(i)] == name) return i;
    throw input_error("unknown mce node '" + name + "'");
}

MceInstance reduce_3sat_to_mce(const CnfFormula& cnf) {
    const int n = cnf.num_vars;
    const int m = static_cast<int>(cnf.clauses.size());
    if (n < 1) throw input_error("reduce_3sat_to_mce: formula must have at least one variable");
    if (m < 1) throw input_error("reduce_3sat_to_mce: formula must have at least one clause");
    for (const auto& clause : cnf.clauses)
        for (int lit : clause)
            if (lit == 0 || std::abs(lit) > n)
                throw input_error("reduce_3sat_to_mce: malformed clause literal");

    MceInstance inst;
    auto add = [&inst](const std::string& name) {
        inst.node_names.push_back(name);
        return static_cast<int>(inst.node_names.size()) - 1;
    };

    // Variable gadgets: entrance u_i, true rail u_i^t -> v_i^t, false
    // rail u_i^f -> v_i^f, exit v_i. The rail gaps are the candidates.
    std::vector<int> u(static_cast<size_t>(n)), ut(static_cast<size_t>(n)), vt(static_cast<size_t>(n)),
        uf(static_cast<size_t>(n)), vf(static_cast<size_t>(n)), v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::string suffix = std::to_string(i + 1);
        u[static_cast<size_t>(i)] = add("u" + suffix);
        ut[static_cast<size_t>(i)] = add("ut" + suffix);
        vt[static_cast<size_t>(i)] = add("vt" + suffix);
        uf[static_cast<size_t>(i)] = add("uf" + suffix);
        vf[static_cast<size_t>(i)] = add("vf" + suffix);
        v[static_cast<size_t>(i)] = add("v" + suffix);
        inst.base_edges.emplace_back(u[static_cast<size_t>(i)], ut[static_cast<size_t>(i)]);
        inst.base_edges.emplace_back(u[static_cast<size_t>(i)], uf[static_cast<size_t>(i)]);
        inst.base_edges.emplace_back(vt[static_cast<size_t>(i)], v[static_cast<size_t>(i)]);
        inst.base_edges.emplace_back(vf[static_cast<size_t>(i)], v[static_cast<size_t>(i)]);
        if (i > 0)
            inst.base_edges.emplace_back(v[static_cast<size_t>(i - 1)], u[static_cast<size_t>(i)]);
    }

    // Clause gadgets: entry a_j fans out to one rail per literal, rails
    // rejoin at exit b_j; the rail gaps belong to the literal's class.
    std::vector<int> a(static_cast<size_t>(m)), bexit(static_cast<size_t>(m));
    std::vector<std::array<int, 3>> aj(static_cast<size_t>(m)), bj(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) {
        std::string suffix = std::to_string(j + 1);
        a[static_cast<size_t>(j)] = add("a" + suffix);
        for (int k = 0; k < 3; ++k)
            aj[static_cast<size_t>(j)][static_cast<size_t>(k)] =
                add("a" + suffix + "_" + std::to_string(k + 1));
        for (int k = 0; k < 3; ++k)
            bj[static_cast<size_t>(j)][static_cast<size_t>(k)] =
                add("b" + suffix + "_" + std::to_string(k + 1));
        bexit[static_cast<size_t>(j)] = add("b" + suffix);
        for (int k = 0; k < 3; ++k) {
            inst.base_edges.emplace_back(a[static_cast<size_t>(j)],
                                         aj[static_cast<size_t>(j)][static_cast<size_t>(k)]);
            inst.base_edges.emplace_back(bj[static_cast<size_t>(j)][static_cast<size_t>(k)],
                                         bexit[static_cast<size_t>(j)]);
        }
        if (j > 0)
            inst.base_edges.emplace_back(bexit[static_cast<size_t>(j - 1)], a[static_cast<size_t>(j)]);
    }
    inst.base_edges.emplace_back(v[static_cast<size_t>(n - 1)], a[0]);

    inst.classes.resize(static_cast<size_t>(2 * n));
    for (int i = 0; i < n; ++i) {
        inst.classes[static_cast<size_t>(i)].name = "P" + std::to_string(i + 1);
        inst.classes[static_cast<size_t>(i)].edges.push_back(
            MceEdge{ut[static_cast<size_t>(i)], vt[static_cast<size_t>(i)], 1});
        inst.classes[static_cast<size_t>(n + i)].name = "N" + std::to_string(i + 1);
        inst.classes[static_cast<size_t>(n + i)].edges.push_back(
            MceEdge{uf[static_cast<size_t>(i)], vf[static_cast<size_t>(i)], 1});
    }
    for (int j = 0; j < m; ++j) {
        for (int k = 0; k < 3; ++k) {
            int lit = cnf.clauses[static_cast<size_t>(j)][static_cast<size_t>(k)];
            int cls = lit > 0 ? lit - 1 : n + (-lit - 1);
            inst.classes[static_cast<size_t>(cls)].edges.push_back(
                MceEdge{aj[static_cast<size_t>(j)][static_cast<size_t>(k)],
                        bj[static_cast<size_t>(j)][static_cast<size_t>(k)], 0});
        }
    }

    inst.source = u[0];
    inst.sink = bexit[static_cast<size_t>(m - 1)];
    inst.weight_limit = n;
    return inst;
}

namespace {

bool mce_connected(const MceInstance& inst, const std::vector<char>& chosen) {
    std::vector<std::vector<int>> out(inst.node_names.size());
    for (const auto& [i, j] : inst.base_edges) out[static_cast<size_t>(i)].push_back(j);
    for (size_t c = 0; c < inst.classes.size(); ++c)
        if (chosen[c])
            for (const MceEdge& e : inst.classes[c].edges)
                out[static_cast<size_t>(e.from)].push_back(e.to);
    std::vector<char> reached(inst.node_names.size(), 0);
    std::deque<int> queue{inst.source};
    reached[static_cast<size_t>(inst.source)] = 1;
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        if (x == inst.sink) return true;
        for (int y : out[static_cast<size_t>(x)])
            if (!reached[static_cast<size_t>(y)]) {
                reached[static_cast<size_t>(y)] = 1;
                queue.push_back(y);
            }
    }
    return false;
}

}  // namespace

MceSolution solve_mce_exact(const MceInstance& inst, int max_classes) {
    const int c = static_cast<int>(inst.classes.size());
    if (c > max_classes)
        throw input_error("solve_mce_exact: refusing " + std::to_string(c) + " classes (limit " +
                          std::to_string(max_classes) + ")");
    MceSolution best;
    std::vector<char> chosen(static_cast<size_t>(c), 0);
    const std::uint32_t limit = c >= 31 ? 0 : (1u << c);
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        int weight = 0;
        for (int i = 0; i < c; ++i) {
            chosen[static_cast<size_t>(i)] = (mask >> i) & 1u;
            if (chosen[static_cast<size_t>(i)]) weight += inst.classes[static_cast<size_t>(i)].weight();
        }
        if (best.feasible && weight >= best.weight) continue;
        if (mce_connected(inst, chosen)) {
            best.feasible = true;
            best.weight = weight;
            best.chosen_classes.clear();
            for (int i = 0; i < c; ++i)
                if (chosen[static_cast<size_t>(i)]) best.chosen_classes.push_back(i);
        }
    }
    return best;
}

RevisionGraph mce_to_revision_graph(const MceInstance& inst) {
    std::vector<std::string> class_names;
    for (const MceClass& cls : inst.classes) class_names.push_back(cls.name);
    SyntheticGraphBuilder b(std::move(class_names));
    for (const std::string& name : inst.node_names) b.add_node(name);
    for (const auto& [i, j] : inst.base_edges) b.add_edge(i, j, {});
    for (int c = 0; c < static_cast<int>(inst.classes.size()); ++c)
        for (const MceEdge& e : inst.classes[static_cast<size_t>(c)].edges)
            b.add_edge(e.from, e.to, {c});
    b.add_edge(inst.sink, inst.sink, {});
    return b.finish({inst.source}, {inst.sink});
}

namespace {

ExperimentRow run_cell(const ExperimentConfig& config, int dag_size, int seed_index) {
    ExperimentRow row;
    row.size = dag_size * dag_size;
    row.seed = config.base_seed + static_cast<std::uint64_t>(dag_size) * 1000003ull +
               static_cast<std::uint64_t>(seed_index);

    RandomDagParams params = config.shape;
    params.nodes_per_dag = dag_size;
    params.seed = row.seed;
    auto [fsm, spec] = gen_random_instance(params);
    RevisionGraph graph = build_revision_graph(fsm, spec);
    row.nodes = graph.n_real;
    row.edges = graph.transitions_unexpanded;
    row.atoms = graph.universe_size();

    auto t0 = std::chrono::steady_clock::now();
    RevisionOutcome outcome = aamrp(graph);
    auto t1 = std::chrono::steady_clock::now();
    row.aamrp_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    row.aamrp_cost = outcome.cost;
    row.verified = verify_outcome(fsm, spec, outcome);

    OracleOptions opts;
    opts.budget = config.oracle_budget;
    auto t2 = std::chrono::steady_clock::now();
    OracleResult oracle = brute_force_mrp(graph, opts);
    auto t3 = std::chrono::steady_clock::now();
    row.oracle_ms = std::chrono::duration<double, std::milli>(t3 - t2).count();
    switch (oracle.status) {
        case OracleResult::Status::Optimal:
            row.oracle_status = "optimal";
            row.oracle_cost = oracle.cost;
            row.ratio = oracle.cost == 0 ? 1.0
                                         : static_cast<double>(row.aamrp_cost) /
                                               static_cast<double>(oracle.cost);
            break;
        case OracleResult::Status::TimedOut:
            row.oracle_status = "timeout";
            break;
        case OracleResult::Status::Infeasible:
            row.oracle_status = "infeasible";
            break;
    }
    return row;
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
    struct Cell {
        int dag_size;
        int seed_index;
    };
    std::vector<Cell> cells;
    for (int size : config.dag_sizes)
        for (int i = 0; i < config.seeds_per_size; ++i) cells.push_back({size, i});

    std::vector<ExperimentRow> rows(cells.size());
    std::atomic<size_t> next{0};
    int workers = std::max(1, std::min<int>(config.threads, static_cast<int>(cells.size())));
    auto work = [&]() {
        while (true) {
            size_t idx = next.fetch_add(1);
            if (idx >= cells.size()) break;
            rows[idx] = run_cell(config, cells[idx].dag_size, cells[idx].seed_index);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return rows;
}

namespace {

std::string format_ms(double ms) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.3f", ms);
    return buffer;
}

std::string format_ratio(double r) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.4f", r);
    return buffer;
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<ExperimentRow>& rows) {
    os << "size,seed,nodes,edges,atoms,aamrp_cost,aamrp_ms,oracle_cost,oracle_ms,oracle_status,ratio\n";
    for (const ExperimentRow& row : rows) {
        os << row.size << ',' << row.seed << ',' << row.nodes << ',' << row.edges << ','
           << row.atoms << ',' << row.aamrp_cost << ',' << format_ms(row.aamrp_ms) << ',';
        if (row.oracle_cost >= 0) os << row.oracle_cost;
        os << ',' << format_ms(row.oracle_ms) << ',' << row.oracle_status << ',';
        if (row.ratio >= 0) os << format_ratio(row.ratio);
        os << '\n';
    }
}

void write_summary(std::ostream& os, const std::vector<ExperimentRow>& rows) {
    std::vector<int> sizes;
    for (const ExperimentRow& row : rows)
        if (std::find(sizes.begin(), sizes.end(), row.size) == sizes.end())
            sizes.push_back(row.size);
    std::sort(sizes.begin(), sizes.end());

    os << "size  oracle_ms(min/avg/max)        oracle_cost(min/avg/max)  succ     "
          "aamrp_ms(min/avg/max)         aamrp_cost(min/avg/max)   ratio(min/avg/max)\n";
    for (int size : sizes) {
        struct Stats {
            double min = 1e300, max = -1e300, sum = 0;
            int n = 0;
            void add(double x) {
                min = std::min(min, x);
                max = std::max(max, x);
                sum += x;
                ++n;
            }
            double avg() const { return n ? sum / n : 0; }
        };
        Stats o_ms, o_cost, a_ms, a_cost, ratio;
        int completed = 0, total = 0;
        for (const ExperimentRow& row : rows) {
            if (row.size != size) continue;
            ++total;
            a_ms.add(row.aamrp_ms);
            a_cost.add(row.aamrp_cost);
            if (row.oracle_cost >= 0) {
                ++completed;
                o_ms.add(row.oracle_ms);
                o_cost.add(row.oracle_cost);
            }
            if (row.ratio >= 0) ratio.add(row.ratio);
        }
        char line[256];
        std::snprintf(line, sizeof line,
                      "%-5d %8.3f/%9.3f/%9.3f  %5.0f/%7.3f/%5.0f         %3d/%-3d  "
                      "%8.3f/%9.3f/%9.3f  %5.0f/%7.3f/%5.0f       %.3f/%.4f/%.3f\n",
                      size, o_ms.n ? o_ms.min : 0.0, o_ms.avg(), o_ms.n ? o_ms.max : 0.0,
                      o_cost.n ? o_cost.min : 0.0, o_cost.avg(), o_cost.n ? o_cost.max : 0.0,
                      completed, total, a_ms.min, a_ms.avg(), a_ms.max, a_cost.min, a_cost.avg(),
                      a_cost.max, ratio.n ? ratio.min : 0.0, ratio.avg(), ratio.n ? ratio.max : 0.0);
        os << line;
    }
}

}  // namespace specrev
