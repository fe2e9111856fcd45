#include "specrev/automata.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace specrev {

PropId PropositionSet::intern(const std::string& name) {
    if (name.empty()) throw input_error("proposition name must be non-empty");
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    PropId id = static_cast<PropId>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    return id;
}

PropId PropositionSet::id_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw input_error("unknown proposition '" + name + "'");
    return it->second;
}

std::optional<PropId> PropositionSet::try_id_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::string literal_to_string(const Literal& lit, const std::vector<std::string>& prop_names) {
    std::string s = lit.negated ? "!" : "";
    s += prop_names.at(static_cast<size_t>(lit.ap));
    return s;
}

bool Clause::contains(const Literal& lit) const {
    return std::binary_search(literals.begin(), literals.end(), lit);
}

bool Clause::satisfied_by(const std::vector<PropId>& label) const {
    for (const Literal& lit : literals) {
        bool holds = std::binary_search(label.begin(), label.end(), lit.ap);
        if (holds == lit.negated) return false;
    }
    return true;
}

bool Guard::satisfied_by(const std::vector<PropId>& label) const {
    if (top) return true;
    for (const Clause& c : clauses)
        if (c.satisfied_by(label)) return true;
    return false;
}

GuardSimplification simplify_guard(const std::vector<std::vector<Literal>>& raw) {
    GuardSimplification result;
    std::vector<Clause> kept;
    for (const auto& raw_clause : raw) {
        Clause c;
        c.literals = raw_clause;
        std::sort(c.literals.begin(), c.literals.end());
        c.literals.erase(std::unique(c.literals.begin(), c.literals.end()), c.literals.end());
        bool contradiction = false;
        for (size_t i = 0; i + 1 < c.literals.size(); ++i) {
            if (c.literals[i].ap == c.literals[i + 1].ap) {
                contradiction = true;
                break;
            }
        }
        if (contradiction) {
            ++result.dropped_clauses;
            continue;
        }
        if (c.literals.empty()) {
            // An empty conjunction is true, so the whole guard is.
            result.guard = Guard::make_top();
            return result;
        }
        if (std::find(kept.begin(), kept.end(), c) != kept.end()) {
            ++result.dropped_clauses;
            continue;
        }
        kept.push_back(std::move(c));
    }
    if (kept.empty()) {
        result.guard = std::nullopt;
        return result;
    }
    result.guard = Guard::dnf(std::move(kept));
    return result;
}

int Fsm::num_transitions() const {
    int n = 0;
    for (const auto& succ : out) n += static_cast<int>(succ.size());
    return n;
}

int Fsm::state_id(const std::string& name) const {
    for (int i = 0; i < num_states(); ++i)
        if (state_names[static_cast<size_t>(i)] == name) return i;
    throw input_error("unknown fsm state '" + name + "'");
}

void Fsm::validate() const {
    const int n = num_states();
    if (n == 0) throw input_error("fsm.states: must be non-empty");
    {
        std::set<std::string> seen;
        for (const auto& s : state_names)
            if (!seen.insert(s).second) throw input_error("fsm.states: duplicate state '" + s + "'");
    }
    if (initial.empty()) throw input_error("fsm.init: must be non-empty");
    for (int q : initial)
        if (q < 0 || q >= n) throw input_error("fsm.init: state index out of range");
    if (static_cast<int>(out.size()) != n || static_cast<int>(labels.size()) != n)
        throw input_error("fsm: adjacency/label tables must cover every state");
    for (const auto& succ : out)
        for (int q : succ)
            if (q < 0 || q >= n) throw input_error("fsm.edges: state index out of range");

    std::vector<char> reached(static_cast<size_t>(n), 0);
    std::deque<int> queue;
    for (int q : initial) {
        if (!reached[static_cast<size_t>(q)]) {
            reached[static_cast<size_t>(q)] = 1;
            queue.push_back(q);
        }
    }
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (int q2 : out[static_cast<size_t>(q)]) {
            if (!reached[static_cast<size_t>(q2)]) {
                reached[static_cast<size_t>(q2)] = 1;
                queue.push_back(q2);
            }
        }
    }
    for (int q = 0; q < n; ++q)
        if (!reached[static_cast<size_t>(q)])
            throw input_error("fsm: state '" + state_names[static_cast<size_t>(q)] +
                              "' is not reachable from any initial state");
}

int SpecAutomaton::state_id(const std::string& name) const {
    for (int i = 0; i < num_states(); ++i)
        if (state_names[static_cast<size_t>(i)] == name) return i;
    throw input_error("unknown spec state '" + name + "'");
}

void SpecAutomaton::validate() const {
    const int n = num_states();
    if (n == 0) throw input_error("spec.states: must be non-empty");
    {
        std::set<std::string> seen;
        for (const auto& s : state_names)
            if (!seen.insert(s).second) throw input_error("spec.states: duplicate state '" + s + "'");
    }
    if (initial < 0 || initial >= n) throw input_error("spec.init: state index out of range");
    if (finals.empty()) throw input_error("spec.finals: must be non-empty");
    for (int s : finals)
        if (s < 0 || s >= n) throw input_error("spec.finals: state index out of range");
    for (const auto& [edge, guard] : guards) {
        if (edge.first < 0 || edge.first >= n || edge.second < 0 || edge.second >= n)
            throw input_error("spec.transitions: state index out of range");
        if (!guard.top && guard.clauses.empty())
            throw input_error("spec.transitions: DNF guard must have at least one clause");
        for (const Clause& c : guard.clauses)
            if (c.literals.empty())
                throw input_error("spec.transitions: clause must be non-empty");
    }
}

bool Product::has_edge(int u, int v) const {
    const auto& succ = out[static_cast<size_t>(u)];
    return std::binary_search(succ.begin(), succ.end(), v);
}

Product build_product(const Fsm& fsm, const SpecAutomaton& spec) {
    Product p;
    p.n_fsm = fsm.num_states();
    p.n_spec = spec.num_states();
    p.out.assign(static_cast<size_t>(p.num_states()), {});
    p.is_final.assign(static_cast<size_t>(p.num_states()), 0);

    for (int q = 0; q < p.n_fsm; ++q) {
        for (int s = 0; s < p.n_spec; ++s) {
            auto& succ = p.out[static_cast<size_t>(q * p.n_spec + s)];
            for (int q2 : fsm.out[static_cast<size_t>(q)]) {
                const auto& label = fsm.labels[static_cast<size_t>(q2)];
                for (const auto& [edge, guard] : spec.guards) {
                    if (edge.first != s) continue;
                    if (guard.satisfied_by(label)) succ.push_back(q2 * p.n_spec + edge.second);
                }
            }
            std::sort(succ.begin(), succ.end());
            succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
            p.num_transitions += static_cast<int>(succ.size());
        }
    }
    for (int q0 : fsm.initial) p.initials.push_back(q0 * p.n_spec + spec.initial);
    std::sort(p.initials.begin(), p.initials.end());
    for (int q = 0; q < p.n_fsm; ++q)
        for (int s : spec.finals) p.is_final[static_cast<size_t>(q * p.n_spec + s)] = 1;
    return p;
}

namespace {

// Iterative Tarjan; returns component id per node (ids are assigned in
// completion order) and component sizes.
void tarjan_scc(const std::vector<std::vector<int>>& out, std::vector<int>& comp,
                std::vector<int>& comp_size) {
    const int n = static_cast<int>(out.size());
    comp.assign(static_cast<size_t>(n), -1);
    comp_size.clear();
    std::vector<int> index(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0);
    std::vector<char> on_stack(static_cast<size_t>(n), 0);
    std::vector<int> stack;
    int next_index = 0;

    struct Frame {
        int v;
        size_t child;
    };
    std::vector<Frame> call;

    for (int root = 0; root < n; ++root) {
        if (index[static_cast<size_t>(root)] != -1) continue;
        call.push_back({root, 0});
        index[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = next_index++;
        stack.push_back(root);
        on_stack[static_cast<size_t>(root)] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& succ = out[static_cast<size_t>(f.v)];
            if (f.child < succ.size()) {
                int w = succ[f.child++];
                if (index[static_cast<size_t>(w)] == -1) {
                    index[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = next_index++;
                    stack.push_back(w);
                    on_stack[static_cast<size_t>(w)] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[static_cast<size_t>(w)]) {
                    low[static_cast<size_t>(f.v)] =
                        std::min(low[static_cast<size_t>(f.v)], index[static_cast<size_t>(w)]);
                }
            } else {
                if (low[static_cast<size_t>(f.v)] == index[static_cast<size_t>(f.v)]) {
                    int cid = static_cast<int>(comp_size.size());
                    comp_size.push_back(0);
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<size_t>(w)] = 0;
                        comp[static_cast<size_t>(w)] = cid;
                        ++comp_size[static_cast<size_t>(cid)];
                        if (w == f.v) break;
                    }
                }
                int v = f.v;
                call.pop_back();
                if (!call.empty()) {
                    int parent = call.back().v;
                    low[static_cast<size_t>(parent)] =
                        std::min(low[static_cast<size_t>(parent)], low[static_cast<size_t>(v)]);
                }
            }
        }
    }
}

// BFS parent tree from `sources` over `out`; parent[v] = -1 for sources
// and unreached nodes.
std::vector<int> bfs_parents(const std::vector<std::vector<int>>& out,
                             const std::vector<int>& sources, std::vector<char>& reached) {
    const size_t n = out.size();
    std::vector<int> parent(n, -1);
    reached.assign(n, 0);
    std::deque<int> queue;
    for (int s : sources) {
        if (!reached[static_cast<size_t>(s)]) {
            reached[static_cast<size_t>(s)] = 1;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : out[static_cast<size_t>(v)]) {
            if (!reached[static_cast<size_t>(w)]) {
                reached[static_cast<size_t>(w)] = 1;
                parent[static_cast<size_t>(w)] = v;
                queue.push_back(w);
            }
        }
    }
    return parent;
}

std::vector<int> walk_parents(const std::vector<int>& parent, int from_target) {
    std::vector<int> path{from_target};
    int v = from_target;
    while (parent[static_cast<size_t>(v)] != -1) {
        v = parent[static_cast<size_t>(v)];
        path.push_back(v);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

std::optional<Lasso> is_satisfiable(const Product& product) {
    std::vector<char> reached;
    std::vector<int> parent = bfs_parents(product.out, product.initials, reached);

    std::vector<int> comp, comp_size;
    tarjan_scc(product.out, comp, comp_size);

    for (int f = 0; f < product.num_states(); ++f) {
        if (!product.is_final[static_cast<size_t>(f)] || !reached[static_cast<size_t>(f)]) continue;
        bool on_cycle = comp_size[static_cast<size_t>(comp[static_cast<size_t>(f)])] > 1 ||
                        product.has_edge(f, f);
        if (!on_cycle) continue;

        Lasso lasso;
        lasso.prefix = walk_parents(parent, f);
        if (product.has_edge(f, f)) {
            lasso.cycle = {f, f};
        } else {
            // Shortest way back to f inside its component.
            std::vector<std::vector<int>> restricted(product.out.size());
            for (int v = 0; v < product.num_states(); ++v) {
                if (comp[static_cast<size_t>(v)] != comp[static_cast<size_t>(f)]) continue;
                for (int w : product.out[static_cast<size_t>(v)])
                    if (comp[static_cast<size_t>(w)] == comp[static_cast<size_t>(f)])
                        restricted[static_cast<size_t>(v)].push_back(w);
            }
            std::vector<char> cyc_reached;
            std::vector<int> cyc_parent =
                bfs_parents(restricted, restricted[static_cast<size_t>(f)], cyc_reached);
            // The walk roots at one of f's successors, so the cycle has at
            // least one edge.
            std::vector<int> back = walk_parents(cyc_parent, f);
            lasso.cycle.push_back(f);
            for (int v : back) lasso.cycle.push_back(v);
        }
        return lasso;
    }
    return std::nullopt;
}

bool lasso_is_valid(const Product& product, const Lasso& lasso) {
    if (lasso.prefix.empty() || lasso.cycle.size() < 2) return false;
    if (!std::binary_search(product.initials.begin(), product.initials.end(), lasso.prefix.front()))
        return false;
    int final_state = lasso.prefix.back();
    if (!product.is_final[static_cast<size_t>(final_state)]) return false;
    if (lasso.cycle.front() != final_state || lasso.cycle.back() != final_state) return false;
    for (size_t i = 0; i + 1 < lasso.prefix.size(); ++i)
        if (!product.has_edge(lasso.prefix[i], lasso.prefix[i + 1])) return false;
    for (size_t i = 0; i + 1 < lasso.cycle.size(); ++i)
        if (!product.has_edge(lasso.cycle[i], lasso.cycle[i + 1])) return false;
    return true;
}

void validate_atom(const SpecAutomaton& spec, const RemovalAtom& atom) {
    auto it = spec.guards.find(atom.spec_edge);
    if (it == spec.guards.end()) throw input_error("revision atom names a spec edge with no transition");
    const Guard& guard = it->second;
    if (guard.top) throw input_error("revision atom names a true-guarded spec edge");
    if (atom.clause < 0 || atom.clause >= static_cast<int>(guard.clauses.size()))
        throw input_error("revision atom clause index out of range");
    if (!guard.clauses[static_cast<size_t>(atom.clause)].contains(atom.literal))
        throw input_error("revision atom literal not present in the named clause");
}

SpecAutomaton apply_revision(const SpecAutomaton& spec, const RevisionSet& rev) {
    for (const RemovalAtom& atom : rev.atoms) validate_atom(spec, atom);
    SpecAutomaton revised = spec;
    for (const RemovalAtom& atom : rev.atoms) {
        Guard& guard = revised.guards.at(atom.spec_edge);
        if (guard.top) continue;  // a previous atom already emptied a clause
        auto& lits = guard.clauses[static_cast<size_t>(atom.clause)].literals;
        lits.erase(std::remove(lits.begin(), lits.end(), atom.literal), lits.end());
        if (lits.empty()) guard = Guard::make_top();
    }
    return revised;
}

SpecAutomaton fully_relaxed(const SpecAutomaton& spec) {
    SpecAutomaton relaxed = spec;
    for (auto& [edge, guard] : relaxed.guards) guard = Guard::make_top();
    return relaxed;
}

std::optional<RevisionSet> is_relaxation(const SpecAutomaton& base, const SpecAutomaton& relaxed) {
    if (base.state_names != relaxed.state_names) return std::nullopt;
    if (base.initial != relaxed.initial) return std::nullopt;
    if (base.finals != relaxed.finals) return std::nullopt;

    RevisionSet witness;
    for (const auto& [edge, base_guard] : base.guards)
        if (relaxed.guards.find(edge) == relaxed.guards.end()) return std::nullopt;  // edge deleted
    for (const auto& [edge, relaxed_guard] : relaxed.guards) {
        auto it = base.guards.find(edge);
        if (it == base.guards.end()) return std::nullopt;  // edge added
        const Guard& base_guard = it->second;

        if (relaxed_guard.top) {
            if (base_guard.top) continue;
            // Some clause must be emptied; pick the cheapest.
            const Clause* best = nullptr;
            int best_idx = -1;
            for (size_t i = 0; i < base_guard.clauses.size(); ++i) {
                const Clause& c = base_guard.clauses[i];
                if (!best || c.literals.size() < best->literals.size()) {
                    best = &c;
                    best_idx = static_cast<int>(i);
                }
            }
            for (const Literal& lit : best->literals)
                witness.insert(RemovalAtom{edge, best_idx, lit});
            continue;
        }
        if (base_guard.top) return std::nullopt;  // guard strengthened
        if (base_guard.clauses.size() != relaxed_guard.clauses.size()) return std::nullopt;
        for (size_t i = 0; i < base_guard.clauses.size(); ++i) {
            const Clause& from = base_guard.clauses[i];
            const Clause& to = relaxed_guard.clauses[i];
            for (const Literal& lit : to.literals)
                if (!from.contains(lit)) return std::nullopt;  // literal added
            for (const Literal& lit : from.literals)
                if (!to.contains(lit)) witness.insert(RemovalAtom{edge, static_cast<int>(i), lit});
        }
    }
    return witness;
}

void RevisionSet::insert(const RemovalAtom& atom) {
    auto it = std::lower_bound(atoms.begin(), atoms.end(), atom);
    if (it == atoms.end() || !(*it == atom)) atoms.insert(it, atom);
}

bool RevisionSet::contains(const RemovalAtom& atom) const {
    return std::binary_search(atoms.begin(), atoms.end(), atom);
}

}  // namespace specrev
