#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace specrev {

// Raised on malformed or inconsistent user input (files, atoms out of
// range, unknown proposition names, ...).
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

using PropId = int;

// Interning table for atomic propositions. Ids are dense 0..size()-1.
class PropositionSet {
public:
    PropId intern(const std::string& name);
    PropId id_of(const std::string& name) const;  // throws input_error
    std::optional<PropId> try_id_of(const std::string& name) const;
    const std::string& name_of(PropId id) const { return names_.at(static_cast<size_t>(id)); }
    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
    std::map<std::string, PropId> index_;
};

struct Literal {
    PropId ap = -1;
    bool negated = false;

    friend bool operator==(const Literal& a, const Literal& b) {
        return a.ap == b.ap && a.negated == b.negated;
    }
    friend bool operator<(const Literal& a, const Literal& b) {
        return a.ap != b.ap ? a.ap < b.ap : a.negated < b.negated;
    }
};

std::string literal_to_string(const Literal& lit, const std::vector<std::string>& prop_names);

// One conjunctive clause of a DNF guard. Literals are kept sorted and
// unique; a clause never mentions the same proposition with both
// polarities (such clauses are contradictions and are eliminated).
struct Clause {
    std::vector<Literal> literals;

    bool contains(const Literal& lit) const;
    // True iff every positive literal's proposition is in `label` and no
    // negated literal's proposition is. `label` must be sorted.
    bool satisfied_by(const std::vector<PropId>& label) const;

    friend bool operator==(const Clause& a, const Clause& b) { return a.literals == b.literals; }
    friend bool operator<(const Clause& a, const Clause& b) { return a.literals < b.literals; }
};

// Transition guard: either the constant true or a non-empty DNF clause
// list. Clause order is significant; it is the clause index used by
// removal atoms. "False" guards are represented by the absence of an
// entry in SpecAutomaton::guards.
struct Guard {
    bool top = false;
    std::vector<Clause> clauses;

    static Guard make_top() { return Guard{true, {}}; }
    static Guard dnf(std::vector<Clause> cs) { return Guard{false, std::move(cs)}; }

    bool satisfied_by(const std::vector<PropId>& label) const;

    friend bool operator==(const Guard& a, const Guard& b) {
        return a.top == b.top && a.clauses == b.clauses;
    }
};

struct GuardSimplification {
    std::optional<Guard> guard;   // nullopt: all clauses dropped, guard is false
    int dropped_clauses = 0;      // contradictions and duplicates eliminated
};

// Normalizes a raw DNF clause list: deduplicates literals inside each
// clause, drops clauses that contain a proposition with both polarities,
// drops exact duplicate clauses, and collapses to "true" when any clause
// becomes empty. Clause order is preserved.
GuardSimplification simplify_guard(const std::vector<std::vector<Literal>>& raw);

struct Fsm {
    std::vector<std::string> state_names;
    std::vector<int> initial;                  // sorted, non-empty
    std::vector<std::vector<int>> out;         // sorted adjacency
    std::vector<std::vector<PropId>> labels;   // sorted proposition ids per state

    int num_states() const { return static_cast<int>(state_names.size()); }
    int num_transitions() const;
    int state_id(const std::string& name) const;  // throws input_error

    // Checks structural invariants, including that every state is
    // reachable from some initial state. Throws input_error on violation.
    void validate() const;
};

struct SpecAutomaton {
    std::vector<std::string> state_names;
    int initial = 0;
    std::vector<int> finals;                       // sorted, non-empty
    std::map<std::pair<int, int>, Guard> guards;   // absent pair = no transition

    int num_states() const { return static_cast<int>(state_names.size()); }
    int state_id(const std::string& name) const;
    void validate() const;
};

// One removable literal occurrence: a literal inside one clause of one
// spec-edge guard.
struct RemovalAtom {
    std::pair<int, int> spec_edge{-1, -1};
    int clause = 0;
    Literal literal;

    friend bool operator==(const RemovalAtom& a, const RemovalAtom& b) {
        return a.spec_edge == b.spec_edge && a.clause == b.clause && a.literal == b.literal;
    }
    friend bool operator<(const RemovalAtom& a, const RemovalAtom& b) {
        if (a.spec_edge != b.spec_edge) return a.spec_edge < b.spec_edge;
        if (a.clause != b.clause) return a.clause < b.clause;
        return a.literal < b.literal;
    }
};

// A set of removal atoms; its cardinality is the revision distance.
struct RevisionSet {
    std::vector<RemovalAtom> atoms;  // sorted, unique

    void insert(const RemovalAtom& atom);
    bool contains(const RemovalAtom& atom) const;
    int size() const { return static_cast<int>(atoms.size()); }
    bool empty() const { return atoms.empty(); }

    friend bool operator==(const RevisionSet& a, const RevisionSet& b) { return a.atoms == b.atoms; }
};

inline int distance(const RevisionSet& rev) { return rev.size(); }

// Product of an FSM with a spec automaton. State (q,s) has the flat id
// q * n_spec + s; a transition (q,s)->(q',s') exists iff q->q' in the
// FSM and the guard on (s,s') is satisfied by the label of q'.
struct Product {
    int n_fsm = 0;
    int n_spec = 0;
    std::vector<std::vector<int>> out;  // sorted adjacency over flat ids
    std::vector<int> initials;          // sorted
    std::vector<char> is_final;
    int num_transitions = 0;

    int num_states() const { return n_fsm * n_spec; }
    int fsm_of(int v) const { return v / n_spec; }
    int spec_of(int v) const { return v % n_spec; }
    bool has_edge(int u, int v) const;
};

Product build_product(const Fsm& fsm, const SpecAutomaton& spec);

// Finite witness of an accepting run: a stem from an initial state to a
// final state plus a cycle from that final state back to itself.
struct Lasso {
    std::vector<int> prefix;  // initial .. final
    std::vector<int> cycle;   // final .. final, at least one edge
};

// Emptiness check via reachability + strongly connected components.
// Returns a replayable witness iff some reachable final state lies on a
// cycle (self-loops count).
std::optional<Lasso> is_satisfiable(const Product& product);

// Checks that the witness replays on the product.
bool lasso_is_valid(const Product& product, const Lasso& lasso);

// Throws input_error if the atom does not name a literal of the spec.
void validate_atom(const SpecAutomaton& spec, const RemovalAtom& atom);

// Replaces every literal named by `rev` with true inside its clause. A
// clause whose literals are all removed makes the whole guard true.
// States, initial state and finals are unchanged.
SpecAutomaton apply_revision(const SpecAutomaton& spec, const RevisionSet& rev);

// Spec with every guard replaced by true; the loosest relaxation that
// keeps the transition structure.
SpecAutomaton fully_relaxed(const SpecAutomaton& spec);

// Decides whether `relaxed` is a relaxation of `base`: same states,
// initial and finals, and every guard of `relaxed` derivable from the
// corresponding guard of `base` by removing literals (clauses aligned by
// index). On success returns a witnessing revision set.
std::optional<RevisionSet> is_relaxation(const SpecAutomaton& base, const SpecAutomaton& relaxed);

}  // namespace specrev
