#ifndef RASQ_TABLE_HPP
#define RASQ_TABLE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rasq/program.hpp"

namespace rasq {

struct TableConflictError : std::logic_error {
    using std::logic_error::logic_error;
};

enum class EntryStatus { YesAvailable, ProvenTrue, ProvenFalse, AssumedFalse };

const char* to_string(EntryStatus s);

struct TableEntry {
    EntryStatus status = EntryStatus::YesAvailable;
    bool permanent = false;      // hypothetical entries roll back
    int frame = -1;              // rule-instance frame that created it
    AtomSet deps;                // assumed-false atoms the entry rests on
    AtomSet guard;               // ProvenTrue only: negations its derivation consumed
    bool operator==(const TableEntry& o) const {
        return status == o.status && permanent == o.permanent && deps == o.deps;
    }
};

enum class NegSuccessKind { ByFailure, Hypothesis3c, Hypothesis3d };

// Per-session program table: yes_A availability for every head atom,
// proven/refuted lemmas, retractable hypotheses, and an undo trail whose
// replay restores any earlier snapshot.
class ProgramTable {
public:
    ProgramTable() = default;
    static ProgramTable init(const Program& prog);

    // Restore the freshly initialized state.
    void reset(const Program& prog);

    const TableEntry* lookup(AtomId a) const;
    bool yes_available(AtomId a) const;

    // Rule-instance frames. Frames nest; retract_frame undoes every
    // hypothetical entry recorded since the frame opened.
    int open_frame();
    void close_frame(int frame);
    void retract_frame(int frame);
    int current_frame() const { return frames_.empty() ? -1 : frames_.back().id; }

    // Trail marks for scoped rollback; rewinding keeps permanent entries
    // (their undo records survive above the mark so an exact rewind can
    // still reach states before them).
    size_t mark() const { return trail_.size(); }
    void rewind(size_t mark);
    // Restore the exact state at `mark`, permanent entries included.
    void rewind_exact(size_t mark);

    // Table updates (Definition-level API). Success/failure of atom A;
    // success of literal not A. Permanence is decided by `deps`: an empty
    // dependency set is a context-free lemma.
    void on_success(AtomId a, int frame, const AtomSet& deps, const AtomSet& guard = {});
    void on_failure(AtomId a, int frame, const AtomSet& deps);
    void on_neg_success(AtomId a, NegSuccessKind kind, int frame, const AtomSet& deps);

    // Promote every hypothetical entry to a permanent context lemma.
    void promote_all();

    bool has_hypothetical() const;
    int atom_count() const { return int(entries_.size()); }

    // Entire current state, for snapshot-equality tests and deltas.
    std::vector<std::pair<AtomId, TableEntry>> snapshot() const;

    // Grouped rendering for the REPL's :table command.
    std::string render(const Program& prog) const;

private:
    void record(AtomId a, TableEntry e);

    std::vector<std::optional<TableEntry>> entries_;
    struct UndoRec {
        AtomId atom;
        std::optional<TableEntry> prior;
    };
    std::vector<UndoRec> trail_;
    struct Frame {
        int id;
        size_t mark;
    };
    std::vector<Frame> frames_;
    int next_frame_ = 0;
};

} // namespace rasq

#endif
