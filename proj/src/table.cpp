#include "rasq/table.hpp"

#include <algorithm>
#include <sstream>

namespace rasq {

const char* to_string(EntryStatus s) {
    switch (s) {
        case EntryStatus::YesAvailable: return "yes";
        case EntryStatus::ProvenTrue: return "proven";
        case EntryStatus::ProvenFalse: return "refuted";
        case EntryStatus::AssumedFalse: return "assumed-false";
    }
    return "?";
}

ProgramTable ProgramTable::init(const Program& prog) {
    ProgramTable t;
    t.reset(prog);
    return t;
}

void ProgramTable::reset(const Program& prog) {
    entries_.assign(size_t(prog.atom_count()), std::nullopt);
    trail_.clear();
    frames_.clear();
    next_frame_ = 0;
    for (AtomId a = 0; a < prog.atom_count(); ++a)
        if (prog.is_head(a))
            entries_[size_t(a)] = TableEntry{EntryStatus::YesAvailable, true, -1, AtomSet()};
}

const TableEntry* ProgramTable::lookup(AtomId a) const {
    const auto& e = entries_[size_t(a)];
    if (!e || e->status == EntryStatus::YesAvailable) return nullptr;
    return &*e;
}

bool ProgramTable::yes_available(AtomId a) const {
    const auto& e = entries_[size_t(a)];
    return e && e->status == EntryStatus::YesAvailable;
}

int ProgramTable::open_frame() {
    int id = next_frame_++;
    frames_.push_back({id, trail_.size()});
    return id;
}

void ProgramTable::close_frame(int frame) {
    while (!frames_.empty() && frames_.back().id >= frame) frames_.pop_back();
}

void ProgramTable::retract_frame(int frame) {
    auto it = std::find_if(frames_.begin(), frames_.end(),
                           [&](const Frame& f) { return f.id == frame; });
    size_t to = it == frames_.end() ? trail_.size() : it->mark;
    rewind(to);
    close_frame(frame);
}

void ProgramTable::rewind(size_t mark) {
    std::vector<UndoRec> kept;
    while (trail_.size() > mark) {
        UndoRec rec = std::move(trail_.back());
        trail_.pop_back();
        auto& cur = entries_[size_t(rec.atom)];
        if (cur && cur->permanent) {   // permanent lemmas survive
            kept.push_back(std::move(rec));
            continue;
        }
        cur = std::move(rec.prior);
    }
    for (auto it = kept.rbegin(); it != kept.rend(); ++it) trail_.push_back(std::move(*it));
}

void ProgramTable::rewind_exact(size_t mark) {
    while (trail_.size() > mark) {
        UndoRec rec = std::move(trail_.back());
        trail_.pop_back();
        entries_[size_t(rec.atom)] = std::move(rec.prior);
    }
}

void ProgramTable::record(AtomId a, TableEntry e) {
    trail_.push_back({a, entries_[size_t(a)]});
    entries_[size_t(a)] = std::move(e);
}

void ProgramTable::on_success(AtomId a, int frame, const AtomSet& deps, const AtomSet& guard) {
    const auto& cur = entries_[size_t(a)];
    if (cur && cur->status != EntryStatus::YesAvailable) {
        if (cur->status == EntryStatus::ProvenTrue) return;   // idempotent
        if (cur->permanent)
            throw TableConflictError("success of atom with a conflicting permanent entry");
    }
    record(a, TableEntry{EntryStatus::ProvenTrue, deps.none(), frame, deps, guard});
}

void ProgramTable::on_failure(AtomId a, int frame, const AtomSet& deps) {
    const auto& cur = entries_[size_t(a)];
    if (cur && cur->status != EntryStatus::YesAvailable) {
        if (cur->status == EntryStatus::ProvenFalse || cur->status == EntryStatus::AssumedFalse)
            return;
        if (cur->permanent)
            throw TableConflictError("failure of atom with a conflicting permanent entry");
    }
    record(a, TableEntry{EntryStatus::ProvenFalse, deps.none(), frame, deps});
}

void ProgramTable::on_neg_success(AtomId a, NegSuccessKind kind, int frame, const AtomSet& deps) {
    const auto& cur = entries_[size_t(a)];
    if (cur && cur->status != EntryStatus::YesAvailable) {
        if (cur->status == EntryStatus::ProvenFalse || cur->status == EntryStatus::AssumedFalse)
            return;
        if (cur->permanent)
            throw TableConflictError("not-A recorded while A is permanently proven");
    }
    bool definite = kind == NegSuccessKind::ByFailure && deps.none();
    record(a, TableEntry{definite ? EntryStatus::ProvenFalse : EntryStatus::AssumedFalse,
                         definite, frame, deps});
}

void ProgramTable::promote_all() {
    for (auto& e : entries_)
        if (e && !e->permanent) {
            e->permanent = true;
            e->deps.clear();
        }
    trail_.clear();
    frames_.clear();
}

bool ProgramTable::has_hypothetical() const {
    for (const auto& e : entries_)
        if (e && !e->permanent) return true;
    return false;
}

std::vector<std::pair<AtomId, TableEntry>> ProgramTable::snapshot() const {
    std::vector<std::pair<AtomId, TableEntry>> out;
    for (AtomId a = 0; a < AtomId(entries_.size()); ++a)
        if (entries_[size_t(a)]) out.push_back({a, *entries_[size_t(a)]});
    return out;
}

std::string ProgramTable::render(const Program& prog) const {
    std::vector<std::string> yes, proven, refuted, hypo;
    for (AtomId a = 0; a < AtomId(entries_.size()); ++a) {
        const auto& e = entries_[size_t(a)];
        if (!e) continue;
        switch (e->status) {
            case EntryStatus::YesAvailable: yes.push_back("yes_" + prog.name(a)); break;
            case EntryStatus::ProvenTrue:
                (e->permanent ? proven : hypo).push_back(prog.name(a));
                break;
            case EntryStatus::ProvenFalse:
                (e->permanent ? refuted : hypo).push_back("not " + prog.name(a));
                break;
            case EntryStatus::AssumedFalse:
                (e->permanent ? refuted : hypo).push_back("not " + prog.name(a));
                break;
        }
    }
    for (auto* v : {&yes, &proven, &refuted, &hypo}) std::sort(v->begin(), v->end());
    std::ostringstream os;
    auto line = [&](const char* label, const std::vector<std::string>& v) {
        os << label << ":";
        for (const auto& s : v) os << " " << s;
        os << "\n";
    };
    line("yes", yes);
    line("proven", proven);
    line("refuted", refuted);
    line("hypothetical", hypo);
    return os.str();
}

} // namespace rasq
