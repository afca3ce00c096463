#include "rasq/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace rasq {

RuleSet all_rules(const Program& prog) {
    RuleSet rs(prog.rules.size());
    std::iota(rs.begin(), rs.end(), 0);
    return rs;
}

DepGraph build_graph(const Program& prog) { return build_graph(prog, all_rules(prog)); }

DepGraph build_graph(const Program& prog, const RuleSet& rules) {
    DepGraph g;
    g.n = prog.atom_count();
    g.out.assign(size_t(g.n), {});
    for (int ri : rules) {
        const Rule& r = prog.rules[size_t(ri)];
        for (const Literal& l : r.body) {
            auto& es = g.out[size_t(r.head)];
            DepGraph::Edge e{l.atom, l.negated};
            if (std::find(es.begin(), es.end(), e) == es.end()) es.push_back(e);
        }
    }
    return g;
}

AtomSet dependencies_of(const DepGraph& g, AtomId a) {
    AtomSet start(g.n);
    start.set(a);
    return dependencies_of(g, start);
}

AtomSet dependencies_of(const DepGraph& g, const AtomSet& atoms) {
    AtomSet seen(g.n);
    std::vector<AtomId> stack;
    atoms.for_each([&](int a) {
        for (const auto& e : g.out[size_t(a)])
            if (!seen.test(e.to)) { seen.set(e.to); stack.push_back(e.to); }
    });
    while (!stack.empty()) {
        AtomId v = stack.back();
        stack.pop_back();
        for (const auto& e : g.out[size_t(v)])
            if (!seen.test(e.to)) { seen.set(e.to); stack.push_back(e.to); }
    }
    return seen;
}

RuleSet rel_rul(const Program& prog, const AtomSet& atoms) {
    return rel_rul(prog, all_rules(prog), atoms);
}

RuleSet rel_rul(const Program& prog, const RuleSet& within, const AtomSet& atoms) {
    DepGraph g = build_graph(prog, within);
    AtomSet cone = dependencies_of(g, atoms);
    cone |= atoms;
    RuleSet out;
    for (int ri : within)
        if (cone.test(prog.rules[size_t(ri)].head)) out.push_back(ri);
    return out;
}

RuleSet rel_rul(const Program& prog, AtomId a) {
    AtomSet s(prog.atom_count());
    s.set(a);
    return rel_rul(prog, s);
}

const char* to_string(ComponentKind k) {
    switch (k) {
        case ComponentKind::Acyclic: return "acyclic";
        case ComponentKind::PositivelyCyclic: return "positively-cyclic";
        case ComponentKind::NegativelyCyclic: return "negatively-cyclic";
        case ComponentKind::Jigsaw: return "jigsaw";
    }
    return "?";
}

namespace {

// Does `a` reach itself via a nonempty path; does some such path cross a
// negative edge? (The second component asks for a self-path with >=1
// negative edge, i.e. a negative cycle through `a`, possibly non-simple.)
struct SelfDep {
    bool cyclic = false;
    bool negatively = false;
};

SelfDep self_dependency(const DepGraph& g, AtomId a) {
    SelfDep sd;
    // Reachability over states (atom, parity "saw a negative edge yet").
    std::vector<uint8_t> seen(size_t(g.n) * 2, 0);
    std::vector<std::pair<AtomId, int>> stack;
    auto push = [&](AtomId v, int neg) {
        if (!seen[size_t(v) * 2 + size_t(neg)]) {
            seen[size_t(v) * 2 + size_t(neg)] = 1;
            stack.push_back({v, neg});
        }
    };
    for (const auto& e : g.out[size_t(a)]) push(e.to, e.negative ? 1 : 0);
    while (!stack.empty()) {
        auto [v, neg] = stack.back();
        stack.pop_back();
        if (v == a) {
            sd.cyclic = true;
            if (neg) sd.negatively = true;
        }
        for (const auto& e : g.out[size_t(v)]) push(e.to, neg | (e.negative ? 1 : 0));
    }
    return sd;
}

} // namespace

ComponentKind classify(const Program& prog, const RuleSet& rules) {
    DepGraph g = build_graph(prog, rules);
    bool all_cyclic = true, any_cyclic = false, any_negative = false;
    AtomSet heads(prog.atom_count());
    for (int ri : rules) heads.set(prog.rules[size_t(ri)].head);
    heads.for_each([&](int h) {
        SelfDep sd = self_dependency(g, h);
        all_cyclic = all_cyclic && sd.cyclic;
        any_cyclic = any_cyclic || sd.cyclic;
        any_negative = any_negative || sd.negatively;
    });
    if (!any_cyclic) return ComponentKind::Acyclic;
    if (!all_cyclic) return ComponentKind::Jigsaw;
    return any_negative ? ComponentKind::NegativelyCyclic : ComponentKind::PositivelyCyclic;
}

ComponentKind classify(const Program& prog) { return classify(prog, all_rules(prog)); }

// ---------------------------------------------------------------------------
// Decomposition

namespace {

// Iterative Tarjan SCC over the dependency graph.
std::vector<int> scc_of(const DepGraph& g, int& scc_count) {
    int n = g.n;
    std::vector<int> comp(size_t(n), -1), low(size_t(n), 0), num(size_t(n), -1), st;
    std::vector<uint8_t> on(size_t(n), 0);
    int counter = 0;
    scc_count = 0;
    struct Frame { int v; size_t ei; };
    for (int s = 0; s < n; ++s) {
        if (num[size_t(s)] != -1) continue;
        std::vector<Frame> stack{{s, 0}};
        num[size_t(s)] = low[size_t(s)] = counter++;
        st.push_back(s);
        on[size_t(s)] = 1;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.ei < g.out[size_t(f.v)].size()) {
                int w = g.out[size_t(f.v)][f.ei++].to;
                if (num[size_t(w)] == -1) {
                    num[size_t(w)] = low[size_t(w)] = counter++;
                    st.push_back(w);
                    on[size_t(w)] = 1;
                    stack.push_back({w, 0});
                } else if (on[size_t(w)]) {
                    low[size_t(f.v)] = std::min(low[size_t(f.v)], num[size_t(w)]);
                }
            } else {
                if (low[size_t(f.v)] == num[size_t(f.v)]) {
                    int c = scc_count++;
                    for (;;) {
                        int w = st.back();
                        st.pop_back();
                        on[size_t(w)] = 0;
                        comp[size_t(w)] = c;
                        if (w == f.v) break;
                    }
                }
                int v = f.v;
                stack.pop_back();
                if (!stack.empty())
                    low[size_t(stack.back().v)] = std::min(low[size_t(stack.back().v)], low[size_t(v)]);
            }
        }
    }
    return comp;
}

struct Pieces {
    std::vector<RuleSet> rules;           // rule indices per rule-bearing piece
    std::vector<int> depth;               // stratum of each piece
    std::vector<std::vector<int>> below;  // direct rule-bearing dependencies
    int max_depth = -1;
};

Pieces split_pieces(const Program& prog) {
    DepGraph g = build_graph(prog);
    int ncomp = 0;
    std::vector<int> comp = scc_of(g, ncomp);

    std::vector<RuleSet> comp_rules(static_cast<size_t>(ncomp));
    for (int ri = 0; ri < int(prog.rules.size()); ++ri)
        comp_rules[size_t(comp[size_t(prog.rules[size_t(ri)].head)])].push_back(ri);

    // Keep rule-bearing components only; order deterministically by the
    // smallest rule index so layer output is stable.
    std::vector<int> keep;
    for (int c = 0; c < ncomp; ++c)
        if (!comp_rules[size_t(c)].empty()) keep.push_back(c);
    std::sort(keep.begin(), keep.end(),
              [&](int a, int b) { return comp_rules[size_t(a)][0] < comp_rules[size_t(b)][0]; });
    std::vector<int> idx_of(size_t(ncomp), -1);
    for (int i = 0; i < int(keep.size()); ++i) idx_of[size_t(keep[size_t(i)])] = i;

    Pieces p;
    p.rules.resize(keep.size());
    p.below.resize(keep.size());
    for (int i = 0; i < int(keep.size()); ++i) p.rules[size_t(i)] = comp_rules[size_t(keep[size_t(i)])];

    for (int i = 0; i < int(keep.size()); ++i) {
        std::vector<int>& dst = p.below[size_t(i)];
        for (int ri : p.rules[size_t(i)])
            for (const Literal& l : prog.rules[size_t(ri)].body) {
                int cb = idx_of[size_t(comp[size_t(l.atom)])];
                if (cb >= 0 && cb != i &&
                    std::find(dst.begin(), dst.end(), cb) == dst.end())
                    dst.push_back(cb);
            }
        std::sort(dst.begin(), dst.end());
    }

    // Longest-path stratum (dependencies form a DAG over pieces).
    p.depth.assign(keep.size(), -1);
    std::vector<int> order(keep.size());
    std::iota(order.begin(), order.end(), 0);
    // Repeated relaxation; piece count is small.
    bool changed = true;
    for (auto& d : p.depth) d = 0;
    while (changed) {
        changed = false;
        for (int i = 0; i < int(keep.size()); ++i)
            for (int b : p.below[size_t(i)])
                if (p.depth[size_t(i)] < p.depth[size_t(b)] + 1) {
                    p.depth[size_t(i)] = p.depth[size_t(b)] + 1;
                    changed = true;
                }
    }
    for (int i = 0; i < int(keep.size()); ++i) p.max_depth = std::max(p.max_depth, p.depth[size_t(i)]);
    return p;
}

ComponentKind piece_kind(const Program& prog, const RuleSet& rules) {
    ComponentKind k = classify(prog, rules);
    return k;
}

} // namespace

Layering decompose(const Program& prog) {
    Layering out;
    Pieces p = split_pieces(prog);
    for (int d = 0; d <= p.max_depth; ++d) {
        Layer layer;
        int npieces = 0;
        ComponentKind single = ComponentKind::Jigsaw;
        for (int i = 0; i < int(p.rules.size()); ++i)
            if (p.depth[size_t(i)] == d) {
                layer.rules.insert(layer.rules.end(), p.rules[size_t(i)].begin(), p.rules[size_t(i)].end());
                single = piece_kind(prog, p.rules[size_t(i)]);
                ++npieces;
            }
        std::sort(layer.rules.begin(), layer.rules.end());
        layer.kind = npieces == 1 ? single : ComponentKind::Jigsaw;
        if (!layer.rules.empty()) out.layers.push_back(std::move(layer));
    }
    return out;
}

Layering decompose_fine(const Program& prog) {
    Layering out;
    Pieces p = split_pieces(prog);
    std::vector<int> order(p.rules.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (p.depth[size_t(a)] != p.depth[size_t(b)]) return p.depth[size_t(a)] < p.depth[size_t(b)];
        return p.rules[size_t(a)][0] < p.rules[size_t(b)][0];
    });
    for (int i : order)
        out.layers.push_back(Layer{p.rules[size_t(i)], piece_kind(prog, p.rules[size_t(i)])});
    return out;
}

std::vector<int> relevant_constraints(const Program& prog, AtomId q) {
    std::vector<int> out;
    RuleSet rq = rel_rul(prog, q);
    for (int ci = 0; ci < int(prog.constraints.size()); ++ci) {
        RuleSet rh = rel_rul(prog, prog.constraints[size_t(ci)].guard);
        if (std::includes(rh.begin(), rh.end(), rq.begin(), rq.end())) out.push_back(ci);
    }
    return out;
}

std::string dump_graph(const Program& prog) {
    DepGraph g = build_graph(prog);
    std::vector<std::string> lines;
    for (int v = 0; v < g.n; ++v)
        for (const auto& e : g.out[size_t(v)])
            lines.push_back(prog.name(v) + (e.negative ? " --not-> " : " -+-> ") + prog.name(e.to));
    std::sort(lines.begin(), lines.end());
    std::ostringstream os;
    for (const auto& l : lines) os << l << "\n";
    return os.str();
}

} // namespace rasq
