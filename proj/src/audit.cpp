#include "possloc/audit.hpp"

#include <atomic>
#include <functional>
#include <sstream>
#include <thread>

#include "possloc/solver.hpp"

namespace possloc {

namespace {

// All 3-literal clauses over distinct variables of [0, n), lexicographic.
std::vector<Clause> all_clauses3(int n) {
    std::vector<Clause> out;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            for (int w = v + 1; w < n; ++w)
                for (int s = 0; s < 8; ++s)
                    out.push_back({{u, (s & 1) == 0},
                                   {v, (s & 2) == 0},
                                   {w, (s & 4) == 0}});
    return out;
}

AuditRecord evaluate(const CnfInstance& d) {
    AuditRecord rec;
    rec.instance = d;
    rec.two_robust = is_r_robust(d, 2).robust;
    rec.entry_robust = is_entry_robust(d).robust;
    auto [table, map] = encode_possloc(d);
    rec.table_local = decide_local(table).status == Locality::Local;
    return rec;
}

std::string literals_text(const CnfInstance& d) {
    std::ostringstream os;
    for (size_t c = 0; c < d.clauses.size(); ++c) {
        if (c) os << ' ';
        for (const Literal& l : d.clauses[c]) os << (l.positive ? l.var + 1 : -(l.var + 1)) << ' ';
        os << '0';
    }
    return os.str();
}

}  // namespace

CnfInstance random_cnf3(int num_vars, int max_clauses, SplitMix64& rng) {
    for (;;) {
        CnfInstance d;
        d.num_vars = num_vars;
        int nc = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(max_clauses)));
        for (int c = 0; c < nc; ++c) {
            int u = static_cast<int>(rng.below(num_vars)), v, w;
            do v = static_cast<int>(rng.below(num_vars)); while (v == u);
            do w = static_cast<int>(rng.below(num_vars)); while (w == u || w == v);
            d.clauses.push_back({{u, rng.next_bool()}, {v, rng.next_bool()}, {w, rng.next_bool()}});
        }
        d = normalize(d);
        if (!d.clauses.empty()) return d;
    }
}

AuditReport audit_equivalence(int max_vars, int max_clauses, long sample_count,
                              uint64_t seed, int jobs) {
    if (max_vars > 8) throw std::invalid_argument("audit_equivalence: max_vars > 8");
    if (max_vars < 3 && max_clauses > 0)
        throw std::invalid_argument("audit_equivalence: need >= 3 variables for 3-literal clauses");
    AuditReport rep;
    rep.max_vars = max_vars;
    rep.max_clauses = max_clauses;
    rep.sample_count = sample_count;
    rep.seed = seed;

    // Materialize the instance list first so workers can share it by index
    // and the merged report is independent of the job count.
    std::vector<CnfInstance> instances;
    if (sample_count == 0) {
        std::vector<Clause> cls = all_clauses3(max_vars);
        const int K = static_cast<int>(cls.size());
        std::vector<int> pick;
        auto emit = [&]() {
            CnfInstance d;
            d.num_vars = max_vars;
            for (int i : pick) d.clauses.push_back(cls[i]);
            instances.push_back(std::move(d));
        };
        std::function<void(int, int)> rec = [&](int start, int depth) {
            if (depth == 0) return;
            for (int i = start; i < K; ++i) {
                pick.push_back(i);
                emit();
                rec(i + 1, depth - 1);
                pick.pop_back();
            }
        };
        rec(0, max_clauses);
    } else {
        SplitMix64 rng(seed);
        for (long i = 0; i < sample_count; ++i)
            instances.push_back(random_cnf3(max_vars, max_clauses, rng));
    }

    std::vector<AuditRecord> records(instances.size());
    jobs = std::max(1, jobs);
    if (jobs == 1) {
        for (size_t i = 0; i < instances.size(); ++i) records[i] = evaluate(instances[i]);
    } else {
        std::vector<std::thread> workers;
        std::atomic<size_t> cursor{0};
        for (int j = 0; j < jobs; ++j)
            workers.emplace_back([&] {
                for (;;) {
                    size_t i = cursor.fetch_add(1);
                    if (i >= instances.size()) break;
                    records[i] = evaluate(instances[i]);
                }
            });
        for (auto& w : workers) w.join();
    }

    for (const AuditRecord& r : records) {
        ++rep.total;
        if (r.table_local && r.two_robust) ++rep.local_and_robust;
        if (r.table_local && !r.two_robust) ++rep.local_not_robust;
        if (!r.table_local && !r.two_robust) ++rep.nonlocal_not_robust;
        if (!r.table_local && r.two_robust) ++rep.sound_violations;
        if (r.entry_robust != r.table_local) ++rep.entry_divergences;
        if (r.table_local != r.two_robust) rep.divergences.push_back(r);
    }
    return rep;
}

std::string AuditReport::to_text() const {
    std::ostringstream os;
    os << "AUDIT vars<=" << max_vars << " clauses<=" << max_clauses;
    if (sample_count > 0)
        os << " samples=" << sample_count << " seed=" << seed;
    else
        os << " exhaustive";
    os << " instances=" << total << '\n';
    os << "local&2robust=" << local_and_robust << " local&not2robust=" << local_not_robust
       << " nonlocal&not2robust=" << nonlocal_not_robust
       << " sound_violations=" << sound_violations << '\n';
    os << "entry_local_divergences=" << entry_divergences << '\n';
    for (const AuditRecord& r : divergences)
        os << "DIVERGENT cnf=\"" << literals_text(r.instance) << "\" robust2="
           << (r.two_robust ? "yes" : "no") << " entry=" << (r.entry_robust ? "yes" : "no")
           << " local=" << (r.table_local ? "yes" : "no") << '\n';
    return os.str();
}

}  // namespace possloc
