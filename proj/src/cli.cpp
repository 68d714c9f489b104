#include "meu/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>
#include <tuple>

#include "meu/diagrams.hpp"
#include "meu/mrules.hpp"
#include "meu/oracles.hpp"
#include "meu/petring.hpp"

namespace meu {

namespace {

using nlohmann::json;

constexpr const char* kAbout =
    "mixed Eulerian numbers for crystallographic root systems";

void gen_comps(int len, int sum, std::vector<int>& cur,
               std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == len) {
        if (sum == 0) out.push_back(cur);
        return;
    }
    for (int v = 0; v <= sum; ++v) {
        cur.push_back(v);
        gen_comps(len, sum - v, cur, out);
        cur.pop_back();
    }
}

// Lexicographically ascending compositions of `sum` with `len` parts.
std::vector<std::vector<int>> all_compositions(int len, int sum) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    gen_comps(len, sum, cur, out);
    return out;
}

std::vector<int> mask_to_list(Mask m, int rank) {
    std::vector<int> out;
    for (int i = 1; i <= rank; ++i)
        if (contains(m, i)) out.push_back(i);
    return out;
}

std::string set_str(Mask m, int rank) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int i : mask_to_list(m, rank)) {
        if (!first) os << ',';
        os << i;
        first = false;
    }
    os << '}';
    return os.str();
}

Rat parse_rat(const std::string& s) {
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0)
        throw std::invalid_argument("cannot parse rational: " + s);
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

int write_payload(const std::string& payload, const std::string& out_path,
                  std::ostream& out, std::ostream& err) {
    if (out_path.empty()) {
        out << payload;
        return 0;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        err << "error: cannot open " << out_path << " for writing\n";
        return 1;
    }
    f << payload;
    return 0;
}

// Fans fn(0..n-1) over a small thread pool. Each row writes only its own
// output slot, so results read back in row order no matter who ran first.
void parallel_rows(std::size_t n, const std::function<void(std::size_t)>& fn) {
    std::size_t hw = std::thread::hardware_concurrency();
    std::size_t nthreads = std::min(n, hw ? hw : std::size_t{4});
    if (nthreads < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::exception_ptr failure;
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

std::pair<char, int> parse_label(const std::string& s) {
    bool ok = s.size() >= 2 && std::isalpha(static_cast<unsigned char>(s[0]));
    for (std::size_t k = 1; ok && k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) ok = false;
    if (!ok)
        throw std::invalid_argument(
            "system label must be a letter followed by a rank, like A8 or e6: " +
            s);
    int rank = 0;
    try {
        rank = std::stoi(s.substr(1));
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("rank is out of range: " + s);
    }
    return {static_cast<char>(std::toupper(static_cast<unsigned char>(s[0]))),
            rank};
}

std::vector<int> parse_comp(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty() ||
            tok.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument(
                "composition entries must be comma-separated nonnegative "
                "integers: " +
                s);
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::out_of_range&) {
            throw std::invalid_argument("composition entry is out of range: " +
                                        tok);
        }
    }
    if (out.empty())
        throw std::invalid_argument("composition is empty: " + s);
    return out;
}

std::vector<Rat> parse_weights(const std::string& s) {
    std::vector<Rat> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_rat(tok));
    if (out.empty())
        throw std::invalid_argument("weight list is empty: " + s);
    return out;
}

// Raw option targets plus the finished Query; CLI11 keeps pointers into this.
struct Parsed {
    Query q;
    std::string label;
    std::string comp_text;
    std::string weights_text;
    CLI::App* compute = nullptr;
    CLI::App* table = nullptr;
    CLI::App* diagrams = nullptr;
    CLI::App* mtable = nullptr;
    CLI::App* volume = nullptr;
    CLI::App* verify = nullptr;
};

void configure(CLI::App& app, Parsed& p) {
    app.require_subcommand(1);
    Query& q = p.q;

    auto label_arg = [&](CLI::App* cmd) {
        cmd->add_option("system", p.label,
                        "system label, letter then rank (A8, E6, G2)")
            ->required();
    };
    auto comp_arg = [&](CLI::App* cmd) {
        cmd->add_option("composition", p.comp_text,
                        "comma-separated entries, one per node (1,0,2)")
            ->required();
    };
    auto method_opt = [&](CLI::App* cmd) {
        cmd->add_option("--method", q.methods,
                        "reduce | diagrams | divsym | weylsum | quotient | all")
            ->check(CLI::IsMember(
                {"reduce", "diagrams", "divsym", "weylsum", "quotient", "all"}))
            ->delimiter(',')
            ->capture_default_str();
    };
    auto mode_opt = [&](CLI::App* cmd) {
        cmd->add_option("--mode", q.mode,
                        "spreading coefficients: lookup | derive")
            ->check(CLI::IsMember({"lookup", "derive"}))
            ->capture_default_str();
    };
    auto seed_opt = [&](CLI::App* cmd) {
        cmd->add_option("--seed", q.seed,
                        "seed for generic points; MIXED_EULERIAN_SEED wins")
            ->capture_default_str();
    };
    auto cap_opt = [&](CLI::App* cmd) {
        cmd->add_option("--cap", q.cap,
                        "largest Weyl group the orbit sum will enumerate")
            ->capture_default_str();
    };
    auto output_opts = [&](CLI::App* cmd) {
        cmd->add_option("--format", q.format, "output format: plain | json")
            ->check(CLI::IsMember({"plain", "json"}))
            ->capture_default_str();
        cmd->add_option("--out", q.out_path, "write output to this file");
    };

    p.compute = app.add_subcommand("compute", "one mixed Eulerian number");
    label_arg(p.compute);
    comp_arg(p.compute);
    method_opt(p.compute);
    mode_opt(p.compute);
    seed_opt(p.compute);
    cap_opt(p.compute);
    output_opts(p.compute);

    p.table = app.add_subcommand("table", "every composition of the rank");
    label_arg(p.table);
    method_opt(p.table);
    mode_opt(p.table);
    seed_opt(p.table);
    cap_opt(p.table);
    output_opts(p.table);

    p.diagrams = app.add_subcommand("diagrams", "type A filling game");
    label_arg(p.diagrams);
    comp_arg(p.diagrams);
    p.diagrams->add_option("--render", q.render, "rendering: ascii | svg")
        ->check(CLI::IsMember({"ascii", "svg"}))
        ->capture_default_str();
    output_opts(p.diagrams);

    p.mtable = app.add_subcommand("mtable", "spreading coefficient table");
    label_arg(p.mtable);
    mode_opt(p.mtable);
    output_opts(p.mtable);

    p.volume = app.add_subcommand("volume", "permutohedron volume");
    p.volume
        ->add_option("weights", p.weights_text,
                     "comma-separated vertex coordinates, rationals allowed")
        ->required();
    seed_opt(p.volume);
    output_opts(p.volume);

    p.verify = app.add_subcommand(
        "verify", "re-derive the coefficient and product tables");
    p.verify->add_option("system", p.label,
                         "system label; omit to sweep every system through "
                         "rank 8");
    output_opts(p.verify);
}

// Post-parse validation shared by parse_args and run_cli. The environment
// seed deliberately beats --seed so wrappers can pin determinism.
void finalize(Parsed& p) {
    Query& q = p.q;
    if (p.compute->parsed())
        q.command = "compute";
    else if (p.table->parsed())
        q.command = "table";
    else if (p.diagrams->parsed())
        q.command = "diagrams";
    else if (p.mtable->parsed())
        q.command = "mtable";
    else if (p.volume->parsed())
        q.command = "volume";
    else if (p.verify->parsed())
        q.command = "verify";
    else
        throw std::invalid_argument("a subcommand is required");

    if (!p.label.empty()) {
        auto [type, rank] = parse_label(p.label);
        q.type = type;
        q.rank = rank;
        build_root_system(q.type, q.rank);  // rejects unknown type or bad rank
    }
    if (!p.comp_text.empty()) q.comp = parse_comp(p.comp_text);
    if (!p.weights_text.empty()) q.weights = parse_weights(p.weights_text);

    if (const char* env = std::getenv("MIXED_EULERIAN_SEED")) {
        std::string s(env);
        if (!s.empty()) {
            if (s.find_first_not_of("0123456789") != std::string::npos)
                throw std::invalid_argument(
                    "MIXED_EULERIAN_SEED must be a nonnegative integer: " + s);
            try {
                q.seed = std::stoull(s);
            } catch (const std::out_of_range&) {
                throw std::invalid_argument(
                    "MIXED_EULERIAN_SEED is out of range: " + s);
            }
        }
    }

    if (q.command == "compute" || q.command == "diagrams") {
        if (static_cast<int>(q.comp.size()) != q.rank)
            throw std::invalid_argument(
                "composition needs exactly " + std::to_string(q.rank) +
                " entries, got " + std::to_string(q.comp.size()));
        int sum = std::accumulate(q.comp.begin(), q.comp.end(), 0);
        if (sum != q.rank)
            throw std::invalid_argument(
                "composition entries must sum to the rank " +
                std::to_string(q.rank) + ", got " + std::to_string(sum));
    }
    if (q.command == "diagrams" && q.type != 'A')
        throw std::invalid_argument("diagrams need a type A system");
}

}  // namespace

MethodReport compare_methods(const RootSystem& rs, const std::vector<int>& comp,
                             const std::vector<std::string>& methods,
                             std::uint64_t seed, std::int64_t cap, bool derive) {
    OracleOptions opt{seed, cap};
    std::vector<std::string> wanted;
    auto push = [&](const std::string& m) {
        if (std::find(wanted.begin(), wanted.end(), m) == wanted.end())
            wanted.push_back(m);
    };
    for (const auto& m : methods) {
        if (m == "all") {
            push("reduce");
            if (rs.type == 'A') {
                push("diagrams");
                push("divsym");
            }
            if (weyl_order(rs, 0).order <= Int(cap)) push("weylsum");
            push("quotient");
        } else {
            push(m);
        }
    }

    MethodReport rep;
    MSource src = derive ? MSource::derive : MSource::lookup;
    for (const auto& m : wanted) {
        Rat v;
        if (m == "reduce") {
            v = mixed_eulerian(rs, comp, src);
        } else if (m == "diagrams") {
            if (rs.type != 'A')
                throw std::invalid_argument("the diagram route needs type A");
            v = mixed_eulerian_diagrams(comp);
        } else if (m == "divsym") {
            if (rs.type != 'A')
                throw std::invalid_argument("the prefix-power route needs type A");
            v = mixed_eulerian_divsym(comp, opt);
        } else if (m == "weylsum") {
            v = mixed_eulerian_weylsum(rs, comp, opt);
        } else if (m == "quotient") {
            v = mixed_eulerian_quotient(rs, comp);
        } else {
            throw std::invalid_argument("unknown method: " + m);
        }
        rep.values[m] = v;
    }
    const Rat& first = rep.values.begin()->second;
    for (const auto& [name, v] : rep.values)
        if (v != first) rep.agree = false;
    return rep;
}

namespace {

std::string comp_str(const std::vector<int>& comp) {
    std::ostringstream os;
    for (std::size_t k = 0; k < comp.size(); ++k)
        os << (k ? " " : "") << comp[k];
    return os.str();
}

int cmd_compute(const Query& q, std::ostream& out, std::ostream& err) {
    auto rs = build_root_system(q.type, q.rank);
    auto rep = compare_methods(rs, q.comp, q.methods, q.seed, q.cap,
                               q.mode == "derive");

    std::ostringstream buf;
    if (q.format == "json") {
        json j;
        j["type"] = std::string(1, rs.type);
        j["rank"] = rs.rank;
        j["composition"] = q.comp;
        json jm = json::object();
        for (const auto& [name, v] : rep.values) jm[name] = to_string(v);
        j["methods"] = jm;
        if (rep.agree) {
            const Rat& v = rep.values.begin()->second;
            j["value"] = to_string(v);
            j["integer"] = is_integer(v);
        } else {
            j["value"] = nullptr;
            j["integer"] = false;
        }
        buf << j.dump(2) << '\n';
    } else {
        if (rep.values.size() > 1) {
            for (const auto& [name, v] : rep.values)
                buf << name << ' ' << to_string(v) << '\n';
            if (rep.agree)
                buf << "value " << to_string(rep.values.begin()->second) << '\n';
        } else {
            buf << to_string(rep.values.begin()->second) << '\n';
        }
    }
    int rc = write_payload(buf.str(), q.out_path, out, err);
    if (rc != 0) return rc;
    if (!rep.agree) {
        err << "error: methods disagree on " << comp_str(q.comp) << '\n';
        for (const auto& [name, v] : rep.values)
            err << "  " << name << ' ' << to_string(v) << '\n';
        return 2;
    }
    return 0;
}

int cmd_table(const Query& q, std::ostream& out, std::ostream& err) {
    auto rs = build_root_system(q.type, q.rank);
    bool derive = q.mode == "derive";
    auto comps = all_compositions(rs.rank, rs.rank);

    std::vector<MethodReport> reports(comps.size());
    parallel_rows(comps.size(), [&](std::size_t i) {
        reports[i] =
            compare_methods(rs, comps[i], q.methods, q.seed, q.cap, derive);
    });

    std::ostringstream buf, diff;
    json entries = json::array();
    bool agree = true;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const auto& rep = reports[i];
        if (q.format == "json") {
            json jm = json::object();
            for (const auto& [name, v] : rep.values) jm[name] = to_string(v);
            json e{{"composition", comps[i]}, {"methods", jm}};
            if (rep.agree) {
                const Rat& v = rep.values.begin()->second;
                e["value"] = to_string(v);
                e["integer"] = is_integer(v);
            } else {
                e["value"] = nullptr;
                e["integer"] = false;
            }
            entries.push_back(e);
        } else {
            buf << comp_str(comps[i]) << "  "
                << to_string(rep.values.begin()->second) << '\n';
        }
        if (!rep.agree) {
            agree = false;
            diff << "  " << comp_str(comps[i]) << ':';
            for (const auto& [name, v] : rep.values)
                diff << ' ' << name << '=' << to_string(v);
            diff << '\n';
        }
    }
    if (q.format == "json") {
        json j{{"type", std::string(1, rs.type)},
               {"rank", rs.rank},
               {"entries", entries}};
        buf << j.dump(2) << '\n';
    }
    int rc = write_payload(buf.str(), q.out_path, out, err);
    if (rc != 0) return rc;
    if (!agree) {
        err << "error: methods disagree\n" << diff.str();
        return 2;
    }
    return 0;
}

int cmd_diagrams(const Query& q, std::ostream& out, std::ostream& err) {
    auto setup = diagram_setup(q.comp);
    auto ds = enumerate_diagrams(setup);
    Rat value = mixed_eulerian_diagrams(q.comp);

    std::ostringstream buf;
    if (q.format == "json") {
        json jds = json::array();
        for (const auto& d : ds) {
            json moves = json::array();
            for (const auto& r : d.rows)
                moves.push_back({{"marked", r.marked},
                                 {"run", {r.a, r.b}},
                                 {"added", r.added},
                                 {"dir", r.left ? "L" : "R"},
                                 {"forced", r.forced},
                                 {"factor", to_string(r.factor)}});
            jds.push_back(
                {{"moves", moves}, {"weight", to_string(diagram_weight(d))}});
        }
        json j{{"type", "A"},
               {"rank", q.rank},
               {"composition", q.comp},
               {"diagrams", jds},
               {"count", ds.size()},
               {"value", to_string(value)}};
        buf << j.dump(2) << '\n';
    } else {
        RenderFormat fmt =
            q.render == "svg" ? RenderFormat::svg : RenderFormat::ascii;
        for (std::size_t k = 0; k < ds.size(); ++k) {
            if (fmt == RenderFormat::ascii) buf << "diagram " << k + 1 << '\n';
            buf << render_diagram(ds[k], fmt);
            if (fmt == RenderFormat::ascii) buf << '\n';
        }
        buf << "diagrams " << ds.size() << '\n'
            << "value " << to_string(value) << '\n';
    }
    return write_payload(buf.str(), q.out_path, out, err);
}

// Every admissible (K, J, i): J connected, K = J minus one vertex still
// connected, i in K. Same enumeration feeds mtable and verify.
struct MRow {
    Mask K = 0, J = 0;
    int i = 0;
    Rat lookup, derived;
    bool ok = false;
};

std::vector<MRow> m_rows(const RootSystem& rs) {
    std::vector<MRow> rows;
    for (Mask J : connected_subsets(rs)) {
        if (popcount(J) < 2) continue;
        for (int j = 1; j <= rs.rank; ++j) {
            if (!contains(J, j)) continue;
            Mask K = J & ~bit(j);
            if (connected_components(rs, K).size() != 1) continue;
            for (int i = 1; i <= rs.rank; ++i) {
                if (!contains(K, i)) continue;
                MRow r;
                r.K = K;
                r.J = J;
                r.i = i;
                rows.push_back(r);
            }
        }
    }
    std::sort(rows.begin(), rows.end(), [](const MRow& x, const MRow& y) {
        return std::tie(x.J, x.K, x.i) < std::tie(y.J, y.K, y.i);
    });
    return rows;
}

int cmd_mtable(const Query& q, std::ostream& out, std::ostream& err) {
    auto rs = build_root_system(q.type, q.rank);
    bool derive = q.mode == "derive";
    auto rows = m_rows(rs);
    parallel_rows(rows.size(), [&](std::size_t k) {
        auto& r = rows[k];
        r.lookup = derive ? m_derive(rs, r.i, r.K, r.J)
                          : m_value(rs, r.i, r.K, r.J);
    });

    std::ostringstream buf;
    if (q.format == "json") {
        json jr = json::array();
        for (const auto& r : rows)
            jr.push_back({{"K", mask_to_list(r.K, rs.rank)},
                          {"J", mask_to_list(r.J, rs.rank)},
                          {"i", r.i},
                          {"m", to_string(r.lookup)}});
        json j{{"type", std::string(1, rs.type)},
               {"rank", rs.rank},
               {"rows", jr}};
        buf << j.dump(2) << '\n';
    } else {
        for (const auto& r : rows)
            buf << "K=" << set_str(r.K, rs.rank) << " J=" << set_str(r.J, rs.rank)
                << " i=" << r.i << " m=" << to_string(r.lookup) << '\n';
    }
    return write_payload(buf.str(), q.out_path, out, err);
}

int cmd_volume(const Query& q, std::ostream& out, std::ostream& err) {
    OracleOptions opt;
    opt.seed = q.seed;
    Rat v = permutohedron_volume(q.weights, opt);

    std::ostringstream buf;
    if (q.format == "json") {
        json ja = json::array();
        for (const auto& x : q.weights) ja.push_back(to_string(x));
        json j{{"a", ja}, {"volume", to_string(v)}};
        buf << j.dump(2) << '\n';
    } else {
        buf << to_string(v) << '\n';
    }
    return write_payload(buf.str(), q.out_path, out, err);
}

struct VerifyCounts {
    std::vector<MRow> rows;
    AppendixReport report;
    std::size_t m_good = 0, id_good = 0;
    bool ok = false;
};

VerifyCounts verify_system(const RootSystem& rs, bool parallel) {
    VerifyCounts v;
    v.rows = m_rows(rs);
    auto fill = [&](std::size_t k) {
        auto& r = v.rows[k];
        r.lookup = m_value(rs, r.i, r.K, r.J);
        r.derived = m_derive(rs, r.i, r.K, r.J);
        r.ok = r.lookup == r.derived && r.lookup > 0;
    };
    if (parallel)
        parallel_rows(v.rows.size(), fill);
    else
        for (std::size_t k = 0; k < v.rows.size(); ++k) fill(k);
    v.report = verify_appendix(rs);
    for (const auto& r : v.rows)
        if (r.ok) ++v.m_good;
    for (const auto& item : v.report.items)
        if (item.ok) ++v.id_good;
    v.ok = v.m_good == v.rows.size() && v.report.all_ok;
    return v;
}

// Bare `verify` sweeps every ambient system through rank 8, one summary
// row per system.
int cmd_verify_battery(const Query& q, std::ostream& out, std::ostream& err) {
    std::vector<std::string> labels;
    for (int n = 2; n <= 8; ++n) {
        labels.push_back("A" + std::to_string(n));
        labels.push_back("B" + std::to_string(n));
        labels.push_back("C" + std::to_string(n));
        if (n >= 4) labels.push_back("D" + std::to_string(n));
    }
    labels.insert(labels.end(), {"E6", "E7", "E8", "F4", "G2"});

    std::vector<VerifyCounts> sums(labels.size());
    parallel_rows(labels.size(), [&](std::size_t k) {
        sums[k] = verify_system(build_root_system(labels[k]), false);
    });

    std::size_t m_good = 0, m_total = 0, id_good = 0, id_total = 0;
    bool all_ok = true;
    std::ostringstream buf;
    json systems = json::array();
    for (std::size_t k = 0; k < labels.size(); ++k) {
        const auto& v = sums[k];
        m_good += v.m_good;
        m_total += v.rows.size();
        id_good += v.id_good;
        id_total += v.report.items.size();
        if (!v.ok) all_ok = false;
        if (q.format == "json") {
            systems.push_back({{"system", labels[k]},
                               {"mtable_ok", v.m_good},
                               {"mtable_total", v.rows.size()},
                               {"identities_ok", v.id_good},
                               {"identities_total", v.report.items.size()},
                               {"ok", v.ok}});
        } else {
            buf << (v.ok ? "ok   " : "FAIL ") << labels[k] << " m-table "
                << v.m_good << '/' << v.rows.size() << ", identities "
                << v.id_good << '/' << v.report.items.size() << '\n';
        }
    }
    if (q.format == "json") {
        json j{{"systems", systems}, {"all_ok", all_ok}};
        buf << j.dump(2) << '\n';
    } else {
        buf << "total m-table " << m_good << '/' << m_total << ", identities "
            << id_good << '/' << id_total << '\n';
    }
    int rc = write_payload(buf.str(), q.out_path, out, err);
    if (rc != 0) return rc;
    return all_ok ? 0 : 1;
}

// Two sweeps: every spreading coefficient re-derived from the fixed-point
// formula, then the tabulated generator products re-derived in the quotient
// ring. Nonzero exit on any mismatch in either.
int cmd_verify(const Query& q, std::ostream& out, std::ostream& err) {
    if (q.type == 0) return cmd_verify_battery(q, out, err);
    auto rs = build_root_system(q.type, q.rank);
    auto v = verify_system(rs, true);
    const auto& rows = v.rows;
    const auto& report = v.report;
    std::size_t m_good = v.m_good, id_good = v.id_good;
    bool all_ok = v.ok;

    std::ostringstream buf;
    if (q.format == "json") {
        json jm = json::array();
        for (const auto& r : rows)
            jm.push_back({{"K", mask_to_list(r.K, rs.rank)},
                          {"J", mask_to_list(r.J, rs.rank)},
                          {"i", r.i},
                          {"lookup", to_string(r.lookup)},
                          {"derived", to_string(r.derived)},
                          {"ok", r.ok}});
        json ji = json::array();
        for (const auto& item : report.items)
            ji.push_back({{"name", item.name}, {"ok", item.ok}});
        json j{{"type", std::string(1, rs.type)},
               {"rank", rs.rank},
               {"mtable", jm},
               {"identities", ji},
               {"all_ok", all_ok}};
        buf << j.dump(2) << '\n';
    } else {
        for (const auto& r : rows) {
            buf << (r.ok ? "ok   " : "FAIL ") << "m K=" << set_str(r.K, rs.rank)
                << " J=" << set_str(r.J, rs.rank) << " i=" << r.i;
            if (!r.ok)
                buf << " lookup=" << to_string(r.lookup)
                    << " derived=" << to_string(r.derived);
            buf << '\n';
        }
        for (const auto& item : report.items)
            buf << (item.ok ? "ok   " : "FAIL ") << item.name << '\n';
        buf << "m-table " << m_good << '/' << rows.size() << ", identities "
            << id_good << '/' << report.items.size() << '\n';
    }
    int rc = write_payload(buf.str(), q.out_path, out, err);
    if (rc != 0) return rc;
    return all_ok ? 0 : 1;
}

}  // namespace

Query parse_args(const std::vector<std::string>& args) {
    Parsed p;
    CLI::App app{kAbout};
    configure(app, p);
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        throw std::invalid_argument(e.what());
    }
    finalize(p);
    return p.q;
}

int run_query(const Query& q, std::ostream& out, std::ostream& err) {
    if (q.command == "compute") return cmd_compute(q, out, err);
    if (q.command == "table") return cmd_table(q, out, err);
    if (q.command == "diagrams") return cmd_diagrams(q, out, err);
    if (q.command == "mtable") return cmd_mtable(q, out, err);
    if (q.command == "volume") return cmd_volume(q, out, err);
    if (q.command == "verify") return cmd_verify(q, out, err);
    throw std::invalid_argument("unknown command: " + q.command);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    Parsed p;
    CLI::App app{kAbout};
    configure(app, p);
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 1;  // usage problems collapse to exit code 1
    }
    try {
        finalize(p);
        return run_query(p.q, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace meu
