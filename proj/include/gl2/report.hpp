#pragma once

/**
 * Experiment harness.  Runs a named parameter grid over the library modules
 * and collects one row per checked quantity.  Reports render as an aligned
 * text table, RFC 4180 CSV, or a JSON array of flat objects, and the same
 * configuration always produces byte-identical output regardless of the
 * worker count.
 */

#include <gl2/bt_tree.hpp>
#include <gl2/characters.hpp>
#include <gl2/counts.hpp>
#include <gl2/rational.hpp>
#include <gl2/rationality.hpp>
#include <gl2/spectrum.hpp>
#include <gl2/weil.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace gl2 {

/** One typed report cell.  Exact data stays exact; Numeric marks the few
    columns that are honestly floating point. */
struct FieldValue {
    enum class Kind { Text, Count, Exact, Numeric };

    Kind kind = Kind::Text;
    std::string text;
    long count = 0;
    Rational exact = 0;
    double numeric = 0.0;
};

struct ReportRow {
    std::vector<std::pair<std::string, FieldValue>> fields;
    bool pass = true;

    void add(const std::string& key, const std::string& v) {
        fields.push_back({key, FieldValue{FieldValue::Kind::Text, v, 0, 0, 0.0}});
    }
    void add(const std::string& key, const char* v) { add(key, std::string(v)); }
    void add(const std::string& key, long v) {
        fields.push_back({key, FieldValue{FieldValue::Kind::Count, "", v, 0, 0.0}});
    }
    void add(const std::string& key, int v) { add(key, static_cast<long>(v)); }
    void add(const std::string& key, long long v) { add(key, static_cast<long>(v)); }
    void add(const std::string& key, const Rational& v) {
        fields.push_back({key, FieldValue{FieldValue::Kind::Exact, "", 0, v, 0.0}});
    }
    void add(const std::string& key, double v) {
        fields.push_back({key, FieldValue{FieldValue::Kind::Numeric, "", 0, 0, v}});
    }

    const FieldValue* find(const std::string& key) const {
        for (const auto& f : fields)
            if (f.first == key) return &f.second;
        return nullptr;
    }
};

struct ExperimentReport {
    std::string command;
    std::vector<std::string> columns;
    std::vector<ReportRow> rows;

    long pass_count() const {
        long n = 0;
        for (const auto& r : rows) n += r.pass ? 1 : 0;
        return n;
    }
    long fail_count() const { return static_cast<long>(rows.size()) - pass_count(); }
    bool all_pass() const { return fail_count() == 0; }
};

/**
 * A full grid description.  Commands:
 *   orbits      census of tempered orbits by conductor and kind
 *   mass-check  fixed-central-character mass identity over (p, r)
 *   tree-check  central constant terms from tree counts vs closed forms
 *   ratios      rationality-degree gate and high-degree mass fraction
 *   weil        Weil q-integer enumeration with root-modulus residuals
 *   dims        dimension main term against the classical oracle
 *   fejer       exact Fejer identities and magnitude decay
 */
struct ExperimentConfig {
    std::string command;
    std::vector<long> primes = {3, 5, 7};
    int r_min = 0;
    int r_max = 2;
    long A = 1;
    int chi_conductor = 0;
    long chi_index = 0;
    long weight = 12;
    long n_max = 60;
    long m_max = 64;
    std::string format = "csv";
    std::string output_path;
    int jobs = 1;
};

namespace detail {

using Task = std::function<std::vector<ReportRow>()>;

/** Runs tasks on up to `jobs` workers and flattens results in task order,
    so the merged row list never depends on scheduling. */
inline std::vector<ReportRow> run_tasks(const std::vector<Task>& tasks, int jobs) {
    std::vector<std::vector<ReportRow>> out(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    int workers = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
    if (workers <= 1) {
        for (size_t i = 0; i < tasks.size(); ++i) out[i] = tasks[i]();
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                try {
                    out[i] = tasks[i]();
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    std::vector<ReportRow> rows;
    for (auto& part : out)
        for (auto& r : part) rows.push_back(std::move(r));
    return rows;
}

inline std::string orbit_kind_label(OrbitKind k) {
    switch (k) {
        case OrbitKind::PrincipalSeriesSame: return "principal-series-same";
        case OrbitKind::PrincipalSeriesDistinct: return "principal-series-distinct";
        case OrbitKind::SteinbergTwist: return "steinberg-twist";
        case OrbitKind::DihedralSupercuspidal: return "dihedral-supercuspidal";
    }
    throw std::logic_error("unknown orbit kind");
}

/** Picks the index-th unit character of the requested conductor, in the
    deterministic enumeration order of the character group at level 2. */
inline FiniteCharacter character_with_conductor(long p, int f, long index) {
    auto group = UnitGroup::base(p, 2);
    std::vector<FiniteCharacter> matches;
    for_each_character(group, [&](const FiniteCharacter& chi) {
        if (chi.conductor() == f) matches.push_back(chi);
    });
    if (matches.empty()) throw std::invalid_argument("no character with the requested conductor");
    return matches[static_cast<size_t>(index) % matches.size()];
}

inline void require_odd_primes(const std::vector<long>& primes) {
    if (primes.empty()) throw std::invalid_argument("need at least one prime");
    for (long p : primes)
        if (!is_prime(p) || p == 2)
            throw std::invalid_argument("p = " + std::to_string(p) + " is not an odd prime");
}

inline double numeric_text(char* buf, size_t n, double x) {
    std::snprintf(buf, n, "%.17g", x);
    return x;
}

}  // namespace detail

inline std::pair<std::vector<std::string>, std::vector<detail::Task>> plan_orbits(
    const ExperimentConfig& cfg) {
    detail::require_odd_primes(cfg.primes);
    if (cfg.r_max < 0 || cfg.r_max > 4)
        throw std::invalid_argument("orbit conductor range must lie in [0, 4]");
    std::vector<detail::Task> tasks;
    for (long p : cfg.primes) {
        int max_c = cfg.r_max;
        tasks.push_back([p, max_c] {
            std::map<std::pair<long, int>, std::pair<long, bool>> buckets;
            for (const TemperedOrbit& o : enumerate_orbits(p, 0, max_c)) {
                OrbitSlice s = fixed_central_slice(o);
                auto& slot = buckets[{orbit_conductor(o), static_cast<int>(o.kind)}];
                if (slot.first == 0) slot.second = true;
                slot.first += 1;
                slot.second = slot.second && s.conductor == orbit_conductor(o) &&
                              s.total_mass() > 0;
            }
            std::vector<ReportRow> rows;
            for (const auto& [key, val] : buckets) {
                ReportRow row;
                row.add("check", "orbit-census");
                row.add("p", p);
                row.add("conductor", key.first);
                row.add("orbit_kind", detail::orbit_kind_label(static_cast<OrbitKind>(key.second)));
                row.add("count", val.first);
                row.pass = val.second;
                rows.push_back(std::move(row));
            }
            return rows;
        });
    }
    return {{"check", "p", "conductor", "orbit_kind", "count", "pass"}, tasks};
}

inline std::pair<std::vector<std::string>, std::vector<detail::Task>> plan_mass_check(
    const ExperimentConfig& cfg) {
    detail::require_odd_primes(cfg.primes);
    if (cfg.r_min < 0 || cfg.r_min > cfg.r_max || cfg.r_max > 4)
        throw std::invalid_argument("depth range must satisfy 0 <= r_min <= r_max <= 4");
    if (cfg.chi_conductor < 0 || cfg.chi_conductor > 2)
        throw std::invalid_argument("central character conductor must lie in [0, 2]");
    std::vector<detail::Task> tasks;
    for (long p : cfg.primes) {
        for (int r = std::max(cfg.r_min, cfg.chi_conductor); r <= cfg.r_max; ++r) {
            int f = cfg.chi_conductor;
            long idx = cfg.chi_index;
            tasks.push_back([p, r, f, idx] {
                CentralCharacter omega{detail::character_with_conductor(p, f, idx),
                                       RootOfUnity::one()};
                MassCheckResult check = mass_identity_check(p, r, omega);
                ReportRow row;
                row.add("check", "mass-identity");
                row.add("p", p);
                row.add("r", r);
                row.add("chi_conductor", f);
                row.add("chi_index", idx);
                row.add("lhs", check.lhs);
                row.add("rhs", check.rhs);
                row.pass = check.holds;
                return std::vector<ReportRow>{row};
            });
        }
    }
    return {{"check", "p", "r", "chi_conductor", "chi_index", "lhs", "rhs", "pass"}, tasks};
}

inline std::pair<std::vector<std::string>, std::vector<detail::Task>> plan_tree_check(
    const ExperimentConfig& cfg) {
    detail::require_odd_primes(cfg.primes);
    if (cfg.r_min < 0 || cfg.r_min > cfg.r_max || cfg.r_max > 6)
        throw std::invalid_argument("depth range must satisfy 0 <= r_min <= r_max <= 6");
    std::vector<detail::Task> tasks;
    for (long p : cfg.primes) {
        for (int r = cfg.r_min; r <= cfg.r_max; ++r) {
            tasks.push_back([p, r] {
                Rational closed = constant_term_central(p, r);
                Rational shell = constant_term_central_shell(p, r);
                Rational decay_cap = rational_pow(p, -r);

                ReportRow sum_row;
                sum_row.add("check", "central-shell-sum");
                sum_row.add("p", p);
                sum_row.add("r", r);
                sum_row.add("value", shell);
                sum_row.add("reference", closed);
                sum_row.pass = shell == closed;

                ReportRow decay_row;
                decay_row.add("check", "central-decay");
                decay_row.add("p", p);
                decay_row.add("r", r);
                decay_row.add("value", closed * closed);
                decay_row.add("reference", decay_cap);
                decay_row.pass = closed * closed <= decay_cap;

                return std::vector<ReportRow>{sum_row, decay_row};
            });
        }
    }
    return {{"check", "p", "r", "value", "reference", "pass"}, tasks};
}

inline std::pair<std::vector<std::string>, std::vector<detail::Task>> plan_ratios(
    const ExperimentConfig& cfg) {
    detail::require_odd_primes(cfg.primes);
    if (cfg.A < 1) throw std::invalid_argument("degree threshold must be at least 1");
    for (long p : cfg.primes)
        if (p <= 2 * cfg.A + 1)
            throw std::invalid_argument("need p > 2A + 1 for the degree gate at p = " +
                                        std::to_string(p));
    std::vector<detail::Task> tasks;
    for (long p : cfg.primes) {
        long A = cfg.A;
        tasks.push_back([p, A] {
            ThresholdScan scan = verify_degree_threshold(p, A);
            Rational ratio = high_degree_mass_ratio(p, A, CentralCharacter::trivial(p));

            ReportRow gate;
            gate.add("check", "degree-threshold");
            gate.add("p", p);
            gate.add("A", A);
            gate.add("orbit_count", scan.orbit_count);
            gate.add("min_bound", scan.min_bound);
            gate.pass = scan.all_exceed;

            ReportRow frac;
            frac.add("check", "high-degree-mass-ratio");
            frac.add("p", p);
            frac.add("A", A);
            frac.add("ratio", ratio);
            frac.pass = ratio >= 0 && ratio <= 1;

            return std::vector<ReportRow>{gate, frac};
        });
    }
    return {{"check", "p", "A", "orbit_count", "min_bound", "ratio", "pass"}, tasks};
}

inline std::pair<std::vector<std::string>, std::vector<detail::Task>> plan_weil(
    const ExperimentConfig& cfg) {
    if (cfg.primes.empty()) throw std::invalid_argument("need at least one prime");
    for (long q : cfg.primes)
        if (!is_prime(q)) throw std::invalid_argument("q = " + std::to_string(q) + " is not prime");
    if (cfg.weight < 1) throw std::invalid_argument("weight must be positive");
    if (cfg.A < 1 || cfg.A > 4) throw std::invalid_argument("degree cap must lie in [1, 4]");
    std::vector<detail::Task> tasks;
    for (long q : cfg.primes) {
        long w = cfg.weight;
        int d = static_cast<int>(cfg.A);
        tasks.push_back([q, w, d] {
            std::vector<WeilInteger> found = weil_q_integers(q, w, d);
            std::vector<WeilInteger> widened = weil_q_integers(q, w, d, 2);
            double target = std::pow(static_cast<double>(q), static_cast<double>(w) / 2.0);

            std::vector<ReportRow> rows;
            for (const WeilInteger& wi : found) {
                double err = 0.0;
                for (const auto& z : polynomial_roots(wi.min_poly))
                    err = std::max(err, std::abs(std::abs(z) - target));
                std::string poly;
                for (size_t i = 0; i < wi.min_poly.size(); ++i) {
                    if (i > 0) poly += ' ';
                    poly += wi.min_poly[i].str();
                }
                ReportRow row;
                row.add("check", "root-modulus");
                row.add("q", q);
                row.add("weight", w);
                row.add("degree", static_cast<long>(wi.degree()));
                row.add("polynomial", poly);
                row.add("root_modulus_error", err);
                row.pass = err <= 1e-9 * std::max(1.0, target);
                rows.push_back(std::move(row));
            }
            ReportRow stable;
            stable.add("check", "margin-stability");
            stable.add("q", q);
            stable.add("weight", w);
            stable.add("degree", static_cast<long>(d));
            stable.add("count", static_cast<long>(found.size()));
            stable.pass = widened.size() == found.size();
            rows.push_back(std::move(stable));
            return rows;
        });
    }
    return {{"check", "q", "weight", "degree", "polynomial", "root_modulus_error", "count",
             "pass"},
            tasks};
}

inline std::pair<std::vector<std::string>, std::vector<detail::Task>> plan_dims(
    const ExperimentConfig& cfg) {
    if (cfg.weight < 2 || cfg.weight % 2 != 0)
        throw std::invalid_argument("weight must be a positive even integer");
    if (cfg.n_max < 1) throw std::invalid_argument("level range must be nonempty");
    std::vector<detail::Task> tasks;
    for (long N = 1; N <= cfg.n_max; ++N) {
        long k = cfg.weight;
        tasks.push_back([N, k] {
            Rational main = dim_main_term(N, k);
            long dim = classical_dim_oracle(N, k);
            Rational err = main - dim;
            if (err < 0) err = -err;
            double scaled = to_double(err) / std::sqrt(static_cast<double>(N));

            ReportRow row;
            row.add("check", "dim-main-term");
            row.add("N", N);
            row.add("k", k);
            row.add("main_term_num", to_int64(num(main)));
            row.add("main_term_den", to_int64(den(main)));
            row.add("oracle_dim", dim);
            row.add("abs_err", err);
            row.add("err_over_sqrtN", scaled);
            row.pass = scaled <= 2.0;
            return std::vector<ReportRow>{row};
        });
    }
    return {{"check", "N", "k", "main_term_num", "main_term_den", "oracle_dim", "abs_err",
             "err_over_sqrtN", "pass"},
            tasks};
}

inline std::pair<std::vector<std::string>, std::vector<detail::Task>> plan_fejer(
    const ExperimentConfig& cfg) {
    if (cfg.m_max < 1) throw std::invalid_argument("window length must be positive");
    std::vector<long> grid;
    for (long m = 1; m <= cfg.m_max; m *= 2) grid.push_back(m);
    std::vector<detail::Task> tasks;
    tasks.push_back([grid] {
        std::vector<ReportRow> rows;
        auto emit = [&rows](const char* check, long M, const std::string& mode,
                            const Rational& value, double magnitude, bool pass) {
            ReportRow row;
            row.add("check", check);
            row.add("M", M);
            row.add("mode", mode);
            row.add("value", value);
            row.add("magnitude", magnitude);
            row.pass = pass;
            rows.push_back(std::move(row));
        };
        for (long M : grid) {
            Rational ram = fejer_hat(M, FejerMode::ramified_twist());
            emit("ramified-vanishes", M, "ramified", ram, 0.0, ram == 0);

            Rational one = fejer_hat(M, FejerMode::unramified(0, 1));
            emit("trivial-at-one", M, "z=1", one, 1.0, one == 1);

            if (M > 1) {
                Rational root = fejer_hat(M, FejerMode::unramified(1, M));
                emit("mth-root-vanishes", M, "z=zeta_M", root, 0.0, root == 0);
            }

            Rational third = fejer_hat(M, FejerMode::unramified(1, 3));
            double mag = fejer_magnitude(M, 1, 3);
            emit("omega3-window", M, "z=zeta_3", third, mag,
                 std::abs(to_double(third) - mag) <= 1e-12);
        }
        if (grid.size() >= 2 && grid.back() >= 16) {
            double lo = fejer_magnitude(8, 1, 3);
            double hi = fejer_magnitude(grid.back(), 1, 3);
            ReportRow row;
            row.add("check", "omega3-decay");
            row.add("M", grid.back());
            row.add("mode", "z=zeta_3");
            row.add("magnitude", hi);
            row.pass = hi < lo;
            rows.push_back(std::move(row));
        }
        return rows;
    });
    return {{"check", "M", "mode", "value", "magnitude", "pass"}, tasks};
}

namespace detail {

inline std::string csv_escape(const std::string& s) {
    bool needs = s.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += "\"\"";
        else
            out += c;
    }
    out += '"';
    return out;
}

inline std::string cell_text(const FieldValue& v) {
    char buf[64];
    switch (v.kind) {
        case FieldValue::Kind::Text: return v.text;
        case FieldValue::Kind::Count: return std::to_string(v.count);
        case FieldValue::Kind::Exact: return num(v.exact).str() + "/" + den(v.exact).str();
        case FieldValue::Kind::Numeric:
            numeric_text(buf, sizeof(buf), v.numeric);
            return buf;
    }
    throw std::logic_error("unknown field kind");
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

inline std::string json_cell(const FieldValue& v) {
    char buf[64];
    switch (v.kind) {
        case FieldValue::Kind::Text: return "\"" + json_escape(v.text) + "\"";
        case FieldValue::Kind::Count: return std::to_string(v.count);
        case FieldValue::Kind::Exact:
            return "{\"num\": " + num(v.exact).str() + ", \"den\": " + den(v.exact).str() + "}";
        case FieldValue::Kind::Numeric:
            numeric_text(buf, sizeof(buf), v.numeric);
            return buf;
    }
    throw std::logic_error("unknown field kind");
}

inline void require_rows(const ExperimentReport& report) {
    if (report.rows.empty()) throw std::invalid_argument("refusing to render an empty report");
}

}  // namespace detail

/** RFC 4180 CSV: header row, CRLF line endings, quoted fields on demand.
    Cells absent from a row render empty. */
inline std::string render_csv(const ExperimentReport& report) {
    detail::require_rows(report);
    std::string out;
    for (size_t c = 0; c < report.columns.size(); ++c) {
        if (c > 0) out += ',';
        out += detail::csv_escape(report.columns[c]);
    }
    out += "\r\n";
    for (const ReportRow& row : report.rows) {
        for (size_t c = 0; c < report.columns.size(); ++c) {
            if (c > 0) out += ',';
            if (report.columns[c] == "pass") {
                out += row.pass ? "true" : "false";
            } else if (const FieldValue* v = row.find(report.columns[c])) {
                out += detail::csv_escape(detail::cell_text(*v));
            }
        }
        out += "\r\n";
    }
    return out;
}

/** JSON array of flat objects, keys in column order, exact rationals as
    {"num": ..., "den": ...}.  Absent cells are omitted from their object. */
inline std::string render_json(const ExperimentReport& report) {
    detail::require_rows(report);
    std::string out = "[\n";
    for (size_t i = 0; i < report.rows.size(); ++i) {
        const ReportRow& row = report.rows[i];
        out += "  {";
        bool first = true;
        for (const std::string& col : report.columns) {
            std::string cell;
            if (col == "pass") {
                cell = row.pass ? "true" : "false";
            } else if (const FieldValue* v = row.find(col)) {
                cell = detail::json_cell(*v);
            } else {
                continue;
            }
            if (!first) out += ", ";
            out += "\"" + detail::json_escape(col) + "\": " + cell;
            first = false;
        }
        out += i + 1 < report.rows.size() ? "},\n" : "}\n";
    }
    out += "]\n";
    return out;
}

/** Fixed-width text table for terminals. */
inline std::string render_table(const ExperimentReport& report) {
    detail::require_rows(report);
    std::vector<size_t> widths(report.columns.size());
    auto cell = [&](const ReportRow& row, size_t c) -> std::string {
        if (report.columns[c] == "pass") return row.pass ? "ok" : "FAIL";
        if (const FieldValue* v = row.find(report.columns[c])) return detail::cell_text(*v);
        return "";
    };
    for (size_t c = 0; c < report.columns.size(); ++c) widths[c] = report.columns[c].size();
    for (const ReportRow& row : report.rows)
        for (size_t c = 0; c < report.columns.size(); ++c)
            widths[c] = std::max(widths[c], cell(row, c).size());

    std::string out;
    auto emit_line = [&](const std::function<std::string(size_t)>& get) {
        for (size_t c = 0; c < report.columns.size(); ++c) {
            std::string s = get(c);
            out += s;
            if (c + 1 < report.columns.size()) out += std::string(widths[c] - s.size() + 2, ' ');
        }
        out += '\n';
    };
    emit_line([&](size_t c) { return report.columns[c]; });
    emit_line([&](size_t c) { return std::string(widths[c], '-'); });
    for (const ReportRow& row : report.rows)
        emit_line([&](size_t c) { return cell(row, c); });
    return out;
}

/** Writes the rendered report through a temporary file and an atomic rename,
    so readers never observe a partial report. */
inline void write_report_file(const ExperimentReport& report, const std::string& format,
                              const std::string& path) {
    std::string body;
    if (format == "csv") {
        body = render_csv(report);
    } else if (format == "json") {
        body = render_json(report);
    } else {
        throw std::invalid_argument("unknown format: " + format);
    }
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << body;
        if (!out.flush()) throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("could not move report into place at " + path);
    }
}

/** Executes the configured grid.  Throws std::invalid_argument on a bad
    configuration; check failures are reported per row, not thrown. */
inline ExperimentReport run(const ExperimentConfig& cfg) {
    if (cfg.jobs < 1) throw std::invalid_argument("worker count must be positive");
    if (cfg.format != "csv" && cfg.format != "json")
        throw std::invalid_argument("unknown format: " + cfg.format);

    std::pair<std::vector<std::string>, std::vector<detail::Task>> plan;
    if (cfg.command == "orbits") {
        plan = plan_orbits(cfg);
    } else if (cfg.command == "mass-check") {
        plan = plan_mass_check(cfg);
    } else if (cfg.command == "tree-check") {
        plan = plan_tree_check(cfg);
    } else if (cfg.command == "ratios") {
        plan = plan_ratios(cfg);
    } else if (cfg.command == "weil") {
        plan = plan_weil(cfg);
    } else if (cfg.command == "dims") {
        plan = plan_dims(cfg);
    } else if (cfg.command == "fejer") {
        plan = plan_fejer(cfg);
    } else {
        throw std::invalid_argument("unknown command: " + cfg.command);
    }

    if (plan.second.empty()) throw std::invalid_argument("the requested grid is empty");

    ExperimentReport report;
    report.command = cfg.command;
    report.columns = std::move(plan.first);
    report.rows = detail::run_tasks(plan.second, cfg.jobs);
    if (!cfg.output_path.empty()) write_report_file(report, cfg.format, cfg.output_path);
    return report;
}

}  // namespace gl2
