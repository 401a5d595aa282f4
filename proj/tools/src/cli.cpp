#include "montes_cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "montes/error.hpp"
#include "montes/fixtures.hpp"
#include "montes/montes.hpp"
#include "montes/poly_parse.hpp"

namespace montes::cli {

namespace {

using json = nlohmann::ordered_json;

struct RawArgs {
    std::string poly;
    std::string prime;
    bool json = false;
    bool trace = false;
    std::uint64_t seed = 0;
    int jobs = 1;
    bool stress = false;
    std::int64_t max_iter = 0;
};

void add_common(CLI::App* sub, RawArgs& raw, bool needs_input) {
    if (needs_input) {
        sub->add_option("-f,--poly,poly", raw.poly, "monic polynomial: expression in x or [c0,c1,...]")->required();
        sub->add_option("-p,--prime", raw.prime, "prime p")->required();
    }
    sub->add_flag("--json", raw.json, "machine-readable output");
    sub->add_flag("--trace", raw.trace, "per-pass trace on stderr");
    sub->add_option("--seed", raw.seed, "RNG seed for equal-degree splitting")->envname("MONTES_SEED");
    sub->add_option("--jobs", raw.jobs, "worker threads (one per order-zero type)")->check(CLI::PositiveNumber);
    sub->add_option("--max-iter", raw.max_iter, "loop pass cap (default 10 n (1 + v(disc f)))");
    if (!needs_input) sub->add_flag("--stress", raw.stress, "include the large tower fixtures");
}

std::vector<std::string> coeff_strings(const IntPoly& P) {
    std::vector<std::string> out;
    for (const auto& c : P.coeffs()) out.push_back(c.get_str());
    return out;
}

std::string element_text(const IntPoly& num, std::int64_t nu, const mpz_class& p) {
    std::string s = num.to_string("t");
    if (nu == 0) return s;
    return "(" + s + ")/" + p.get_str() + "^" + std::to_string(nu);
}

MontesOptions options_for(const JobSpec& job, std::ostream& err) {
    MontesOptions o;
    o.seed = job.seed;
    o.jobs = job.jobs;
    o.max_iter = job.max_iter;
    if (job.trace) o.trace = &err;
    return o;
}

std::string verdict_text(bool maximal) { return maximal ? "maximal order" : "non-maximal order"; }

struct Checks {
    std::size_t integral = 0, total = 0;
    bool ef_sum = false;
    bool ok() const { return integral == total && ef_sum; }
};

Checks run_checks(const Analysis& a) {
    Checks c;
    auto B = basis_elements(a.res);
    c.total = B.size();
    for (const auto& b : B)
        if (integrality_oracle(b.num, b.nu, a.res.f, a.res.p)) ++c.integral;
    std::int64_t ef = 0;
    for (const auto& P : a.res.primes) ef += P.e * P.f;
    c.ef_sum = ef == a.res.f.degree();
    return c;
}

void print_text(const JobSpec& job, const Analysis& a, std::ostream& out) {
    const MontesResult& r = a.res;
    switch (job.command) {
        case Command::Decompose:
            for (const auto& P : r.primes) out << "e=" << P.e << " f=" << P.f << " type=" << P.type << "\n";
            break;
        case Command::Index: {
            out << "ind=" << r.total_index << " vdisc_f=" << r.vdisc_f << " vdisc_K=" << a.vdisc_K << "\n";
            out << "by order:";
            for (std::size_t i = 1; i < r.index_by_order.size(); ++i) out << " " << r.index_by_order[i];
            out << "\n";
            break;
        }
        case Command::PBasis: {
            for (const auto& b : basis_elements(r)) out << element_text(b.num, b.nu, r.p) << "\n";
            out << "numerator criterion: " << (r.numerator_ok ? "holds" : "fails") << " (sum nu=" << r.sum_nu()
                << " ind_num=" << (r.ind_num ? std::to_string(*r.ind_num) : std::string("?"))
                << " ind=" << r.total_index << ")\n";
            break;
        }
        case Command::PStem: {
            for (const auto& s : a.stem.entries) out << element_text(s.g, s.mu, r.p) << "\n";
            if (!a.diagnostic.empty()) out << "note: " << a.diagnostic << "\n";
            out << "stem criterion: " << (r.stem_weight_ok ? "holds" : "fails") << " (weight="
                << (a.stem_built ? std::to_string(stem_weight(a.stem, r.f.degree())) : std::string("?"))
                << " ind=" << r.total_index << ")\n";
            out << verdict_text(r.maximal) << "\n";
            break;
        }
        default:
            break;
    }
}

int run_bench(const JobSpec& job, std::ostream& out, std::ostream& err) {
    struct Fixture {
        std::string name;
        IntPoly f;
        mpz_class p;
    };
    std::vector<Fixture> fx;
    fx.push_back({"golden", fixtures::golden(), 2});
    for (auto [p, k] : {std::pair<long, unsigned>{7, 5}, {13, 50}, {7, 500}})
        fx.push_back({"quartic p=" + std::to_string(p) + " k=" + std::to_string(k), fixtures::quartic(p, k), p});
    int top = job.stress ? 9 : 5;
    for (int j = 2; j <= top; ++j) fx.push_back({"tower phi" + std::to_string(j), fixtures::tower(j), 2});
    for (std::uint64_t s = 0; s < 5; ++s) {
        auto g = fixtures::random_mixed(job.seed * 1000 + s);
        fx.push_back({"mixed seed=" + std::to_string(job.seed * 1000 + s), g.f, g.p});
    }
    json rows = json::array();
    bool all_max = true;
    for (const auto& x : fx) {
        auto t0 = std::chrono::steady_clock::now();
        Analysis a = analyze(x.f, x.p, options_for(job, err));
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        all_max = all_max && a.res.maximal;
        json row;
        row["name"] = x.name;
        row["p"] = x.p.get_str();
        row["degree"] = x.f.degree();
        row["ind"] = a.res.total_index;
        row["maximal"] = a.res.maximal;
        row["ms"] = ms;
        rows.push_back(row);
        if (!job.json) {
            out << x.name << ": n=" << x.f.degree() << " ind=" << a.res.total_index << " "
                << verdict_text(a.res.maximal) << " " << ms << " ms" << std::endl;
        }
    }
    if (job.json) {
        json j;
        j["seed"] = job.seed;
        j["fixtures"] = rows;
        out << j.dump() << "\n";
    }
    return all_max ? 0 : 2;
}

}  // namespace

JobSpec parse_input(const std::vector<std::string>& args) {
    CLI::App app{"Prime decomposition, p-index and p-integral bases via higher order Newton polygons", "montes"};
    app.require_subcommand(1);
    RawArgs raw;
    struct Sub {
        const char* name;
        const char* help;
        Command cmd;
    };
    const Sub subs[] = {
        {"decompose", "prime ideal decomposition of p (e, f per prime)", Command::Decompose},
        {"index", "ind(f), v(disc f) and v(disc K)", Command::Index},
        {"pbasis", "p-integral basis of quotient products", Command::PBasis},
        {"pstem", "triangular p-stem and maximality verdict", Command::PStem},
        {"check", "run every oracle on the computed basis", Command::Check},
        {"bench", "time the built-in fixtures", Command::Bench},
    };
    std::vector<std::pair<CLI::App*, Command>> apps;
    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        add_common(sub, raw, s.cmd != Command::Bench);
        apps.emplace_back(sub, s.cmd);
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw InputError(e.what());
    }
    JobSpec job;
    for (const auto& [sub, cmd] : apps)
        if (sub->parsed()) job.command = cmd;
    job.json = raw.json;
    job.trace = raw.trace;
    job.seed = raw.seed;
    job.jobs = raw.jobs;
    job.stress = raw.stress;
    job.max_iter = raw.max_iter;
    if (job.command == Command::Bench) return job;

    job.p = parse_integer(raw.prime);
    if (job.p < 2 || !is_probable_prime(job.p)) throw InputError("p must be a prime, got " + raw.prime);
    job.f = parse_poly(raw.poly);
    if (job.f.degree() < 1) throw InputError("f must have degree >= 1");
    if (!job.f.is_monic()) throw InputError("f must be monic");
    return job;
}

json to_json(const JobSpec& job, const Analysis& a) {
    const MontesResult& r = a.res;
    json j;
    j["p"] = r.p.get_str();
    j["f"] = coeff_strings(r.f);
    j["ind"] = r.total_index;
    j["vdisc_f"] = r.vdisc_f;
    j["vdisc_K"] = a.vdisc_K;
    json primes = json::array();
    for (const auto& P : r.primes) {
        json e;
        e["e"] = P.e;
        e["f"] = P.f;
        primes.push_back(e);
    }
    j["primes"] = primes;
    json basis = json::array();
    for (const auto& b : basis_elements(r)) {
        json e;
        e["num"] = coeff_strings(b.num);
        e["nu"] = b.nu;
        basis.push_back(e);
    }
    j["basis"] = basis;
    json stem = json::array();
    for (const auto& s : a.stem.entries) {
        json e;
        e["g"] = coeff_strings(s.g);
        e["mu"] = s.mu;
        stem.push_back(e);
    }
    j["stem"] = stem;
    j["maximal"] = r.maximal;
    j["seed"] = job.seed;
    json t;
    t["montes"] = a.timings.montes_ms;
    t["numerator_criterion"] = a.timings.numerator_ms;
    t["stem"] = a.timings.stem_ms;
    j["timings_ms"] = t;
    return j;
}

int run_job(const JobSpec& job, std::ostream& out, std::ostream& err) {
    try {
        if (job.command == Command::Bench) return run_bench(job, out, err);
        Analysis a = analyze(job.f, job.p, options_for(job, err));
        int code = a.res.maximal ? 0 : 2;
        if (job.command == Command::Check) {
            Checks c = run_checks(a);
            if (job.json) {
                json j = to_json(job, a);
                j["checks"] = {{"integral", c.integral},
                               {"elements", c.total},
                               {"ef_sum", c.ef_sum},
                               {"numerator_criterion", a.res.numerator_ok},
                               {"stem_criterion", a.res.stem_weight_ok}};
                out << j.dump() << "\n";
            } else {
                out << "integrality: " << c.integral << "/" << c.total << " elements integral\n";
                out << "sum e*f = n: " << (c.ef_sum ? "yes" : "no") << "\n";
                out << "numerator criterion: " << (a.res.numerator_ok ? "holds" : "fails") << "\n";
                out << "stem criterion: " << (a.res.stem_weight_ok ? "holds" : "fails") << "\n";
                out << verdict_text(a.res.maximal) << "\n";
            }
            if (!c.ok()) {
                err << "error: oracle check failed\n";
                return 1;
            }
            return code;
        }
        if (job.json)
            out << to_json(job, a).dump() << "\n";
        else
            print_text(job, a, out);
        return code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    JobSpec job;
    try {
        job = parse_input(args);
    } catch (const HelpRequested& h) {
        out << h.what();
        return 0;
    } catch (const ParseError& e) {
        err << "error: cannot parse polynomial at position " << e.position << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return run_job(job, out, err);
}

}  // namespace montes::cli
