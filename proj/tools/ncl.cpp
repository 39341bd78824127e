// ncl: command-line front end for zeta functions, L-functions and K_1.

#include "ncl/error.hpp"
#include "ncl/json_io.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace ncl;

namespace {

struct Options {
    std::string format = "text";
    std::string output;
    unsigned threads = 0;
    bool timing = false;
};

void emit(const Options& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output);
    NCL_REQUIRE(out.good(), Errc::InvalidInput, "cannot write '" + o.output + "'");
    out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Scheme load_scheme(const std::string& spec, std::uint64_t q) {
    if (spec.rfind("builtin:", 0) == 0) {
        NCL_REQUIRE(q >= 2, Errc::InvalidInput, "builtin schemes need --q");
        return scheme_from_spec(spec, q);
    }
    return scheme_from_json(json_load(spec));
}

std::string join(const std::vector<std::uint64_t>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    return os.str();
}

std::string series_text(const LReport& r) {
    return r.series_form ? r.series_form->to_string() : r.euler_product.rep.to_string();
}

std::string report_text(const LReport& r, bool timing) {
    std::ostringstream os;
    os << "scheme: " << r.scheme << "\n"
       << "sheaf: " << r.sheaf << "\n"
       << "ring: " << r.ring->describe() << "\n"
       << "m: " << r.m << "\n"
       << "closed points by degree: " << join(r.stats.closed_points) << "\n"
       << (r.series_form ? "L(T) = " : "L(T) rep = ") << series_text(r) << "\n";
    for (const auto& g : r.global_sides)
        os << g.method << ": " << verdict_name(g.verdict.kind) << " (" << g.verdict.detail << ")"
           << (g.note.empty() ? "" : "; " + g.note) << "\n";
    if (!r.global_sides.empty()) os << "overall: " << verdict_name(r.overall()) << "\n";
    if (timing) os << "seconds: " << r.seconds << "\n";
    return os.str();
}

struct Job {
    SheafRep sheaf;
    int m;
    std::vector<std::string> methods;
};

Job load_job(const std::string& path, int m_override) {
    const Json j = json_load(path);
    const Scheme x = scheme_from_json(j.at("scheme"));
    const Json sj = j.value("sheaf", Json::object());
    SheafRep f = sheaf_from_json(x, sj, j.value("ring", Json()));
    int m = m_override > 0 ? m_override : j.value("m", 8);
    std::vector<std::string> methods;
    if (j.contains("verify")) methods = j.at("verify").get<std::vector<std::string>>();
    return {std::move(f), m, std::move(methods)};
}

int cmd_zeta(const Options& o, const std::string& spec, std::uint64_t q, int upto) {
    const Scheme s = load_scheme(spec, q);
    const auto counts = scheme_point_counts_upto(s, upto);
    const RationalFunction z = zeta_reconstruct_auto(counts);
    if (o.format == "json") {
        Json num = Json::array(), den = Json::array();
        for (const auto& c : z.num) num.push_back(c.get_str());
        for (const auto& c : z.den) den.push_back(c.get_str());
        emit(o, dump(Json{{"scheme", s.name},
                          {"field", field_to_json(s.base)},
                          {"counts", counts},
                          {"zeta", {{"num", num}, {"den", den}, {"pretty", z.pretty()}}}}));
    } else {
        std::ostringstream os;
        os << "N_1..N_" << upto << " = " << join(counts) << "\n"
           << "Z(T) = " << z.pretty() << "\n";
        emit(o, os.str());
    }
    return 0;
}

int cmd_lfun(const Options& o, const std::string& job_path, int m, bool verify) {
    Job job = load_job(job_path, m);
    const LReport r = verify ? verify_trace_formula(job.sheaf, job.m, job.methods) : make_report(job.sheaf, job.m);
    emit(o, o.format == "json" ? dump(report_to_json(r, o.timing)) : report_text(r, o.timing));
    return r.overall() == VerdictKind::Distinguished ? 2 : 0;
}

int cmd_k1(const Options& o, const std::string& ring_src, const std::string& matrix_src, const std::string& other_src) {
    const RingPtr ring = ring_from_json(json_load(ring_src));
    const Matrix a = matrix_from_json(ring, json_load(matrix_src));
    const K1Class c = k1_of_matrix(a, true);
    const bool replay = k1_certificate_valid(a, *c.certificate, c.rep);
    std::optional<Verdict> v;
    if (!other_src.empty()) v = k1_equal(c, k1_of_matrix(matrix_from_json(ring, json_load(other_src))));
    if (o.format == "json") {
        Json j{{"ring", ring_to_json(ring)}, {"class", k1_to_json(c)}, {"certificate_replays", replay}};
        if (ring->is_commutative()) j["det"] = elem_to_json(k1_det(c));
        if (v) j["comparison"] = verdict_to_json(*v);
        emit(o, dump(j));
    } else {
        std::ostringstream os;
        os << "ring: " << ring->describe() << "\n"
           << "rep: " << c.rep.to_string() << "\n"
           << "certificate: " << c.certificate->moves.size() << " moves, " << (replay ? "replays" : "FAILS") << "\n";
        if (v) os << "comparison: " << verdict_name(v->kind) << " (" << v->detail << ")\n";
        emit(o, os.str());
    }
    if (!replay) return 1;
    return v && v->kind == VerdictKind::Distinguished ? 2 : 0;
}

int cmd_points(const Options& o, const std::string& spec, std::uint64_t q, int maxdeg, bool list) {
    const Scheme s = load_scheme(spec, q);
    const auto counts = scheme_point_counts_upto(s, maxdeg);
    std::vector<std::uint64_t> closed;
    for (int d = 1; d <= maxdeg; ++d) {
        std::uint64_t k = 0;
        scheme_for_each_closed_point(s, d, [&](const ClosedPoint&) { ++k; });
        closed.push_back(k);
    }
    if (o.format == "json") {
        Json j{{"scheme", s.name}, {"field", field_to_json(s.base)}, {"counts", counts}, {"closed_points", closed}};
        if (list) j["points"] = closed_points_to_json(s, maxdeg);
        emit(o, dump(j));
    } else {
        std::ostringstream os;
        os << "N_1..N_" << maxdeg << " = " << join(counts) << "\n"
           << "closed points by degree: " << join(closed) << "\n";
        if (list)
            for (const auto& p : scheme_closed_points(s, maxdeg)) {
                os << "deg " << p.degree << " chart " << p.chart << " rep";
                for (auto c : p.rep) os << ' ' << c;
                os << "\n";
            }
        emit(o, os.str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ncl: noncommutative L-functions over finite fields"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--output,-o", o.output, "write the report to a file");
    app.add_option("--threads", o.threads, "worker threads for enumeration");
    app.add_flag("--timing", o.timing, "include wall-clock timing");

    std::string scheme_spec, job, ring_src, matrix_src, other_src;
    std::uint64_t q = 0;
    int upto = 6, m = 0, maxdeg = 3;
    bool list = false;

    auto* zeta = app.add_subcommand("zeta", "point counts and the reconstructed zeta function");
    zeta->add_option("--scheme", scheme_spec, "builtin:NAME or a scheme JSON file")->required();
    zeta->add_option("--q", q, "field order for builtin schemes");
    zeta->add_option("--upto", upto, "number of point counts")->check(CLI::Range(1, 64));

    auto* lfun = app.add_subcommand("lfun", "Euler product of a sheaf");
    lfun->add_option("--job", job, "job JSON file")->required();
    lfun->add_option("--m", m, "truncation (overrides the job)")->check(CLI::Range(1, 64));

    auto* verify = app.add_subcommand("verify", "Euler product against the global sides");
    verify->add_option("--job", job, "job JSON file")->required();
    verify->add_option("--m", m, "truncation (overrides the job)")->check(CLI::Range(1, 64));

    auto* k1 = app.add_subcommand("k1", "K_1 class of an invertible matrix");
    k1->add_option("--ring", ring_src, "ring JSON (file or inline)")->required();
    k1->add_option("--matrix", matrix_src, "matrix JSON (file or inline)")->required();
    k1->add_option("--compare", other_src, "second matrix to compare classes with");

    auto* points = app.add_subcommand("points", "point counts and closed points");
    points->add_option("--scheme", scheme_spec, "builtin:NAME or a scheme JSON file")->required();
    points->add_option("--q", q, "field order for builtin schemes");
    points->add_option("--maxdeg", maxdeg, "largest degree")->check(CLI::Range(1, 32));
    points->add_flag("--list", list, "list closed point representatives");

    for (auto* sub : {zeta, lfun, verify, k1, points}) {
        sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--output,-o", o.output, "write the report to a file");
        sub->add_option("--threads", o.threads, "worker threads for enumeration");
        sub->add_flag("--timing", o.timing, "include wall-clock timing");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (o.threads > 0) set_thread_count(o.threads);
        if (zeta->parsed()) return cmd_zeta(o, scheme_spec, q, upto);
        if (lfun->parsed()) return cmd_lfun(o, job, m, false);
        if (verify->parsed()) return cmd_lfun(o, job, m, true);
        if (k1->parsed()) return cmd_k1(o, ring_src, matrix_src, other_src);
        if (points->parsed()) return cmd_points(o, scheme_spec, q, maxdeg, list);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
