// Command line front end. Subcommands:
//   analyze  run checks against a form or presentation (file or catalog)
//   hecke    verify braid and Hecke identities for a bilinear form matrix
//   catalog  list the built-in examples
// Exit codes: 0 pass (or --report-only), 1 a check failed, 2 usage or
// parse problem, 3 resource budget exceeded.

#include <kform/engine.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace {

// "N=2,D=3" (either key optional, any order)
void parse_hypothesis(const std::string& s, kf::JobSpec& job) {
    size_t pos = 0;
    while (pos < s.size()) {
        size_t comma = s.find(',', pos);
        std::string part = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
        pos = comma == std::string::npos ? s.size() : comma + 1;
        if (part.empty()) continue;
        size_t eq = part.find('=');
        if (eq == std::string::npos)
            kf::fail("UsageError", "--hypothesis expects N=<n> and/or D=<d>, got '" + part + "'");
        std::string key = part.substr(0, eq), val = part.substr(eq + 1);
        unsigned long v = 0;
        try {
            size_t used = 0;
            v = std::stoul(val, &used);
            if (used != val.size()) throw std::invalid_argument(val);
        } catch (const std::exception&) {
            kf::fail("UsageError", "--hypothesis " + key + " needs a nonnegative integer, got '" +
                                       val + "'");
        }
        if (key == "N")
            job.hyp_N = uint32_t(v);
        else if (key == "D")
            job.hyp_D = uint32_t(v);
        else
            kf::fail("UsageError", "--hypothesis keys are N and D, got '" + key + "'");
    }
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t comma = s.find(',', pos);
        std::string part = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (!part.empty()) out.push_back(part);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

int emit(const kf::RunResult& r, const std::string& mode) {
    if (mode == "json")
        std::cout << r.report.dump(2) << "\n";
    else
        std::cout << r.text;
    return r.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact certification of graded algebras built from multilinear forms"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "run checks on a form or presentation");
    std::string input, catalog_ref, field, checks_csv, hypothesis, emit_mode = "text";
    unsigned max_degree = 0;
    bool have_max_degree = false;
    unsigned long budget_mb = 512;
    bool report_only = false;
    auto* in_opt = analyze->add_option("--input", input, "path to a kf/1 JSON form or presentation");
    auto* cat_opt = analyze->add_option("--catalog", catalog_ref,
                                        "catalog entry, e.g. sklyanin3:p=1/2,q=2");
    in_opt->excludes(cat_opt);
    analyze->add_option("--field", field, "coefficient field: q or fp:<prime>");
    analyze->add_option("--check", checks_csv,
                        "comma separated checks (default: everything applicable)");
    analyze->add_option("--hypothesis", hypothesis, "relation degree and duality length: N=2,D=3");
    analyze
        ->add_option("--max-degree", max_degree,
                     "verify up to this degree (default 8, or 6 for four generators)")
        ->each([&](const std::string&) { have_max_degree = true; });
    analyze->add_option("--budget-mb", budget_mb, "memory budget for the degree sweep (MiB)");
    analyze->add_option("--emit", emit_mode, "report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    analyze->add_flag("--report-only", report_only, "exit 0 even when a check fails");

    // hecke
    auto* hecke = app.add_subcommand("hecke", "braid and Hecke identities for a bilinear form");
    std::string b_path, k_path, standard_q, hecke_field = "q", hecke_emit = "text";
    bool hecke_report_only = false;
    hecke->add_option("--B", b_path, "triplet file for the bilinear form matrix")->required();
    auto* k_opt = hecke->add_option("--K", k_path, "triplet file for the candidate solution");
    auto* q_opt = hecke->add_option("--standard-q", standard_q,
                                    "build the standard solution q B^-1 at this scalar");
    k_opt->excludes(q_opt);
    hecke->add_option("--field", hecke_field, "coefficient field: q or fp:<prime>");
    hecke->add_option("--emit", hecke_emit, "report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    hecke->add_flag("--report-only", hecke_report_only, "exit 0 even when a check fails");

    // catalog
    auto* catalog = app.add_subcommand("catalog", "list built-in examples");
    std::string catalog_emit = "text";
    catalog->add_option("--emit", catalog_emit, "list format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    auto* list = catalog->add_subcommand("list", "print every entry with its parameters");
    catalog->require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // help prints exit 0, everything else is usage
    }

    if (analyze->parsed()) {
        kf::JobSpec job;
        job.input_path = input;
        job.catalog_ref = catalog_ref;
        if (!field.empty()) job.field_name = field;
        if (have_max_degree) job.max_degree = max_degree;
        job.budget_mb = budget_mb;
        job.report_only = report_only;
        try {
            if (!hypothesis.empty()) parse_hypothesis(hypothesis, job);
            job.checks = split_csv(checks_csv);
        } catch (const kf::Error& e) {
            return emit(kf::error_result(e), emit_mode);
        }
        return emit(kf::run_job(job), emit_mode);
    }

    if (hecke->parsed()) {
        kf::HeckeJob job;
        job.b_path = b_path;
        job.k_path = k_path;
        if (!standard_q.empty()) job.standard_q = standard_q;
        job.field_name = hecke_field;
        job.report_only = hecke_report_only;
        return emit(kf::run_hecke(job), hecke_emit);
    }

    // catalog (list is the only action)
    (void)list;
    if (catalog_emit == "json")
        std::cout << kf::catalog_list_json().dump(2) << "\n";
    else
        std::cout << kf::catalog_list_text();
    return 0;
}
