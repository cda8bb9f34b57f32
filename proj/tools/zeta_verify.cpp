#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "zv/dsl.hpp"

namespace {

using zv::verify::Report;

int exit_code(const std::vector<Report>& reps) {
    bool fail = false;
    for (auto& r : reps) {
        if (r.status == "error") return 2;
        fail = fail || r.status != "pass";
    }
    return fail ? 1 : 0;
}

bool parse_window(const std::string& s, zv::Window& w) {
    auto comma = s.find(',');
    if (comma == std::string::npos) return false;
    try {
        std::size_t a = 0, b = 0;
        std::string lo = s.substr(0, comma), hi = s.substr(comma + 1);
        w.lo = std::stoi(lo, &a);
        w.hi = std::stoi(hi, &b);
        return a == lo.size() && b == hi.size() && w.lo <= w.hi;
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zeta_verify: checks for the constant-term calculus of spherical Eisenstein series on U(n,n)"};
    std::vector<std::string> checks;
    std::optional<int> n, r, j;
    int r_max = 5;
    std::string mode = "both", window = "-2,2", script, out;
    unsigned prec = 30;
    bool list = false;
    app.add_option("--check", checks, "check to run (repeatable); default all");
    app.add_option("--r", r, "pin r");
    app.add_option("--n", n, "pin n");
    app.add_option("--j", j, "pin j");
    app.add_option("--r-max", r_max, "largest r in the default sweep")->check(CLI::PositiveNumber);
    app.add_option("--mode", mode, "symbolic, numeric or both")->check(CLI::IsMember({"symbolic", "numeric", "both"}));
    app.add_option("--prec", prec, "numeric digits")->check(CLI::Range(15u, 2000u));
    app.add_option("--window", window, "Laurent window LO,HI");
    app.add_option("--script", script, "run a script instead of the registry");
    app.add_option("--out", out, "write JSON lines here instead of stdout");
    app.add_flag("--list", list, "print the registry");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (list) {
        for (auto& d : zv::verify::registry()) std::cout << d.name << "\t" << d.citation << "\n";
        return 0;
    }

    zv::verify::Settings s;
    s.mode = *zv::verify::parse_run_mode(mode);
    s.digits = prec;
    s.r_max = r_max;
    if (!parse_window(window, s.window)) {
        std::cerr << "bad --window '" << window << "': expected LO,HI with LO <= HI\n";
        return 2;
    }
    for (auto& c : checks)
        if (!zv::verify::find_check(c)) {
            std::cerr << "unknown check '" << c << "'; see --list\n";
            return 2;
        }

    std::vector<Report> reps;
    if (!script.empty()) {
        std::ifstream in(script);
        if (!in) {
            std::cerr << "cannot read " << script << "\n";
            return 2;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            reps = zv::dsl::exec_script(zv::dsl::parse_script(buf.str()), s);
        } catch (const zv::dsl::SyntaxError& e) {
            std::cerr << script << ":" << e.what() << "\n";
            return 2;
        }
    } else {
        zv::verify::Params pin;
        pin.n = n;
        pin.r = r;
        pin.j = j;
        reps = zv::verify::run_all(zv::verify::plan(checks, s, pin), s);
    }

    std::ofstream file;
    if (!out.empty()) {
        file.open(out);
        if (!file) {
            std::cerr << "cannot write " << out << "\n";
            return 2;
        }
    }
    std::ostream& os = out.empty() ? std::cout : file;
    for (auto& rep : reps) os << rep.to_json().dump() << "\n";
    os.flush();
    return exit_code(reps);
}
