// One line per acceptance criterion; exit status is nonzero if any fails.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "zv/verifier.hpp"

using namespace zv;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Result {
    bool ok = true;
    std::string note;
    void fail(const std::string& why) {
        if (ok) note = why;
        ok = false;
    }
};

int failures = 0;

void criterion(int k, const std::string& what, const std::function<Result()>& body) {
    Result r;
    auto t0 = Clock::now();
    try {
        r = body();
    } catch (const std::exception& e) {
        r.fail(std::string("exception: ") + e.what());
    }
    std::ostringstream os;
    os.precision(3);
    os << "criterion " << k << ": " << (r.ok ? "PASS" : "FAIL") << " | " << what << " | " << std::fixed << seconds_since(t0) << " s";
    if (!r.note.empty()) os << " | " << r.note;
    std::cout << os.str() << std::endl;
    if (!r.ok) ++failures;
}

bool close_rel(const FieldElem& sym, const Real& num, double rel) {
    NumericProvider np(30);
    auto v = bind_eval(sym, np);
    PrecisionScope ps(np.working_digits());
    return abs(v.value - num) <= Real(rel) * abs(num) + Real("1e-25");
}

}  // namespace

int main() {
    SymbolicProvider sp;

    criterion(1, "second-term induction r in [2,5], all j: E0 coefficient == 2 c_r exactly, gamma_j recorded, < 10 s", [&] {
        Result res;
        auto t0 = Clock::now();
        int n_ids = 0;
        for (int r = 2; r <= 5; ++r) {
            auto chain = second_term_chain(sp, r, r - 2);
            FieldElem want = FieldElem(2) * c_r_closed(sp, r);
            for (auto& id : chain) {
                ++n_ids;
                if (!(id.e0 == want)) res.fail("E0 mismatch at r=" + std::to_string(r) + " j=" + std::to_string(id.j));
                if (!id.stray.empty()) res.fail("stray symbols at r=" + std::to_string(r) + " j=" + std::to_string(id.j));
                if (id.gamma.render().empty()) res.fail("gamma not recorded");
            }
        }
        double dt = seconds_since(t0);
        if (dt >= 10) res.fail("took " + std::to_string(dt) + " s");
        if (res.ok) res.note = std::to_string(n_ids) + " identities";
        return res;
    });

    criterion(2, "1 + beta'_{2r-1}(-1/2) H^{(2r)}_{-1}(0) == 2: exact r in [2,6], |v-2| < 1e-10 at 30 digits r in [2,4]", [&] {
        Result res;
        for (int r = 2; r <= 6; ++r)
            if (!(claim2_value(sp, r) == FieldElem(2))) res.fail("symbolic r=" + std::to_string(r));
        NumericProvider np(30);
        PrecisionScope ps(np.working_digits());
        Real worst = 0;
        for (int r = 2; r <= 4; ++r) worst = max(worst, Real(abs(claim2_value(np, r) - 2)));
        if (worst >= Real("1e-10")) res.fail("numeric deviation " + fmt(worst, 5));
        if (res.ok) res.note = "max numeric deviation " + fmt(worst, 3);
        return res;
    });

    criterion(3, "closed vs recursive c(n,r) n<=10, d(n,r) r<=6, c_r r<=6: exact and 1e-8 relative; c(3,1) == xiF(4)/xiF(3)", [&] {
        Result res;
        NumericProvider np(30);
        auto num = [&](auto fn) {
            PrecisionScope ps(np.working_digits());
            return Real(fn());
        };
        int count = 0;
        for (int n = 3; n <= 10; ++n)
            for (int r = 1; 2 * r + 1 <= n; ++r, ++count) {
                FieldElem a = c_nr_closed(sp, n, r);
                if (!(a == c_nr_recursive(sp, n, r))) res.fail("c exact " + std::to_string(n) + "," + std::to_string(r));
                if (!close_rel(a, num([&] { return c_nr_recursive(np, n, r); }), 1e-8)) res.fail("c numeric");
            }
        for (int r = 2; r <= 6; ++r)
            for (int n = r + 1; n <= 2 * r - 1; ++n, ++count) {
                FieldElem a = d_nr(sp, n, r, Mode::closed);
                if (!(a == d_nr(sp, n, r, Mode::recursive))) res.fail("d exact " + std::to_string(n) + "," + std::to_string(r));
                if (!close_rel(a, num([&] { return d_nr(np, n, r, Mode::recursive); }), 1e-8)) res.fail("d numeric");
            }
        for (int r = 1; r <= 6; ++r, ++count) {
            FieldElem a = c_r_closed(sp, r);
            if (!(a == c_r_recursive(sp, r))) res.fail("c_r exact " + std::to_string(r));
            if (!close_rel(a, num([&] { return c_r_recursive(np, r); }), 1e-8)) res.fail("c_r numeric");
        }
        if (!(c_nr_closed(sp, 3, 1) == xiF(Q(4)) / xiF(Q(3)))) res.fail("c(3,1)");
        if (res.ok) res.note = std::to_string(count) + " constants";
        return res;
    });

    criterion(4, "derived a(n,r), b(n,r), weak2 == closed displays exactly (D_E powers included), r <= 5", [&] {
        Result res;
        verify::Settings s;
        s.mode = verify::RunMode::symbolic;
        s.r_max = 5;
        auto reps = verify::run_all(verify::plan({"prop51", "prop53", "thm54"}, s, {}), s);
        for (auto& r : reps)
            if (!r.pass()) res.fail(r.check + " " + r.params.to_json().dump() + ": " + r.detail);
        if (res.ok) res.note = std::to_string(reps.size()) + " (n,r) pairs";
        return res;
    });

    criterion(5, "inversion sets == enumeration, c1/c2 assembly == closed with cancelling discriminants, F/G/H specializations, 1<=r<=n<=8", [&] {
        Result res;
        auto same = [](const ZetaExpr& a, const ZetaExpr& b) { return a.normalized() == b.normalized(); };
        for (int n = 1; n <= 8; ++n) {
            if (n >= 2 && !same(H_factor(n), gk::c2_closed(n, n))) res.fail("H " + std::to_string(n));
            for (int r = 1; r <= n; ++r) {
                std::string at = std::to_string(n) + "," + std::to_string(r);
                using gk::Weyl;
                if (gk::sigma_plus_enumerated(Weyl::w2, n, r) != gk::sigma_plus_closed(Weyl::w2, n, r)) res.fail("sigma w2 " + at);
                auto a2 = gk::assemble(Weyl::w2, n, r);
                if (!a2.discriminants_cancel || !same(a2.product, gk::c2_closed(n, r))) res.fail("c2 " + at);
                if (r == n) continue;
                if (gk::sigma_plus_enumerated(Weyl::w1, n, r) != gk::sigma_plus_closed(Weyl::w1, n, r)) res.fail("sigma w1 " + at);
                auto a1 = gk::assemble(Weyl::w1, n, r);
                if (!a1.discriminants_cancel || !same(a1.product, gk::c1_closed(n, r))) res.fail("c1 " + at);
                if (!same(F_factor(n, r), gk::c1_closed(n, r))) res.fail("F " + at);
                if (!same(G_factor(n, r), gk::c2_closed(n, r))) res.fail("G " + at);
            }
        }
        return res;
    });

    criterion(6, "numeric backend: FE, xiE factorization, xiF'(1/2) < 1e-20 on 20 points; residue at 1 == 1 within 1e-10 (Richardson)", [&] {
        Result res;
        auto rep = verify::run_check("backend", {}, verify::Settings{});
        if (!rep.pass()) res.fail(rep.detail);
        if (!rep.abs_err || *rep.abs_err >= 1e-20) res.fail("backend residual too large");
        // independent residue estimate: h xi_F(1+h) extrapolated in h = 2^-k
        NumericProvider np(30);
        PrecisionScope ps(np.working_digits());
        const int levels = 10;
        std::vector<std::vector<Real>> t(levels);
        for (int i = 0; i < levels; ++i) {
            Q h(1, 1 << (i + 2));
            t[i].push_back(to_real(h) * np.xi_coeff(XiKind::F, Q(1) + h, 0));
            for (int j = 1; j <= i; ++j) {
                Real f = pow(Real(2), j);
                t[i].push_back((f * t[i][j - 1] - t[i - 1][j - 1]) / (f - 1));
            }
        }
        Real dev = abs(t[levels - 1][levels - 1] - 1);
        if (dev >= Real("1e-10")) res.fail("Richardson residue off by " + fmt(dev, 5));
        if (res.ok) {
            std::ostringstream os;
            os << std::scientific << std::setprecision(3) << "max residual " << *rep.abs_err << ", Richardson " << fmt(dev, 3);
            res.note = os.str();
        }
        return res;
    });

    criterion(7, "default CLI run: partition, telescope r<=8, ring laws x1000, pole facts all pass, exit 0, < 60 s", [&] {
        Result res;
        auto t0 = Clock::now();
        FILE* f = popen(ZV_CLI, "r");
        if (!f) {
            res.fail("cannot start " ZV_CLI);
            return res;
        }
        std::string line;
        std::map<std::string, int> seen, passed;
        int max_tele_r = 0;
        char buf[1 << 16];
        while (fgets(buf, sizeof buf, f)) {
            line = buf;
            auto o = verify::json::parse(line);
            std::string c = o["check"];
            ++seen[c];
            if (o["status"] == "pass") ++passed[c];
            if (c == "telescope") max_tele_r = std::max(max_tele_r, o["params"]["r"].get<int>());
        }
        int st = pclose(f);
        double dt = seconds_since(t0);
        int code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
        if (code != 0) res.fail("exit code " + std::to_string(code));
        if (dt >= 60) res.fail("took " + std::to_string(dt) + " s");
        for (auto c : {"partition", "telescope", "ring_laws", "poles"}) {
            if (seen[c] == 0) res.fail(std::string("no ") + c + " reports");
            if (passed[c] != seen[c]) res.fail(std::string(c) + " not all green");
        }
        if (max_tele_r < 8) res.fail("telescope stops at r=" + std::to_string(max_tele_r));
        int total = 0;
        for (auto& [k, v] : seen) total += v;
        if (res.ok) res.note = std::to_string(total) + " reports";
        return res;
    });

    return failures == 0 ? 0 : 1;
}
