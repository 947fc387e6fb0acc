// Acceptance gate: seven end-to-end checks, one PASS/FAIL line each.
// Exit status is nonzero if any check fails.

#include <iostream>

#include "grassmann/experiments.hpp"

using namespace grassmann;

namespace {

int failures = 0;

void report(int idx, const std::string& what, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << idx << ": " << what;
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << std::endl;
    if (!pass) ++failures;
}

std::string summarize(const ExperimentReport& r) {
    std::ostringstream os;
    os << r.details.dump() << " in " << r.seconds << "s";
    return os.str();
}

} // namespace

int main() {
    // 1. Collineations of the 7-point plane: census and reconstruction.
    {
        auto r = run_fano_census();
        report(1, "fano plane collineation census reconstructs all 168 maps", r.pass,
               summarize(r));
    }

    // 2. Maximal inexact subsets at n=4 k=2 match the 12 structural sets.
    {
        auto r2 = run_inexact_census(4, 2, 2);
        auto r3 = run_inexact_census(4, 2, 3);
        bool pass = r2.pass && r3.pass && r2.details.at("mode") == "exhaustive" &&
                    r2.seconds < 60.0;
        report(2, "maximal inexact census at n=4 k=2 over F_2 and F_3", pass,
               summarize(r2) + " ; " + summarize(r3));
    }

    // 3. Maximal clique census at n=4 k=2 q=2: 15 stars, 15 tops, and the
    //    pairwise intersection profile {0, 1, 3}.
    {
        auto r = run_clique_census(4, 2, 2);
        bool profile_ok = r.pass;
        if (profile_ok) {
            for (auto& [sz, cnt] : r.details.at("intersection_profile").items())
                if (sz != "0" && sz != "1" && sz != "3") profile_ok = false;
        }
        report(3, "clique census at n=4 k=2 q=2 (15 stars, 15 tops, profile 0/1/3)",
               profile_ok, summarize(r));
    }

    // 4. Classifier differential: 1000+ cases across three parameter points.
    {
        auto a = run_classifier_differential(4, 2, 2, 1, 400, 101);
        auto b = run_classifier_differential(4, 2, 3, 1, 300, 102);
        auto c = run_classifier_differential(5, 2, 2, 1, 300, 103);
        report(4, "special bijection classifier differential (1000 cases)",
               a.pass && b.pass && c.pass,
               summarize(a) + " ; " + summarize(b) + " ; " + summarize(c));
    }

    // 5. Reconstruction round trips over F_2, F_3, F_4 at k in {1, 2, n-1},
    //    with gluing checks on 500 sampled pairs each.
    {
        bool pass = true;
        std::ostringstream detail;
        struct P { unsigned n, k, p, e; };
        std::vector<P> params{{4, 1, 2, 1}, {4, 2, 2, 1}, {4, 3, 2, 1},
                              {4, 1, 3, 1}, {4, 2, 3, 1}, {4, 3, 3, 1},
                              {4, 1, 2, 2}, {4, 2, 2, 2}, {4, 3, 2, 2}};
        for (const auto& pr : params) {
            auto r = run_roundtrip_suite(pr.n, pr.k, pr.p, pr.e, 100, 7000 + pr.k, 500);
            if (!r.pass) pass = false;
            detail << r.name << (r.pass ? " ok" : " FAIL") << " ";
        }
        report(5, "100 reconstruction round trips per parameter point with gluing checks",
               pass, detail.str());
    }

    // 6. Apartment preserver search census against the group order oracle.
    {
        auto a = run_apartment_preserver_search(4, 2, 2);
        auto b = run_apartment_preserver_search(3, 1, 3);
        auto c = run_apartment_preserver_search(3, 1, 2, 2);
        report(6, "apartment preserver search census matches group order oracle",
               a.pass && b.pass && c.pass,
               summarize(a) + " ; " + summarize(b) + " ; " + summarize(c));
    }

    // 7. Hyperplane procedure agreement at (n=3, q=2) and (n=4, q=2).
    {
        auto a = run_hyperplane_agreement(3, 2, 1, 25, 201);
        auto b = run_hyperplane_agreement(4, 2, 1, 25, 202);
        report(7, "hyperplane-to-point procedure agrees with annihilator transport",
               a.pass && b.pass, summarize(a) + " ; " + summarize(b));
    }

    return failures == 0 ? 0 : 1;
}
