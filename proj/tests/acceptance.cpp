#include "rsiegel/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <vector>

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance criteria"};
    int criterion = 0;
    bool quick = false;
    app.add_option("--criterion", criterion, "1 .. 13, 0 for all")->check(CLI::Range(0, rsiegel::criterion_count));
    app.add_flag("--quick", quick, "reduced sweeps");
    CLI11_PARSE(app, argc, argv);

    std::vector<int> ids;
    if (criterion == 0)
        for (int i = 1; i <= rsiegel::criterion_count; ++i) ids.push_back(i);
    else
        ids.push_back(criterion);

    bool all = true;
    for (int id : ids) {
        rsiegel::CriterionResult r = rsiegel::run_criterion(id, quick);
        std::printf("[%s] criterion %2d %-32s %.1fs  %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                    r.detail.c_str());
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
