#include <CLI11.hpp>
#include <iostream>

#include "itype/acceptance.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Runs the acceptance criteria and prints one line per criterion."};
    std::vector<int> only;
    itype::acceptance::SuiteOptions opts;
    app.add_option("--only", only, "Criteria to run (default: all)")->check(CLI::Range(1, 11))->delimiter(',');
    app.add_option("--seed", opts.corpus.seed, "Seed for the random corpus and generators");
    app.add_option("--fuel", opts.fuel, "Expansion rounds per inference")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    itype::acceptance::Suite suite(opts);
    if (only.empty()) {
        for (int id = 1; id <= itype::acceptance::Suite::criterion_count; ++id) only.push_back(id);
    }
    bool all = true;
    for (int id : only) {
        auto r = suite.run(id);
        std::cout << to_string(r) << std::endl;
        all = all && r.passed;
    }
    return all ? 0 : 1;
}
