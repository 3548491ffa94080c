#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "edgetransit/fixtures/fixture.hpp"

int main(int argc, char** argv) {
    using namespace edgetransit;

    CLI::App app{"Deterministic AVL fixture generator"};
    std::string spec_path;
    std::string out_dir;

    app.add_option("--spec", spec_path, "Fixture spec file (key = value lines)")->required();
    app.add_option("--out", out_dir, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const auto spec = fixtures::FixtureSpec::load(spec_path);
        const auto fixture = fixtures::generate(spec, out_dir);
        std::cout << fixture.csv_path << " (" << fixture.data_rows << " rows, "
                  << fixture.trips << " trips)\n"
                  << fixture.ground_truth_path << '\n'
                  << fixture.schedule_path << '\n';

        if (spec.faults.any()) {
            const auto corrupted =
                (std::filesystem::path(out_dir) / "avl_corrupted.csv").string();
            const auto manifest =
                fixtures::corrupt(fixture.csv_path, corrupted, spec.faults, spec.seed);

            const nlohmann::json j = {{"duplicates", manifest.duplicates},
                                      {"dropped", manifest.dropped},
                                      {"reordered", manifest.reordered},
                                      {"malformed_inserted", manifest.malformed_inserted},
                                      {"fields_blanked", manifest.fields_blanked},
                                      {"targeted_slot_drops", manifest.targeted_slot_drops}};
            const auto manifest_path =
                (std::filesystem::path(out_dir) / "corruption_manifest.json").string();
            std::ofstream out(manifest_path, std::ios::binary);
            out << j.dump(2) << '\n';
            if (!out) throw std::runtime_error("cannot write " + manifest_path);

            std::cout << corrupted << '\n' << manifest_path << '\n';
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "gen-fixture: " << e.what() << '\n';
        return 1;
    }
}
