#include "bwa/config.hpp"

#include "bwa/csv_io.hpp"
#include "bwa/errors.hpp"
#include "bwa/manifest.hpp"
#include "bwa/svg.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <filesystem>
#include <random>

using namespace bwa;
using nlohmann::json;

TEST_CASE("parse_config accepts the documented spectrum example") {
    const json doc = json::parse(
        R"({"command":"spectrum","mass":{"kind":"constant","beta":1.0},"h":0.02,"L":40,"out":"run"})");
    const ExperimentConfig cfg = parse_config(doc);
    CHECK(cfg.command == "spectrum");
    CHECK(cfg.output_dir == "run");
    CHECK(cfg.params.at("h").get<double>() == 0.02);
}

TEST_CASE("standing-wave with omega outside (0, beta) is rejected") {
    const json doc = json::parse(
        R"({"command":"standing-wave","omega":1.5,"mass":{"kind":"constant","beta":1.0},"out":"x"})");
    CHECK_THROWS_AS((void)parse_config(doc), config_error);
}

TEST_CASE("empty document names the missing command") {
    try {
        (void)parse_config(json::object());
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(std::string(e.what()).find("command") != std::string::npos);
    }
}

TEST_CASE("unknown keys are rejected with a field path") {
    const json doc = json::parse(
        R"({"command":"spectrum","mass":{"kind":"constant","beta":1.0},"h":0.02,"L":40,"bogus":1})");
    CHECK_THROWS_AS((void)parse_config(doc), config_error);

    const json doc2 = json::parse(
        R"({"command":"spectrum","mass":{"kind":"constant","beta":1.0,"junk":2},"h":0.02,"L":40})");
    CHECK_THROWS_AS((void)parse_config(doc2), config_error);
}

TEST_CASE("mass JSON round trip") {
    for (const char* text :
         {R"({"kind":"constant","beta":1.0})",
          R"({"kind":"domain_wall","beta_inf":1.0,"length_scale":1.0})",
          R"({"kind":"sign","beta_inf":2.0})"}) {
        const MassProfile m = mass_from_json(json::parse(text));
        const MassProfile back = mass_from_json(mass_to_json(m));
        CHECK(back.id() == m.id());
    }
    CHECK_THROWS_AS((void)mass_from_json(json::parse(R"({"kind":"constant","beta":-1})")),
                    config_error);
}

TEST_CASE("config echo reparses to an equal config") {
    const json doc = json::parse(
        R"({"command":"standing-wave","omega":0.5,"mass":{"kind":"constant","beta":1.0},"out":"w"})");
    const ExperimentConfig cfg = parse_config(doc);
    const ExperimentConfig again = parse_config(cfg.echo());
    CHECK(again.command == cfg.command);
    CHECK(again.params == cfg.params);
    CHECK(again.output_dir == cfg.output_dir);
}

TEST_CASE("lattice CSV round trip is exact at full precision") {
    std::mt19937 rng(59);
    const LatticeField u = test::random_field(rng, 0.1, -7, 15);
    const LatticeField back = parse_field_csv(field_csv(u));
    CHECK(back.origin == u.origin);
    CHECK(back.h == doctest::Approx(u.h).epsilon(1e-15));
    for (std::size_t j = 0; j < u.size(); ++j) {
        CHECK(back.c1[j] == u.c1[j]); // %.17g round-trips doubles exactly
        CHECK(back.c2[j] == u.c2[j]);
    }
}

TEST_CASE("CSV headers are mandatory") {
    CHECK_THROWS_AS((void)parse_field_csv("0,0,1,0,0,0\n"), io_error);
    CHECK_THROWS_AS((void)parse_continuum_csv("0,1,0,0,0\n", 4.0), io_error);
}

TEST_CASE("manifest is crash-evident and checksums its outputs") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "bwa_manifest_test";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const json echo = json::parse(R"({"command":"spectrum","h":0.1})");
    RunManifest man(dir, echo);
    man.begin();
    {
        const json j = json::parse(read_text_file(dir / "manifest.json"));
        CHECK(j.at("status") == "running");
        CHECK(j.at("config") == echo);
    }
    write_text_file(dir / "data.csv", "x,u,v\n0,1,2\n");
    man.add_output(dir / "data.csv");
    man.finish();
    {
        const json j = json::parse(read_text_file(dir / "manifest.json"));
        CHECK(j.at("status") == "complete");
        CHECK(j.at("outputs").at("data.csv") == sha256_hex("x,u,v\n0,1,2\n"));
        CHECK(j.contains("started_utc"));
        CHECK(j.contains("finished_utc"));
    }
    fs::remove_all(dir);
}

TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("svg emitters produce markers and polylines; empty datasets are refused") {
    ConvergenceReport rep;
    rep.mass_id = "constant(beta=1)";
    rep.T = 0.2;
    rep.rate = 1.0;
    rep.rows = {{0.2, 0.1, 0.2, 0.0}, {0.1, 0.05, 0.1, 0.0}, {0.05, 0.025, 0.05, 0.0},
                {0.025, 0.0125, 0.025, 0.0}};
    const std::string svg = svg_error_loglog(rep);
    CHECK(svg.find("<svg") == 0);
    std::size_t markers = 0;
    for (std::size_t pos = svg.find("<circle"); pos != std::string::npos;
         pos = svg.find("<circle", pos + 1))
        ++markers;
    CHECK(markers == 4);

    WaveProfile flat;
    flat.mass_id = "constant(beta=1)";
    flat.xs = {-1.0, 0.0, 1.0};
    flat.us = {0.0, 0.0, 0.0};
    flat.vs = {0.0, 0.0, 0.0};
    CHECK(svg_profile(flat).find("polyline") != std::string::npos);

    PlotSpec empty;
    empty.series.push_back({});
    CHECK_THROWS_AS((void)render_plot(empty), config_error);
}

TEST_CASE("atomic writes leave no partial file on a bad path") {
    // /dev/null is a file, so no directory can be created beneath it
    CHECK_THROWS_AS(write_text_file("/dev/null/x/y.csv", "data"), io_error);
}
