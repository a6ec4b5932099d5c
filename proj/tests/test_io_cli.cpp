#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "qmcap/io.hpp"
#include "qmcap/models.hpp"

using namespace qmcap;
using nlohmann::json;

TEST_CASE("matrix JSON roundtrip preserves complex entries") {
    Matrix m(2, 2);
    m << Complex(1, 2), Complex(0, -1), Complex(3.5, 0), Complex(-0.25, 0.75);
    Matrix back = io::matrix_from_json(io::to_json(m), "m");
    CHECK((m - back).norm() == 0.0);
}

TEST_CASE("state JSON roundtrip") {
    DensityMatrix rho = DensityMatrix::maximally_mixed(3);
    DensityMatrix back = io::state_from_json(io::to_json(rho));
    CHECK((rho.mat - back.mat).norm() == 0.0);
}

TEST_CASE("POVM JSON roundtrip with weights and labels") {
    POVM sic = weyl_heisenberg_povm(2, sic_qubit_fiducial()).povm;
    sic.weights = {0.25, 0.25, 0.25, 0.25};
    sic.labels = {"a", "b", "c", "d"};
    POVM back = io::povm_from_json(io::to_json(sic));
    REQUIRE(back.outcomes() == 4);
    for (int y = 0; y < 4; ++y)
        CHECK((back.elements[y] - sic.elements[y]).norm() == 0.0);
    CHECK(back.weights == sic.weights);
    CHECK(back.labels == sic.labels);
}

TEST_CASE("ensemble JSON roundtrip") {
    Ensemble pi;
    pi.probs = {0.5, 0.5};
    pi.states.push_back(Matrix::Identity(2, 2) * 0.5);
    Matrix s = Matrix::Zero(2, 2);
    s(0, 0) = 1.0;
    pi.states.push_back(s);
    Ensemble back = io::ensemble_from_json(io::to_json(pi));
    CHECK(back.probs == pi.probs);
    CHECK((back.states[1] - pi.states[1]).norm() == 0.0);
}

TEST_CASE("schema errors name the offending field") {
    auto message_of = [](auto fn) -> std::string {
        try {
            fn();
        } catch (const io::SchemaError& e) {
            return e.what();
        }
        return "";
    };

    std::string msg =
        message_of([] { io::state_from_json(json{{"dim", 2}}); });
    CHECK(msg.find("matrix") != std::string::npos);

    msg = message_of([] {
        io::povm_from_json(json{{"elements", json::array()}});
    });
    CHECK(msg.find("elements") != std::string::npos);

    msg = message_of([] {
        json j = json::parse(R"({"probs": [0.5], "states": []})");
        io::ensemble_from_json(j);
    });
    CHECK(msg.find("probs") != std::string::npos);

    msg = message_of([] {
        json j = json::parse(
            R"({"matrix": [[[0.5, 0], [0, 0]], [[0, 0]]]})");
        io::state_from_json(j);
    });
    CHECK(msg.find("square") != std::string::npos);

    // Non-numeric complex component.
    msg = message_of([] {
        json j = json::parse(R"({"matrix": [[["x", 0]]]})");
        io::state_from_json(j);
    });
    CHECK(msg.find("[re, im]") != std::string::npos);
}

TEST_CASE("dim consistency is enforced") {
    json j = io::to_json(DensityMatrix::maximally_mixed(2));
    j["dim"] = 3;
    CHECK_THROWS_AS(io::state_from_json(j), io::SchemaError);

    json p = io::to_json(weyl_heisenberg_povm(2, sic_qubit_fiducial()).povm);
    p["weights"] = {1.0};  // wrong count
    CHECK_THROWS_AS(io::povm_from_json(p), io::SchemaError);
}

TEST_CASE("file save/load roundtrip and parse failure") {
    const std::string path = "io_roundtrip_tmp.json";
    json j = io::to_json(DensityMatrix::maximally_mixed(2));
    io::save_file(path, j);
    json back = io::load_file(path);
    CHECK(back == j);
    std::remove(path.c_str());

    CHECK_THROWS_AS(io::load_file("does_not_exist.json"), io::SchemaError);

    const std::string bad = "io_bad_tmp.json";
    {
        std::ofstream out(bad);
        out << "{ not json";
    }
    CHECK_THROWS_AS(io::load_file(bad), io::SchemaError);
    std::remove(bad.c_str());
}
