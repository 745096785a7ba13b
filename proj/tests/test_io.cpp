#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>

#include "oracles.hpp"
#include "tvb/io.hpp"

using namespace tvb;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("tvb_test_io_" + name)).string();
}

std::vector<unsigned char> bytes_of(const std::string& s) {
    return std::vector<unsigned char>(s.begin(), s.end());
}

}  // namespace

TEST_CASE("TNS3 round trip is bitwise") {
    Rng rng(71, Stream::Perturbation);
    Tensor3 t = oracle::random_tensor(rng, 3, 4, 5);
    t(0, 0, 0) = -0.0;
    t(1, 0, 0) = 1e-310;
    const std::string p = temp_path("rt.tns3");
    write_tensor(p, t);
    const Tensor3 back = read_tensor(p);
    REQUIRE(back.same_dims(t));
    CHECK(std::memcmp(back.data(), t.data(), t.size() * sizeof(double)) == 0);
    std::filesystem::remove(p);
}

TEST_CASE("TNS3 byte layout") {
    Tensor3 t(2, 2, 2);
    for (std::size_t i = 0; i < 8; ++i) t.values()[i] = double(i) + 0.5;
    const std::vector<unsigned char> b = encode_tensor(t);
    CHECK(b.size() == 82);
    CHECK(std::string(b.begin(), b.begin() + 4) == "TNS3");
    CHECK(b[4] == 1);
    CHECK(b[5] == 0);
    CHECK(b[6] == 2);
    CHECK(b[10] == 2);
    CHECK(b[14] == 2);
    // 0.5 = 0x3FE0000000000000, little-endian
    CHECK(b[18 + 7] == 0x3F);
    CHECK(b[18 + 6] == 0xE0);
    CHECK(b[18] == 0x00);
}

TEST_CASE("TNS3 decoding errors") {
    std::vector<unsigned char> b = encode_tensor(Tensor3(2, 2, 2));
    std::vector<unsigned char> bad = b;
    std::memcpy(bad.data(), "XXXX", 4);
    CHECK_THROWS_AS(decode_tensor(bad), BadMagic);
    bad = b;
    bad[4] = 2;
    CHECK_THROWS_AS(decode_tensor(bad), UnsupportedVersion);
    bad = b;
    bad.pop_back();
    CHECK_THROWS_AS(decode_tensor(bad), TruncatedPayload);
    CHECK_THROWS_AS(decode_tensor(std::vector<unsigned char>(b.begin(), b.begin() + 10)),
                    TruncatedPayload);
    CHECK_THROWS_AS(read_tensor(temp_path("does_not_exist.tns3")), IoFailure);
}

TEST_CASE("PPM parsing") {
    std::string white = "P6\n2 2\n255\n" + std::string(12, char(255));
    const Tensor3 w = decode_ppm(bytes_of(white));
    CHECK(w.n1() == 2);
    CHECK(w.n2() == 2);
    CHECK(w.n3() == 3);
    for (double v : w.values()) CHECK(v == 255.0);

    std::string commented = "P6 # comment\n3 # w\n1\n255\n";
    for (int i = 0; i < 9; ++i) commented.push_back(char(i * 20));
    const Tensor3 c = decode_ppm(bytes_of(commented));
    CHECK(c.n1() == 1);
    CHECK(c.n2() == 3);
    // pixel (row 0, col 1) is the second RGB triple
    CHECK(c(0, 1, 0) == 60.0);
    CHECK(c(0, 1, 2) == 100.0);

    CHECK_THROWS_AS(decode_ppm(bytes_of("P3\n1 1\n255\n0 0 0")), UnsupportedFormat);
    CHECK_THROWS_AS(decode_ppm(bytes_of("P6\n1 1\n65535\n" + std::string(6, 'a'))),
                    UnsupportedFormat);
    CHECK_THROWS_AS(decode_ppm(bytes_of("P6\nx 1\n255\n")), CorruptHeader);
    CHECK_THROWS_AS(decode_ppm(bytes_of("P6\n2 2\n255\n" + std::string(11, 'a'))), CorruptHeader);
}

TEST_CASE("PPM encode clamps, rounds and round-trips") {
    Tensor3 img(3, 2, 3);
    img(0, 0, 0) = -5.0;
    img(1, 0, 0) = 300.0;
    img(2, 0, 0) = 12.4;
    img(0, 1, 1) = 12.6;
    const Tensor3 back = decode_ppm(encode_ppm(img));
    CHECK(back(0, 0, 0) == 0.0);
    CHECK(back(1, 0, 0) == 255.0);
    CHECK(back(2, 0, 0) == 12.0);
    CHECK(back(0, 1, 1) == 13.0);
    CHECK(encode_ppm(back) == encode_ppm(img));
    CHECK_THROWS_AS(encode_ppm(Tensor3(2, 2, 1)), DimMismatch);

    const std::string p = temp_path("img.ppm");
    save_image(p, back);
    CHECK(load_image(p) == back);
    std::filesystem::remove(p);
}

TEST_CASE("trace CSV and JSON") {
    CHECK(format_trace({}, TraceFormat::Csv) == std::string(kTraceCsvHeader) + "\n");
    TraceRecord r;
    r.iter = 1;
    r.objective = -1234.5678901234567;
    r.rmse_l = 0.1;
    r.rmse_s = 1.0 / 3.0;
    r.theta = {1e4, 2.5e-7, 3.0};
    r.tnn_of_l = 12.0;
    r.l1_of_s = 0.0;
    r.residual_fro = 7.0e-3;
    const std::string csv = format_trace({r}, TraceFormat::Csv);
    std::size_t lines = 0, commas = 0;
    for (char ch : csv) {
        lines += ch == '\n';
        commas += ch == ',';
    }
    CHECK(lines == 2);
    CHECK(commas == 18);
    const std::vector<TraceRecord> back = parse_trace_csv(csv);
    REQUIRE(back.size() == 1);
    CHECK(back[0].iter == 1);
    CHECK(back[0].objective == r.objective);
    CHECK(back[0].rmse_s == r.rmse_s);
    CHECK(back[0].theta == r.theta);
    CHECK(back[0].residual_fro == r.residual_fro);
    CHECK_THROWS_AS(parse_trace_csv("bad header\n"), CorruptHeader);

    const std::string js = format_trace({r}, TraceFormat::Json);
    CHECK(js.find("\"theta2\": 2.5e-07") != std::string::npos);
    CHECK(js.find("\"iter\": 1") != std::string::npos);
}

TEST_CASE("format_double special values") {
    CHECK(format_double(HUGE_VAL) == "inf");
    CHECK(format_double(-HUGE_VAL) == "-inf");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(std::strtod(format_double(0.1).c_str(), nullptr) == 0.1);
}
