#include "tvb/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

namespace tvb {
namespace {

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
    out.push_back(static_cast<unsigned char>(v & 0xff));
    out.push_back(static_cast<unsigned char>(v >> 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<unsigned char>((v >> (8 * b)) & 0xff));
}

void put_f64(std::vector<unsigned char>& out, double d) {
    std::uint64_t v;
    std::memcpy(&v, &d, sizeof v);
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<unsigned char>((v >> (8 * b)) & 0xff));
}

std::uint64_t get_le(const unsigned char* p, int bytes) {
    std::uint64_t v = 0;
    for (int b = bytes - 1; b >= 0; --b) v = (v << 8) | p[b];
    return v;
}

}  // namespace

std::vector<unsigned char> encode_tensor(const Tensor3& t) {
    std::vector<unsigned char> out;
    out.reserve(18 + 8 * t.size());
    out.insert(out.end(), {'T', 'N', 'S', '3'});
    put_u16(out, kTns3Version);
    put_u32(out, std::uint32_t(t.n1()));
    put_u32(out, std::uint32_t(t.n2()));
    put_u32(out, std::uint32_t(t.n3()));
    for (double v : t.values()) put_f64(out, v);
    return out;
}

Tensor3 decode_tensor(const std::vector<unsigned char>& bytes) {
    if (bytes.size() < 4 || std::memcmp(bytes.data(), "TNS3", 4) != 0) {
        throw BadMagic("expected TNS3 header");
    }
    if (bytes.size() < 18) throw TruncatedPayload("header shorter than 18 bytes");
    const auto version = std::uint16_t(get_le(bytes.data() + 4, 2));
    if (version != kTns3Version) {
        throw UnsupportedVersion("TNS3 version " + std::to_string(version));
    }
    const std::size_t n1 = get_le(bytes.data() + 6, 4);
    const std::size_t n2 = get_le(bytes.data() + 10, 4);
    const std::size_t n3 = get_le(bytes.data() + 14, 4);
    const std::size_t count = n1 * n2 * n3;
    if (bytes.size() != 18 + 8 * count) {
        throw TruncatedPayload("payload has " + std::to_string(bytes.size() - 18) +
                               " bytes, expected " + std::to_string(8 * count));
    }
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t v = get_le(bytes.data() + 18 + 8 * i, 8);
        std::memcpy(&values[i], &v, sizeof v);
    }
    return tensor_from_values(n1, n2, n3, std::move(values));
}

std::vector<unsigned char> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path);
    return std::vector<unsigned char>(std::istreambuf_iterator<char>(in),
                                      std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::vector<unsigned char>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!out) throw IoFailure("write failed: " + path);
}

void write_text(const std::string& path, const std::string& text) {
    write_file(path, std::vector<unsigned char>(text.begin(), text.end()));
}

void write_tensor(const std::string& path, const Tensor3& t) { write_file(path, encode_tensor(t)); }

Tensor3 read_tensor(const std::string& path) { return decode_tensor(read_file(path)); }

Tensor3 decode_ppm(const std::vector<unsigned char>& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6') {
        throw UnsupportedFormat("only binary PPM (P6) images are supported");
    }
    std::size_t pos = 2;
    auto read_field = [&]() -> std::size_t {
        for (;;) {
            while (pos < bytes.size() && std::isspace(bytes[pos])) ++pos;
            if (pos < bytes.size() && bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
                continue;
            }
            break;
        }
        if (pos >= bytes.size() || !std::isdigit(bytes[pos])) {
            throw CorruptHeader("expected a decimal field in the PPM header");
        }
        std::size_t v = 0;
        while (pos < bytes.size() && std::isdigit(bytes[pos])) {
            v = v * 10 + std::size_t(bytes[pos] - '0');
            if (v > 1000000) throw CorruptHeader("PPM header field out of range");
            ++pos;
        }
        return v;
    };
    const std::size_t w = read_field();
    const std::size_t h = read_field();
    const std::size_t maxval = read_field();
    if (w == 0 || h == 0) throw CorruptHeader("PPM dimensions must be positive");
    if (maxval != 255) throw UnsupportedFormat("only 8-bit PPM (maxval 255) is supported");
    if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
        throw CorruptHeader("missing whitespace after PPM maxval");
    }
    ++pos;
    if (bytes.size() - pos < w * h * 3) throw CorruptHeader("PPM payload is truncated");
    Tensor3 img(h, w, 3);
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = 0; j < w; ++j) {
            for (std::size_t k = 0; k < 3; ++k) {
                img(i, j, k) = double(bytes[pos + 3 * (i * w + j) + k]);
            }
        }
    }
    return img;
}

std::vector<unsigned char> encode_ppm(const Tensor3& img) {
    if (img.n3() != 3) throw DimMismatch("PPM output needs exactly 3 channels");
    const std::string header =
        "P6\n" + std::to_string(img.n2()) + " " + std::to_string(img.n1()) + "\n255\n";
    std::vector<unsigned char> out(header.begin(), header.end());
    for (std::size_t i = 0; i < img.n1(); ++i) {
        for (std::size_t j = 0; j < img.n2(); ++j) {
            for (std::size_t k = 0; k < 3; ++k) {
                const double v = std::round(std::clamp(img(i, j, k), 0.0, 255.0));
                out.push_back(static_cast<unsigned char>(v));
            }
        }
    }
    return out;
}

Tensor3 load_image(const std::string& path) { return decode_ppm(read_file(path)); }

void save_image(const std::string& path, const Tensor3& img) { write_file(path, encode_ppm(img)); }

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_trace(const std::vector<TraceRecord>& trace, TraceFormat fmt) {
    if (fmt == TraceFormat::Csv) {
        std::string out = std::string(kTraceCsvHeader) + "\n";
        for (const TraceRecord& r : trace) {
            out += std::to_string(r.iter);
            for (double v : {r.objective, r.rmse_l, r.rmse_s, r.theta[0], r.theta[1], r.theta[2],
                             r.tnn_of_l, r.l1_of_s, r.residual_fro}) {
                out += "," + format_double(v);
            }
            out += "\n";
        }
        return out;
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const TraceRecord& r : trace) {
        nlohmann::ordered_json o;
        o["iter"] = r.iter;
        o["objective"] = r.objective;
        o["rmse_l"] = r.rmse_l;
        o["rmse_s"] = r.rmse_s;
        o["theta1"] = r.theta[0];
        o["theta2"] = r.theta[1];
        o["theta3"] = r.theta[2];
        o["tnn_of_l"] = r.tnn_of_l;
        o["l1_of_s"] = r.l1_of_s;
        o["residual_fro"] = r.residual_fro;
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

void write_trace(const std::string& path, const std::vector<TraceRecord>& trace,
                 TraceFormat fmt) {
    write_text(path, format_trace(trace, fmt));
}

std::vector<TraceRecord> parse_trace_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kTraceCsvHeader) {
        throw CorruptHeader("trace CSV header mismatch");
    }
    std::vector<TraceRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) f.push_back(cell);
        if (f.size() != 10) throw CorruptHeader("trace CSV row needs 10 fields");
        TraceRecord r;
        r.iter = std::stoi(f[0]);
        double* dst[] = {&r.objective, &r.rmse_l,   &r.rmse_s,  &r.theta[0],    &r.theta[1],
                         &r.theta[2],  &r.tnn_of_l, &r.l1_of_s, &r.residual_fro};
        for (int i = 0; i < 9; ++i) *dst[i] = std::strtod(f[std::size_t(i + 1)].c_str(), nullptr);
        out.push_back(r);
    }
    return out;
}

}  // namespace tvb
