#pragma once
// File formats: TNS3 tensors, binary PPM (P6) images and solver traces.
//
// TNS3 layout (all little-endian):
//   "TNS3" | u16 version = 1 | u32 n1 | u32 n2 | u32 n3 | n1*n2*n3 f64
// with i fastest, then j, then k.

#include <cstdint>
#include <string>
#include <vector>

#include "tvb/solver.hpp"
#include "tvb/tensor.hpp"

namespace tvb {

inline constexpr std::uint16_t kTns3Version = 1;

std::vector<unsigned char> encode_tensor(const Tensor3& t);
Tensor3 decode_tensor(const std::vector<unsigned char>& bytes);
void write_tensor(const std::string& path, const Tensor3& t);
Tensor3 read_tensor(const std::string& path);

// height x width x 3 tensor with values in [0, 255].
Tensor3 decode_ppm(const std::vector<unsigned char>& bytes);
// Values are rounded and clamped to [0, 255].
std::vector<unsigned char> encode_ppm(const Tensor3& img);
Tensor3 load_image(const std::string& path);
void save_image(const std::string& path, const Tensor3& img);

enum class TraceFormat { Csv, Json };

inline constexpr const char* kTraceCsvHeader =
    "iter,objective,rmse_l,rmse_s,theta1,theta2,theta3,tnn_of_l,l1_of_s,residual_fro";

std::string format_trace(const std::vector<TraceRecord>& trace, TraceFormat fmt);
void write_trace(const std::string& path, const std::vector<TraceRecord>& trace,
                 TraceFormat fmt);
std::vector<TraceRecord> parse_trace_csv(const std::string& text);

// 17 significant digits; infinities print as inf / -inf and NaN as nan.
std::string format_double(double v);

std::vector<unsigned char> read_file(const std::string& path);
void write_file(const std::string& path, const std::vector<unsigned char>& bytes);
void write_text(const std::string& path, const std::string& text);

}  // namespace tvb
