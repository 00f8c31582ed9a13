#pragma once

#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <jpeglib.h>
#include <png.h>

#include "lef/error.hpp"
#include "lef/raster.hpp"

namespace lef {

inline std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError(path, "read failed");
  return bytes;
}

inline void write_file_bytes(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError(path, "write failed");
}

// 8-bit RGB PNG, no alpha.
inline void write_mask_png(const RasterMask& mask, const std::string& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(mask.width);
  image.height = static_cast<png_uint_32>(mask.height);
  image.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.c_str(), 0, mask.pixels.data(),
                               mask.width * 3, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw IoError(path, "PNG write failed: " + message);
  }
}

inline RasterMask read_png(const std::string& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    const std::string message = image.message;
    png_image_free(&image);
    throw IoError(path, "PNG read failed: " + message);
  }
  image.format = PNG_FORMAT_RGB;
  RasterMask mask(static_cast<int>(image.width), static_cast<int>(image.height),
                  MaskStyle::semantic);
  if (!png_image_finish_read(&image, nullptr, mask.pixels.data(), mask.width * 3,
                             nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw IoError(path, "PNG decode failed: " + message);
  }
  return mask;
}

namespace detail {

struct JpegErrorHook {
  jpeg_error_mgr mgr;
  std::jmp_buf jump;
};

inline void jpeg_error_exit(j_common_ptr info) {
  std::longjmp(reinterpret_cast<JpegErrorHook*>(info->err)->jump, 1);
}

}  // namespace detail

inline RasterMask read_jpeg(const std::string& path) {
  std::FILE* file = std::fopen(path.c_str(), "rb");
  if (!file) throw IoError(path, "cannot open for reading");

  jpeg_decompress_struct info;
  detail::JpegErrorHook hook;
  info.err = jpeg_std_error(&hook.mgr);
  hook.mgr.error_exit = detail::jpeg_error_exit;
  if (setjmp(hook.jump)) {
    jpeg_destroy_decompress(&info);
    std::fclose(file);
    throw IoError(path, "JPEG decode failed");
  }
  jpeg_create_decompress(&info);
  jpeg_stdio_src(&info, file);
  jpeg_read_header(&info, TRUE);
  info.out_color_space = JCS_RGB;
  jpeg_start_decompress(&info);

  RasterMask mask(static_cast<int>(info.output_width),
                  static_cast<int>(info.output_height), MaskStyle::semantic);
  while (info.output_scanline < info.output_height) {
    JSAMPROW row = mask.pixels.data() +
                   static_cast<std::size_t>(info.output_scanline) * mask.width * 3;
    jpeg_read_scanlines(&info, &row, 1);
  }
  jpeg_finish_decompress(&info);
  jpeg_destroy_decompress(&info);
  std::fclose(file);
  return mask;
}

// PNG or JPEG by magic bytes.
inline RasterMask read_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  unsigned char magic[4] = {0, 0, 0, 0};
  in.read(reinterpret_cast<char*>(magic), 4);
  in.close();
  if (magic[0] == 0x89 && magic[1] == 'P') return read_png(path);
  if (magic[0] == 0xff && magic[1] == 0xd8) return read_jpeg(path);
  throw IoError(path, "unsupported image format (PNG and JPEG only)");
}

}  // namespace lef
