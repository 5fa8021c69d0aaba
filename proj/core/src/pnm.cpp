#include "grainstat/pnm.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "grainstat/errors.hpp"

namespace grainstat::pnm {
namespace {

constexpr int kMaxDimension = 1 << 20;

// Tracks the byte offset by hand so parse errors can point at the exact
// position even on non-seekable streams.
class Cursor {
public:
    Cursor(std::istream& in, std::string name)
        : in_(in), name_(std::move(name)) {}

    int get() {
        const int c = in_.get();
        if (c != EOF)
            ++offset_;
        return c;
    }

    int peek() { return in_.peek(); }
    long offset() const { return offset_; }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(name_ + ": byte " + std::to_string(offset_) + ": " +
                         message);
    }

    // Skips whitespace and '#' comments, then reads one unsigned decimal.
    long next_int(const char* what) {
        skip_separators();
        int c = peek();
        if (c == EOF)
            fail(std::string("unexpected end of file, expected ") + what);
        if (!std::isdigit(c))
            fail(std::string("expected ") + what + ", found '" +
                 static_cast<char>(c) + "'");
        long value = 0;
        while (std::isdigit(peek())) {
            value = value * 10 + (get() - '0');
            if (value > std::numeric_limits<int>::max())
                fail(std::string(what) + " out of range");
        }
        return value;
    }

    void skip_separators() {
        while (true) {
            int c = peek();
            if (c == '#') {
                while (c != EOF && c != '\n')
                    c = get();
                continue;
            }
            if (c == EOF || !std::isspace(c))
                return;
            get();
        }
    }

    // The single whitespace byte that separates a binary header from the
    // raster.
    void expect_raster_separator() {
        const int c = get();
        if (c == EOF || !std::isspace(c))
            fail("expected whitespace before binary raster");
    }

private:
    std::istream& in_;
    std::string name_;
    long offset_ = 0;
};

std::pair<int, int> read_dimensions(Cursor& cur) {
    const long w = cur.next_int("width");
    const long h = cur.next_int("height");
    if (w < 1 || h < 1 || w > kMaxDimension || h > kMaxDimension)
        cur.fail("dimensions out of range");
    return {static_cast<int>(w), static_cast<int>(h)};
}

BinaryImage read_p1(Cursor& cur) {
    const auto [w, h] = read_dimensions(cur);
    BinaryImage image(w, h);
    for (std::size_t i = 0; i < image.size(); ++i) {
        cur.skip_separators();
        const int c = cur.get();
        if (c == '0' || c == '1')
            image.bits[i] = static_cast<std::uint8_t>(c - '0');
        else if (c == EOF)
            cur.fail("unexpected end of file in raster");
        else
            cur.fail("bitmap pixels must be 0 or 1");
    }
    return image;
}

GrayImage read_p2(Cursor& cur) {
    const auto [w, h] = read_dimensions(cur);
    const long maxval = cur.next_int("maxval");
    if (maxval != 255)
        cur.fail("maxval must be 255, found " + std::to_string(maxval));
    GrayImage image(w, h);
    for (std::size_t i = 0; i < image.size(); ++i) {
        const long v = cur.next_int("pixel");
        if (v > 255)
            cur.fail("pixel value exceeds maxval");
        image.levels[i] = static_cast<std::uint8_t>(v);
    }
    return image;
}

BinaryImage read_p4(Cursor& cur) {
    const auto [w, h] = read_dimensions(cur);
    cur.expect_raster_separator();
    BinaryImage image(w, h);
    const int row_bytes = (w + 7) / 8;
    for (int y = 0; y < h; ++y) {
        for (int byte = 0; byte < row_bytes; ++byte) {
            const int c = cur.get();
            if (c == EOF)
                cur.fail("unexpected end of file in raster");
            for (int bit = 0; bit < 8; ++bit) {
                const int x = byte * 8 + bit;
                if (x < w)
                    image.set(x, y,
                              static_cast<std::uint8_t>((c >> (7 - bit)) & 1));
            }
        }
    }
    return image;
}

GrayImage read_p5(Cursor& cur) {
    const auto [w, h] = read_dimensions(cur);
    const long maxval = cur.next_int("maxval");
    if (maxval != 255)
        cur.fail("maxval must be 255, found " + std::to_string(maxval));
    cur.expect_raster_separator();
    GrayImage image(w, h);
    for (std::size_t i = 0; i < image.size(); ++i) {
        const int c = cur.get();
        if (c == EOF)
            cur.fail("unexpected end of file in raster");
        image.levels[i] = static_cast<std::uint8_t>(c);
    }
    return image;
}

} // namespace

AnyImage read_image(std::istream& in, const std::string& source_name) {
    Cursor cur(in, source_name);
    const int magic0 = cur.get();
    const int magic1 = cur.get();
    if (magic0 != 'P')
        cur.fail("not a netpbm file (no P magic)");
    switch (magic1) {
    case '1':
        return read_p1(cur);
    case '2':
        return read_p2(cur);
    case '4':
        return read_p4(cur);
    case '5':
        return read_p5(cur);
    default:
        cur.fail("unsupported netpbm type P" +
                 std::string(1, static_cast<char>(magic1)) +
                 " (supported: P1, P2, P4, P5)");
    }
}

AnyImage read_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path.string());
    return read_image(in, path.string());
}

void write_image(const BinaryImage& image, std::ostream& out, Format format) {
    if (format == Format::pgm_text || format == Format::pgm_binary)
        throw ParamError("binary images are written as PBM, not PGM");
    out << (format == Format::pbm_text ? "P1" : "P4") << "\n"
        << image.width << " " << image.height << "\n";
    if (format == Format::pbm_text) {
        for (int y = 0; y < image.height; ++y) {
            for (int x = 0; x < image.width; ++x) {
                if (x > 0)
                    out << ' ';
                out << static_cast<int>(image.at(x, y));
            }
            out << '\n';
        }
    } else {
        const int row_bytes = (image.width + 7) / 8;
        for (int y = 0; y < image.height; ++y) {
            for (int byte = 0; byte < row_bytes; ++byte) {
                int packed = 0;
                for (int bit = 0; bit < 8; ++bit) {
                    const int x = byte * 8 + bit;
                    if (x < image.width && image.at(x, y))
                        packed |= 1 << (7 - bit);
                }
                out.put(static_cast<char>(packed));
            }
        }
    }
    if (!out)
        throw ParseError("write failed");
}

void write_image(const GrayImage& image, std::ostream& out, Format format) {
    if (format == Format::pbm_text || format == Format::pbm_binary)
        throw ParamError("gray images are written as PGM, not PBM");
    out << (format == Format::pgm_text ? "P2" : "P5") << "\n"
        << image.width << " " << image.height << "\n255\n";
    if (format == Format::pgm_text) {
        for (int y = 0; y < image.height; ++y) {
            for (int x = 0; x < image.width; ++x) {
                if (x > 0)
                    out << ' ';
                out << static_cast<int>(image.at(x, y));
            }
            out << '\n';
        }
    } else {
        out.write(reinterpret_cast<const char*>(image.levels.data()),
                  static_cast<std::streamsize>(image.size()));
    }
    if (!out)
        throw ParseError("write failed");
}

namespace {

template <typename Image>
void write_to_path(const Image& image, const std::filesystem::path& path,
                   Format format) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ParseError("cannot open " + path.string() + " for writing");
    write_image(image, out, format);
}

} // namespace

void write_image(const BinaryImage& image, const std::filesystem::path& path,
                 Format format) {
    write_to_path(image, path, format);
}

void write_image(const GrayImage& image, const std::filesystem::path& path,
                 Format format) {
    write_to_path(image, path, format);
}

void write_image(const AnyImage& image, const std::filesystem::path& path,
                 Format format) {
    std::visit([&](const auto& concrete) { write_to_path(concrete, path,
                                                         format); },
               image);
}

} // namespace grainstat::pnm
