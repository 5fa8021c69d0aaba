#include "grainstat/ccl.hpp"

#include "grainstat/errors.hpp"

namespace grainstat::ccl {
namespace {

// Union-find over pixel indices with path compression and union by size.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        for (std::size_t i = 0; i < n; ++i)
            parent_[i] = static_cast<std::int32_t>(i);
    }

    std::int32_t find(std::int32_t i) {
        std::int32_t root = i;
        while (parent_[root] != root)
            root = parent_[root];
        while (parent_[i] != root) {
            const std::int32_t next = parent_[i];
            parent_[i] = root;
            i = next;
        }
        return root;
    }

    void merge(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return;
        if (size_[a] < size_[b])
            std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

private:
    std::vector<std::int32_t> parent_;
    std::vector<std::int64_t> size_;
};

} // namespace

ComponentSet label_components(const BinaryImage& image, std::uint8_t color) {
    if (color > 1)
        throw ParamError("color must be 0 or 1");
    const int w = image.width;
    const int h = image.height;
    UnionFind uf(image.size());

    // Right and down edges cover every adjacent pair once; torus images add
    // the two wrap edges per row/column.  A wrap edge in a dimension of
    // size 1 would join a pixel to itself and is skipped.
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::int32_t i = static_cast<std::int32_t>(image.index(x, y));
            if (image.bits[i] != color)
                continue;
            if (x + 1 < w && image.at(x + 1, y) == color)
                uf.merge(i, i + 1);
            if (y + 1 < h && image.at(x, y + 1) == color)
                uf.merge(i, i + w);
            if (image.boundary == Boundary::torus) {
                if (x == w - 1 && w > 1 && image.at(0, y) == color)
                    uf.merge(i, static_cast<std::int32_t>(image.index(0, y)));
                if (y == h - 1 && h > 1 && image.at(x, 0) == color)
                    uf.merge(i, static_cast<std::int32_t>(image.index(x, 0)));
            }
        }
    }

    ComponentSet out;
    out.labels.assign(image.size(), 0);
    std::vector<std::int32_t> root_label(image.size(), 0);
    out.sizes.push_back(0);
    for (std::size_t i = 0; i < image.size(); ++i) {
        if (image.bits[i] != color)
            continue;
        const std::int32_t root = uf.find(static_cast<std::int32_t>(i));
        if (root_label[root] == 0) {
            root_label[root] = ++out.count;
            out.sizes.push_back(0);
        }
        out.labels[i] = root_label[root];
        ++out.sizes[root_label[root]];
    }
    return out;
}

std::map<std::int64_t, std::int64_t> component_size_histogram(
    const ComponentSet& components) {
    std::map<std::int64_t, std::int64_t> hist;
    for (int label = 1; label <= components.count; ++label)
        ++hist[components.sizes[label]];
    return hist;
}

} // namespace grainstat::ccl
