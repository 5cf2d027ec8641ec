// Writes the 4-periodic free resolution of Z over Z[Q8] (ranks 1,2,2,1,1,2,2,1,...)
// built from the presentation <x, y | xyx = y, x^2 = y^2> with x = i, y = j.
//
//   d1 = [x-1, y-1]
//   d2 = Fox derivatives of x^2 y^-2 and x y x y^-1:
//        [1+x, 1+xy; -(1+y), x-1]
//   d3 = [x-1; 1-xy]
//   d4 = [N]
// and then d_{k+4} = d_k.

#include "tatecup/io.hpp"

#include <iostream>

using namespace tatecup;

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: make_q8_fixture <output.json> <degree>\n";
        return 2;
    }
    const std::size_t degree = std::stoul(argv[2]);
    auto g = quaternion_group();
    auto el = [&](std::size_t idx, long long c = 1) { return GroupRingElement::basis(g, idx, c); };
    const std::size_t one = 0, i = 2, j = 4, k = 6;
    auto x = el(i), y = el(j), xy = el(k), e = el(one);

    auto matrix = [&](std::size_t rows, std::size_t cols, std::vector<GroupRingElement> entries) {
        ZGMatrix::Builder b(g, rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) b.add(r, c, entries[r * cols + c]);
        return std::move(b).build();
    };
    auto neg = [](GroupRingElement a) { return a *= Integer(-1); };
    auto minus = [](GroupRingElement a, const GroupRingElement& b) { return a -= b; };
    auto plus = [](GroupRingElement a, const GroupRingElement& b) { return a += b; };

    std::vector<ZGMatrix> period = {
        matrix(1, 2, {minus(x, e), minus(y, e)}),
        matrix(2, 2, {plus(e, x), plus(e, xy), neg(plus(e, y)), minus(x, e)}),
        matrix(2, 1, {minus(x, e), minus(e, xy)}),
        matrix(1, 1, {norm_element(g)}),
    };
    const std::size_t ranks[4] = {1, 2, 2, 1};

    Resolution p;
    p.group = g;
    p.id = "q8_periodic";
    p.ranks.push_back(1);
    p.augmentation = {Integer(1)};
    for (std::size_t d = 1; d <= degree; ++d) {
        p.ranks.push_back(ranks[d % 4]);
        p.differentials.push_back(period[(d - 1) % 4]);
    }
    auto report = validate_resolution(p);
    if (!report.passed()) {
        std::cerr << "generated resolution is invalid: " << report.summary() << "\n";
        return 4;
    }
    save_resolution(argv[1], p);
    std::cout << "wrote " << argv[1] << " (" << report.summary() << ")\n";
    return 0;
}
