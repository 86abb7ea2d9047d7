#include "intcheb/factor_tables.hpp"

namespace intcheb {

const std::vector<IntPoly>& quarterFactorTable() {
    static const std::vector<IntPoly> table = {
        IntPoly{0, 1},
        IntPoly{-1, 4},
        IntPoly{-1, 5},
        IntPoly{-1, 6},
        IntPoly{1, -11, 29},
        IntPoly{-1, 17, -94, 169},
        IntPoly{1, -23, 194, -712, 961},
        IntPoly{-1, 28, -310, 1697, -4594, 4921},
    };
    return table;
}

const std::vector<IntPoly>& unitFactorTable() {
    static const std::vector<IntPoly> table = {
        IntPoly{0, 1, -1},                                            // x(1-x)
        IntPoly{-1, 2},                                               // 2x-1
        IntPoly{1, -5, 5},                                            // 5x^2-5x+1
        IntPoly{1, -6, 6},                                            // 6x^2-6x+1
        IntPoly{1, -11, 40, -58, 29},                                 // deg 4
        IntPoly{1, -17, 111, -357, 601, -507, 169},                   // deg 6
        IntPoly{1, -23, 217, -1100, 3291, -5980, 6478, -3844, 961},   // deg 8
        IntPoly{1, -28, 338, -2317, 9995, -28388, 53866, -67586, 53804, -24605, 4921},  // deg 10
    };
    return table;
}

const std::vector<double>& quarterFactorScales() {
    static const std::vector<double> scales = {2.0, 1.0, 2.0, 2.0, 2.0, 2.0, 2.0, 2.0};
    return scales;
}

namespace {
const std::vector<std::string_view>& aliasNames() {
    static const std::vector<std::string_view> names = {"z",  "4z-1", "5z-1", "6z-1",
                                                        "q5", "q6",   "q7",   "q8"};
    return names;
}
}  // namespace

int quarterFactorIndex(std::string_view alias) {
    const auto& names = aliasNames();
    for (size_t i = 0; i < names.size(); ++i)
        if (alias == names[i]) return static_cast<int>(i);
    return -1;
}

std::string quarterFactorAlias(const IntPoly& poly) {
    const auto& table = quarterFactorTable();
    for (size_t i = 0; i < table.size(); ++i)
        if (table[i] == poly) return std::string(aliasNames()[i]);
    return {};
}

std::vector<IntPoly> defaultFactorTableFor(const IntervalUnion& domain) {
    if (domain.empty()) return {};
    const double lo = domain.inf(), hi = domain.sup();
    if (lo >= -1e-9 && hi <= 0.25 + 1e-9) return quarterFactorTable();
    if (lo >= -1e-9 && hi <= 1.0 + 1e-9) return unitFactorTable();
    return {};
}

}  // namespace intcheb
