#include "petal/germ_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace petal {

namespace {

[[noreturn]] void fail(const std::string& name, int line, const std::string& what) {
    throw Error(Errc::parse, name + ":" + std::to_string(line) + ": " + what);
}

} // namespace

GermMap parse_germ(std::istream& in, const std::string& name) {
    TruncPoly2<cx> c1(kTruncInf), c2(kTruncInf);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string trimmed = line;
        size_t b = trimmed.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        if (trimmed[b] == '#') continue;

        std::istringstream ls(line);
        long comp, i, j;
        double re, im;
        if (!(ls >> comp >> i >> j >> re >> im))
            fail(name, lineno, "expected `c i j re im`, got \"" + line + "\"");
        std::string rest;
        if (ls >> rest) fail(name, lineno, "trailing tokens after 5 fields");
        if (comp != 1 && comp != 2) fail(name, lineno, "component must be 1 or 2");
        if (i < 0 || j < 0) fail(name, lineno, "exponents must be nonnegative");
        if (i == 0 && j == 0) fail(name, lineno, "constant terms are not allowed");
        if ((comp == 1 && i == 1 && j == 0) || (comp == 2 && i == 0 && j == 1))
            fail(name, lineno, "the identity part is implicit and must not appear");

        TruncPoly2<cx>& c = (comp == 1) ? c1 : c2;
        if (c.get(static_cast<int>(i), static_cast<int>(j)) != cx(0))
            fail(name, lineno, "duplicate monomial");
        c.set(static_cast<int>(i), static_cast<int>(j), cx(re, im));
    }
    // add the implicit identity
    c1.add_term(1, 0, cx(1));
    c2.add_term(0, 1, cx(1));
    int deg = std::max({2, c1.max_degree(), c2.max_degree()});
    // file germs are polynomials, hence exact at every order; keep a finite
    // working truncation that later stages may widen
    return GermMap::from_components(std::move(c1), std::move(c2), deg);
}

GermMap load_germ(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io, "cannot open germ file " + path);
    return parse_germ(in, path);
}

void write_germ(std::ostream& out, const GermMap& g) {
    out << "# germ map, format: c i j re im (identity part implicit)\n";
    auto dump = [&](const TruncPoly2<cx>& c, int comp) {
        for (auto& [k, v] : c.coeffs) {
            if (comp == 1 && k.first == 1 && k.second == 0) continue;
            if (comp == 2 && k.first == 0 && k.second == 1) continue;
            out << comp << ' ' << k.first << ' ' << k.second << ' ' << std::setprecision(17)
                << v.real() << ' ' << v.imag() << '\n';
        }
    };
    dump(g.comp1, 1);
    dump(g.comp2, 2);
}

void save_germ(const std::string& path, const GermMap& g) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::io, "cannot open output file " + path);
    write_germ(out, g);
    if (!out) throw Error(Errc::io, "failed writing " + path);
}

} // namespace petal
