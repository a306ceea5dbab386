#include "tcrisk/simplex_export.hpp"

#include "tcrisk/errors.hpp"
#include "tcrisk/pasting.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>
#include <utility>

namespace tcrisk {

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += "\"\"";
        else
            out += c;
    }
    out += '"';
    return out;
}

/// Fixed two-decimal rendering with half-up rounding, done entirely on exact
/// rationals so output bytes never depend on the platform's float rounding.
std::string fixed2(const Rational& v) {
    const Rational scaled = v * 100;
    BigInt num = numerator(scaled);
    BigInt den = denominator(scaled);  // always > 0 for cpp_rational
    BigInt fl;
    if (num >= 0)
        fl = num / den;
    else
        fl = -BigInt((-num + den - 1) / den);
    if ((scaled - Rational(fl)) * 2 >= 1) fl += 1;
    const bool neg = fl < 0;
    BigInt mag = neg ? BigInt(-fl) : fl;
    const BigInt whole = mag / 100;
    const BigInt cents = mag % 100;
    std::ostringstream os;
    if (neg) os << '-';
    os << whole << '.';
    if (cents < 10) os << '0';
    os << cents;
    return os.str();
}

struct ScreenPoint {
    std::string x;
    std::string y;
};

ScreenPoint to_screen(const std::array<Rational, 3>& t) {
    // Corners: A top-center, B bottom-left, rest bottom-right.
    const Rational x = t[0] * 300 + t[1] * 40 + t[2] * 560;
    const Rational y = t[0] * 35 + t[1] * 485 + t[2] * 485;
    return {fixed2(x), fixed2(y)};
}

/// Convex boundary order of the given scene-point indices, computed by a
/// monotone chain over the exact chart (x, y) = (bary[1], bary[2]). The chart
/// is an affine image of the triangle, so hull structure is preserved.
std::vector<std::size_t> hull_order(const std::vector<ScenePoint>& pts,
                                    std::vector<std::size_t> idx) {
    auto x = [&](std::size_t i) -> const Rational& { return pts[i].bary[1]; };
    auto y = [&](std::size_t i) -> const Rational& { return pts[i].bary[2]; };
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        if (x(i) != x(j)) return x(i) < x(j);
        if (y(i) != y(j)) return y(i) < y(j);
        return i < j;
    });
    if (idx.size() <= 2) return idx;
    auto cross = [&](std::size_t i, std::size_t j, std::size_t k) {
        return (x(j) - x(i)) * (y(k) - y(i)) - (y(j) - y(i)) * (x(k) - x(i));
    };
    std::vector<std::size_t> lower, upper;
    for (std::size_t i : idx) {
        while (lower.size() >= 2 &&
               cross(lower[lower.size() - 2], lower[lower.size() - 1], i) <= 0)
            lower.pop_back();
        lower.push_back(i);
    }
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
        while (upper.size() >= 2 &&
               cross(upper[upper.size() - 2], upper[upper.size() - 1], *it) <= 0)
            upper.pop_back();
        upper.push_back(*it);
    }
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    return lower;
}

std::array<Rational, 3> triple(const Measure& m, const OutcomeSet& a, const OutcomeSet& b,
                               const OutcomeSet& rest) {
    return {m.mass(a), m.mass(b), m.mass(rest)};
}

/// Adds a point, or merges into an existing point with the same projection by
/// extending its label ("g2=z1").
std::size_t add_point(SimplexScene& scene, const std::string& label,
                      const std::array<Rational, 3>& bary) {
    for (std::size_t i = 0; i < scene.points.size(); ++i) {
        if (scene.points[i].bary == bary) {
            scene.points[i].label += "=" + label;
            return i;
        }
    }
    scene.points.push_back(ScenePoint{label, bary});
    return scene.points.size() - 1;
}

char label_kind(const std::string& label) { return label.empty() ? '?' : label[0]; }

}  // namespace

SimplexScene project(const RiskMeasure& rm, const OutcomeSet& a, const OutcomeSet& b) {
    const std::size_t n = rm.space()->size();
    if (a.empty() || b.empty()) throw PreconditionError("project: A and B must be nonempty");
    OutcomeSet uni;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(uni));
    if (uni.size() != a.size() + b.size())
        throw PreconditionError("project: A and B must be disjoint");
    const OutcomeSet rest = complement(uni, n);
    if (rest.empty())
        throw PreconditionError("project: A u B must leave at least one outcome over");

    SimplexScene scene{a,
                       b,
                       rest,
                       {"A = " + set_to_string(a, *rm.space()),
                        "B = " + set_to_string(b, *rm.space()),
                        "(A u B)^c = " + set_to_string(rest, *rm.space())},
                       {},
                       {},
                       {}};

    std::vector<std::size_t> gen_idx;
    for (std::size_t i = 0; i < rm.generators().size(); ++i)
        gen_idx.push_back(add_point(scene, "g" + std::to_string(i + 1),
                                    triple(rm.generators()[i], a, b, rest)));

    const Partition sigma_a = Partition::two_block(a, n);
    std::vector<std::size_t> rect_idx;
    const std::vector<Measure> rect = rectangle_vertices(rm, sigma_a);
    for (std::size_t i = 0; i < rect.size(); ++i)
        rect_idx.push_back(
            add_point(scene, "r" + std::to_string(i + 1), triple(rect[i], a, b, rest)));

    std::sort(rect_idx.begin(), rect_idx.end());
    rect_idx.erase(std::unique(rect_idx.begin(), rect_idx.end()), rect_idx.end());
    std::sort(gen_idx.begin(), gen_idx.end());
    gen_idx.erase(std::unique(gen_idx.begin(), gen_idx.end()), gen_idx.end());

    scene.polygons.push_back(ScenePolygon{"rectangle", hull_order(scene.points, rect_idx)});
    scene.polygons.push_back(ScenePolygon{"testset", hull_order(scene.points, gen_idx)});

    // Contradiction chain, when one of the four builds applies.
    std::optional<LemmaChain> chain;
    using Builder = LemmaChain (*)(const RiskMeasure&, const OutcomeSet&, const OutcomeSet&);
    for (Builder build : {static_cast<Builder>(&lemma_chain), static_cast<Builder>(&max_side_chain)}) {
        for (const auto& [s, t] : {std::pair{&a, &b}, std::pair{&b, &a}}) {
            if (chain) break;
            try {
                chain = build(rm, *s, *t);
            } catch (const PreconditionError&) {
            }
        }
        if (chain) break;
    }
    if (chain) {
        std::vector<std::size_t> z_idx;
        for (std::size_t i = 0; i < chain->z.size(); ++i)
            z_idx.push_back(add_point(scene, "z" + std::to_string(i + 1),
                                      triple(chain->z[i], a, b, rest)));
        scene.segments.push_back(SceneSegment{"conditionals into z6", z_idx[3], z_idx[5]});
        scene.segments.push_back(SceneSegment{"marginal into z6", z_idx[4], z_idx[5]});
    }
    return scene;
}

std::string render_svg(const SimplexScene& scene) {
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<!-- Barycentric scene: point = pA*(300,35) + pB*(40,485) + pRest*(560,485);\n"
        << "     coordinates rounded half-up to two decimals in exact rational arithmetic. -->\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"520\" "
           "viewBox=\"0 0 600 520\">\n"
        << "<rect width=\"600\" height=\"520\" fill=\"#ffffff\"/>\n"
        << "<polygon points=\"300.00,35.00 40.00,485.00 560.00,485.00\" fill=\"none\" "
           "stroke=\"#333333\" stroke-width=\"1.5\"/>\n"
        << "<text x=\"300.00\" y=\"22.00\" text-anchor=\"middle\" font-family=\"monospace\" "
           "font-size=\"13\">"
        << xml_escape(scene.corner_labels[0]) << "</text>\n"
        << "<text x=\"40.00\" y=\"505.00\" text-anchor=\"middle\" font-family=\"monospace\" "
           "font-size=\"13\">"
        << xml_escape(scene.corner_labels[1]) << "</text>\n"
        << "<text x=\"560.00\" y=\"505.00\" text-anchor=\"middle\" font-family=\"monospace\" "
           "font-size=\"13\">"
        << xml_escape(scene.corner_labels[2]) << "</text>\n";

    for (const ScenePolygon& poly : scene.polygons) {
        if (poly.points.size() < 2) continue;
        const bool testset = poly.label == "testset";
        svg << "<polygon points=\"";
        for (std::size_t k = 0; k < poly.points.size(); ++k) {
            const ScreenPoint p = to_screen(scene.points[poly.points[k]].bary);
            if (k) svg << ' ';
            svg << p.x << ',' << p.y;
        }
        svg << "\" fill=\"" << (testset ? "#e8c9a0" : "#d7e7f4") << "\" fill-opacity=\"0.6\" "
            << "stroke=\"" << (testset ? "#aa6622" : "#4477aa") << "\" stroke-width=\"1\">"
            << "<title>" << xml_escape(poly.label) << "</title></polygon>\n";
    }

    for (const SceneSegment& seg : scene.segments) {
        const ScreenPoint p = to_screen(scene.points[seg.from].bary);
        const ScreenPoint q = to_screen(scene.points[seg.to].bary);
        svg << "<line x1=\"" << p.x << "\" y1=\"" << p.y << "\" x2=\"" << q.x << "\" y2=\""
            << q.y << "\" stroke=\"#aa2222\" stroke-width=\"1.2\" stroke-dasharray=\"6,4\">"
            << "<title>" << xml_escape(seg.label) << "</title></line>\n";
    }

    for (const ScenePoint& pt : scene.points) {
        const ScreenPoint p = to_screen(pt.bary);
        const char kind = label_kind(pt.label);
        const char* color = kind == 'g' ? "#225588" : (kind == 'z' ? "#aa2222" : "#777777");
        svg << "<circle cx=\"" << p.x << "\" cy=\"" << p.y << "\" r=\"4\" fill=\"" << color
            << "\"/>\n";
    }
    for (const ScenePoint& pt : scene.points) {
        const Rational tx = pt.bary[0] * 300 + pt.bary[1] * 40 + pt.bary[2] * 560 + 7;
        const Rational ty = pt.bary[0] * 35 + pt.bary[1] * 485 + pt.bary[2] * 485 - 7;
        svg << "<text x=\"" << fixed2(tx) << "\" y=\"" << fixed2(ty)
            << "\" font-family=\"monospace\" font-size=\"12\" fill=\"#222222\">"
            << xml_escape(pt.label) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string render_csv(const SimplexScene& scene) {
    std::ostringstream csv;
    csv << "label,pA,pB,pRest\n";
    for (const ScenePoint& pt : scene.points) {
        csv << csv_field(pt.label) << ',' << format_rational(pt.bary[0]) << ','
            << format_rational(pt.bary[1]) << ',' << format_rational(pt.bary[2]) << '\n';
    }
    return csv.str();
}

}  // namespace tcrisk
