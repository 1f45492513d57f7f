#include "framelet/io.hpp"

#include <map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "framelet/errors.hpp"

namespace framelet {

namespace {

using nlohmann::json;

std::string cyc_to_string(const CycNum& v) { return v.is_zero() ? "0" : v.to_string(); }

json matrix_to_json(const LaurentMatrix& m) {
    std::map<MIdx, std::vector<CycNum>> by_k;
    const long n = m.rows() * m.cols();
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j)
            m.at(i, j).for_each([&](const MIdx& k, const CycNum& v) {
                auto it = by_k.find(k);
                if (it == by_k.end())
                    it = by_k.emplace(k, std::vector<CycNum>(n, CycNum(m.cyc_order()))).first;
                it->second[i * m.cols() + j] = v;
            });
    json terms = json::array();
    for (const auto& [k, vals] : by_k) {
        json vs = json::array();
        for (const CycNum& v : vals) vs.push_back(cyc_to_string(v));
        terms.push_back(json{{"k", k}, {"value", std::move(vs)}});
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"terms", std::move(terms)}};
}

json jet_to_json(const Jet& j) {
    json base = json::array();
    for (const Rational& q : j.base()) base.push_back(rational_to_string(q));
    json derivs = json::array();
    for (const MIdx& mu : j.index_set()) {
        json vs = json::array();
        bool all_zero = true;
        for (long r = 0; r < j.rows(); ++r)
            for (long c = 0; c < j.cols(); ++c) {
                const CycNum& v = j.deriv(mu, r, c);
                all_zero = all_zero && v.is_zero();
                vs.push_back(cyc_to_string(v));
            }
        if (!all_zero) derivs.push_back(json{{"mu", mu}, {"value", std::move(vs)}});
    }
    return json{{"base", std::move(base)},
                {"rows", j.rows()},
                {"cols", j.cols()},
                {"order", j.order()},
                {"derivs", std::move(derivs)}};
}

json int_mat_to_json(const IntMat& m) { return json(m); }

// Field-path bookkeeping so semantic errors name where they happened.
struct Cursor {
    const json* node;
    std::string path;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(path + ": " + what);
    }

    Cursor child(const std::string& key) const {
        if (!node->is_object()) fail("expected an object");
        auto it = node->find(key);
        if (it == node->end()) fail("missing field '" + key + "'");
        return {&*it, path + "." + key};
    }

    bool has(const std::string& key) const {
        return node->is_object() && node->contains(key);
    }

    Cursor item(size_t i) const {
        return {&(*node)[i], path + "[" + std::to_string(i) + "]"};
    }

    size_t array_size() const {
        if (!node->is_array()) fail("expected an array");
        return node->size();
    }

    long as_int() const {
        if (!node->is_number_integer()) fail("expected an integer");
        return node->get<long>();
    }

    std::string as_string() const {
        if (!node->is_string()) fail("expected a string");
        return node->get<std::string>();
    }

    CycNum as_cyc(unsigned order) const {
        try {
            return CycNum::parse(order, as_string());
        } catch (const ParseError& e) {
            fail(e.what());
        }
    }

    Rational as_rational() const {
        try {
            return parse_rational(as_string());
        } catch (const ParseError& e) {
            fail(e.what());
        }
    }

    MIdx as_midx(int dim, const char* what) const {
        if (array_size() != static_cast<size_t>(dim))
            fail(std::string(what) + " must have " + std::to_string(dim) + " entries");
        MIdx k(dim);
        for (int i = 0; i < dim; ++i) k[i] = static_cast<int>(item(i).as_int());
        return k;
    }
};

IntMat parse_int_mat(const Cursor& c) {
    size_t n = c.array_size();
    if (n == 0) c.fail("empty matrix");
    IntMat m(n, std::vector<long>(n));
    for (size_t i = 0; i < n; ++i) {
        Cursor row = c.item(i);
        if (row.array_size() != n) row.fail("matrix must be square");
        for (size_t j = 0; j < n; ++j) m[i][j] = row.item(j).as_int();
    }
    return m;
}

LaurentMatrix parse_filter(const Cursor& c, int dim, unsigned cyc_order) {
    long rows = c.child("rows").as_int();
    long cols = c.child("cols").as_int();
    if (rows <= 0 || cols <= 0) c.fail("rows and cols must be positive");
    LaurentMatrix m(rows, cols, dim, cyc_order);
    Cursor terms = c.child("terms");
    for (size_t t = 0; t < terms.array_size(); ++t) {
        Cursor term = terms.item(t);
        MIdx k = term.child("k").as_midx(dim, "k");
        Cursor value = term.child("value");
        if (value.array_size() != static_cast<size_t>(rows * cols))
            value.fail("value must have rows*cols entries");
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j) {
                CycNum v = value.item(i * cols + j).as_cyc(cyc_order);
                if (!v.is_zero()) m.at(i, j).set_coeff(k, v);
            }
    }
    return m;
}

Jet parse_jet(const Cursor& c, int dim, unsigned cyc_order) {
    long rows = c.child("rows").as_int();
    long cols = c.child("cols").as_int();
    long order = c.child("order").as_int();
    if (rows <= 0 || cols <= 0) c.fail("rows and cols must be positive");
    if (order <= 0) c.fail("order must be positive");
    Cursor base_c = c.child("base");
    if (base_c.array_size() != static_cast<size_t>(dim))
        base_c.fail("base must have dimension entries");
    std::vector<Rational> base(dim);
    for (int i = 0; i < dim; ++i) base[i] = base_c.item(i).as_rational();
    Jet j(dim, rows, cols, static_cast<int>(order), cyc_order, base);
    Cursor derivs = c.child("derivs");
    for (size_t t = 0; t < derivs.array_size(); ++t) {
        Cursor d = derivs.item(t);
        MIdx mu = d.child("mu").as_midx(dim, "mu");
        if (abs_sum(mu) >= order) d.fail("mu outside the jet order");
        for (int i = 0; i < dim; ++i)
            if (mu[i] < 0) d.fail("mu entries must be nonnegative");
        Cursor value = d.child("value");
        if (value.array_size() != static_cast<size_t>(rows * cols))
            value.fail("value must have rows*cols entries");
        for (long r = 0; r < rows; ++r)
            for (long cc = 0; cc < cols; ++cc)
                j.deriv(mu, r, cc) = value.item(r * cols + cc).as_cyc(cyc_order);
    }
    return j;
}

std::pair<size_t, size_t> line_col(const std::string& text, size_t byte) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

std::string print_system(const FrameletSystem& sys) {
    json filters;
    filters["a"] = matrix_to_json(sys.a);
    filters["a_tilde"] = matrix_to_json(sys.a_tilde);
    if (sys.theta) filters["theta"] = matrix_to_json(*sys.theta);
    if (sys.theta_tilde) filters["theta_tilde"] = matrix_to_json(*sys.theta_tilde);
    if (sys.b) filters["b"] = matrix_to_json(*sys.b);
    if (sys.b_tilde) filters["b_tilde"] = matrix_to_json(*sys.b_tilde);
    if (sys.big_theta) filters["Theta"] = matrix_to_json(*sys.big_theta);

    json doc{{"cyclotomic_order", sys.cyc_order},
             {"dilation", int_mat_to_json(sys.dil.m)},
             {"dimension", sys.dim()},
             {"filters", std::move(filters)},
             {"multiplicity", sys.multiplicity()},
             {"vectorizer", int_mat_to_json(sys.vec.n)}};
    if (sys.upsilon || sys.upsilon_tilde) {
        json jets;
        if (sys.upsilon) jets["upsilon"] = jet_to_json(*sys.upsilon);
        if (sys.upsilon_tilde) jets["upsilon_tilde"] = jet_to_json(*sys.upsilon_tilde);
        doc["jets"] = std::move(jets);
    }
    return doc.dump(2) + "\n";
}

FrameletSystem parse_system(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte);
        throw ParseError("line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + e.what());
    }
    Cursor root{&doc, "system"};
    if (!doc.is_object()) root.fail("expected an object");

    long dim = root.child("dimension").as_int();
    if (dim <= 0) root.child("dimension").fail("dimension must be positive");
    long cyc = root.child("cyclotomic_order").as_int();
    if (cyc <= 0) root.child("cyclotomic_order").fail("order must be positive");
    long mult = root.child("multiplicity").as_int();

    FrameletSystem sys;
    sys.cyc_order = static_cast<unsigned>(cyc);
    Cursor dil_c = root.child("dilation");
    try {
        sys.dil = make_dilation(parse_int_mat(dil_c));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        dil_c.fail(e.what());
    }
    if (sys.dil.dim != dim) dil_c.fail("dilation size must match dimension");
    Cursor vec_c = root.child("vectorizer");
    try {
        sys.vec = make_vectorizer(parse_int_mat(vec_c));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        vec_c.fail(e.what());
    }
    if (sys.vec.dim != dim) vec_c.fail("vectorizer size must match dimension");

    Cursor filters = root.child("filters");
    sys.a = parse_filter(filters.child("a"), static_cast<int>(dim), sys.cyc_order);
    sys.a_tilde =
        parse_filter(filters.child("a_tilde"), static_cast<int>(dim), sys.cyc_order);
    auto optional_filter = [&](const char* name) -> std::optional<LaurentMatrix> {
        if (!filters.has(name)) return std::nullopt;
        return parse_filter(filters.child(name), static_cast<int>(dim), sys.cyc_order);
    };
    sys.theta = optional_filter("theta");
    sys.theta_tilde = optional_filter("theta_tilde");
    sys.b = optional_filter("b");
    sys.b_tilde = optional_filter("b_tilde");
    sys.big_theta = optional_filter("Theta");

    if (root.has("jets")) {
        Cursor jets = root.child("jets");
        if (jets.has("upsilon"))
            sys.upsilon = parse_jet(jets.child("upsilon"), static_cast<int>(dim), sys.cyc_order);
        if (jets.has("upsilon_tilde"))
            sys.upsilon_tilde =
                parse_jet(jets.child("upsilon_tilde"), static_cast<int>(dim), sys.cyc_order);
    }

    if (sys.multiplicity() != mult)
        root.child("multiplicity").fail("multiplicity must equal the rows of a");
    try {
        sys.validate_shapes();
    } catch (const Error& e) {
        root.fail(e.what());
    }
    return sys;
}

std::string print_signal(const Signal& sig) {
    json doc = matrix_to_json(sig.data);
    json shape = json::array({sig.rows(), sig.cols()});
    doc.erase("rows");
    doc.erase("cols");
    doc["shape"] = std::move(shape);
    doc["scale_pow"] = sig.scale_pow;
    return doc.dump(2) + "\n";
}

Signal parse_signal(const std::string& text, unsigned cyc_order, int dim) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte);
        throw ParseError("line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + e.what());
    }
    Cursor root{&doc, "signal"};
    if (!doc.is_object()) root.fail("expected an object");
    Cursor shape = root.child("shape");
    if (shape.array_size() != 2) shape.fail("shape must be [rows, cols]");
    json filter_doc{{"rows", shape.item(0).as_int()},
                    {"cols", shape.item(1).as_int()},
                    {"terms", *root.child("terms").node}};
    Cursor filter{&filter_doc, "signal"};
    Signal sig(parse_filter(filter, dim, cyc_order));
    if (root.has("scale_pow")) sig.scale_pow = root.child("scale_pow").as_int();
    return sig;
}

}  // namespace framelet
