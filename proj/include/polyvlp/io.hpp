#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "polyvlp/cone_projection.hpp"
#include "polyvlp/vlp.hpp"

namespace polyvlp {

namespace detail {

class TokenStream {
public:
    explicit TokenStream(std::istream& in) {
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) tokens_.push_back({tok, lineno});
        }
    }

    bool done() const { return pos_ == tokens_.size(); }

    const std::string& peek() const {
        if (done()) throw ParseError("unexpected end of input");
        return tokens_[pos_].text;
    }

    std::string next() {
        const std::string& t = peek();
        ++pos_;
        return t;
    }

    void expect(const std::string& word) {
        if (done()) throw ParseError("expected '" + word + "' but input ended");
        if (tokens_[pos_].text != word)
            throw ParseError("line " + std::to_string(tokens_[pos_].line) + ": expected '" + word + "', found '" +
                             tokens_[pos_].text + "'");
        ++pos_;
    }

    std::size_t next_size() {
        std::string t = next();
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("expected a nonnegative integer, found '" + t + "'");
        return std::stoul(t);
    }

    Rational next_rational() { return parse_rational(next()); }

private:
    struct Token {
        std::string text;
        std::size_t line;
    };
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

inline QMatrix read_block(TokenStream& ts, const std::string& name, std::size_t rows, std::size_t cols) {
    ts.expect(name);
    QMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = ts.next_rational();
    return m;
}

inline QVector read_vector(TokenStream& ts, const std::string& name, std::size_t n) {
    ts.expect(name);
    QVector v(n);
    for (auto& x : v) x = ts.next_rational();
    return v;
}

inline void write_matrix(std::ostream& os, const QMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << to_string(m(i, j));
        os << '\n';
    }
}

inline void write_vector(std::ostream& os, const QVector& v) {
    for (std::size_t j = 0; j < v.size(); ++j) os << (j ? " " : "") << to_string(v[j]);
    os << '\n';
}

}  // namespace detail

using Instance = std::variant<ConeHRep, RawVlp>;

/// Parses a "cone" or "vlp" document.
inline Instance parse_instance(std::istream& in) {
    detail::TokenStream ts(in);
    std::string kind = ts.next();
    if (kind == "cone") {
        ts.expect("k");
        std::size_t k = ts.next_size();
        ts.expect("n");
        std::size_t n = ts.next_size();
        ts.expect("p");
        std::size_t p = ts.next_size();
        ConeHRep c;
        c.G = detail::read_block(ts, "G", k, n);
        c.H = detail::read_block(ts, "H", k, p);
        if (!ts.done()) throw ParseError("trailing input after cone data: '" + ts.peek() + "'");
        return c;
    }
    if (kind == "vlp") {
        ts.expect("q");
        std::size_t q = ts.next_size();
        ts.expect("n");
        std::size_t n = ts.next_size();
        ts.expect("m");
        std::size_t m = ts.next_size();
        ts.expect("r");
        std::size_t r = ts.next_size();
        RawVlp v;
        v.A = detail::read_block(ts, "A", m, n);
        v.b = detail::read_vector(ts, "b", m);
        v.P = detail::read_block(ts, "P", q, n);
        v.Z = detail::read_block(ts, "Z", q, r);
        if (!ts.done()) v.c = detail::read_vector(ts, "c", q);
        if (!ts.done()) throw ParseError("trailing input after vlp data: '" + ts.peek() + "'");
        return v;
    }
    throw ParseError("unknown instance header '" + kind + "' (expected 'cone' or 'vlp')");
}

inline Instance parse_instance_text(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

inline Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse_instance(in);
}

inline std::string format_instance(const ConeHRep& c) {
    std::ostringstream os;
    os << "cone\nk " << c.k() << " n " << c.n() << " p " << c.p() << "\nG\n";
    detail::write_matrix(os, c.G);
    os << "H\n";
    detail::write_matrix(os, c.H);
    return os.str();
}

inline std::string format_instance(const RawVlp& v) {
    std::ostringstream os;
    os << "vlp\nq " << v.P.rows() << " n " << v.A.cols() << " m " << v.A.rows() << " r " << v.Z.cols() << "\nA\n";
    detail::write_matrix(os, v.A);
    os << "b\n";
    detail::write_vector(os, v.b);
    os << "P\n";
    detail::write_matrix(os, v.P);
    os << "Z\n";
    detail::write_matrix(os, v.Z);
    if (v.c) {
        os << "c\n";
        detail::write_vector(os, *v.c);
    }
    return os.str();
}

}  // namespace polyvlp
