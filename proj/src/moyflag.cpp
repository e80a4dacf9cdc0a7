#include "foam/moyflag.hpp"

#include <atomic>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "foam/foameval.hpp"
#include "foam/foamzoo.hpp"
#include "foam/movie.hpp"
#include "json.hpp"

namespace foam {

using nlohmann::json;

void MoyGraph::validate() const {
    if (N < 1 || N > kMaxPigments) throw InvalidGraph("N out of range");
    const int E = static_cast<int>(edges.size());
    const int V = static_cast<int>(vertices.size());
    for (int e = 0; e < E; ++e) {
        const MoyEdge& ed = edges[e];
        const std::string w = "edge " + std::to_string(e);
        if (ed.label < 0 || ed.label > N) throw InvalidGraph(w + ": label out of range");
        if ((ed.tail < 0) != (ed.head < 0)) throw InvalidGraph(w + ": one free end");
        if (ed.tail >= V || ed.head >= V) throw InvalidGraph(w + ": unknown vertex");
    }
    std::vector<int> seen_tail(E, 0), seen_head(E, 0);
    for (int v = 0; v < V; ++v) {
        const MoyVertex& mv = vertices[v];
        const std::string w = "vertex " + std::to_string(v);
        for (int e : {mv.left, mv.right, mv.thick})
            if (e < 0 || e >= E) throw InvalidGraph(w + ": unknown edge");
        if (mv.left == mv.right || mv.left == mv.thick || mv.right == mv.thick)
            throw InvalidGraph(w + ": repeated edge");
        if (edges[mv.left].label + edges[mv.right].label != edges[mv.thick].label)
            throw InvalidGraph(w + ": labels violate the flow condition");
        auto in = [&](int e) {
            if (edges[e].head != v) throw InvalidGraph(w + ": edge " + std::to_string(e) + " should end here");
            ++seen_head[e];
        };
        auto out = [&](int e) {
            if (edges[e].tail != v) throw InvalidGraph(w + ": edge " + std::to_string(e) + " should start here");
            ++seen_tail[e];
        };
        if (mv.merge) {
            in(mv.left), in(mv.right), out(mv.thick);
        } else {
            out(mv.left), out(mv.right), in(mv.thick);
        }
    }
    for (int e = 0; e < E; ++e) {
        if (edges[e].tail < 0) continue;
        if (seen_tail[e] != 1 || seen_head[e] != 1)
            throw InvalidGraph("edge " + std::to_string(e) + ": endpoints not matched by vertices");
    }
}

MoyGraph MoyGraph::circle(int k, int N) {
    MoyGraph G;
    G.N = N;
    G.edges.push_back({k, -1, -1});
    G.validate();
    return G;
}

MoyGraph MoyGraph::theta(const std::vector<int>& a) {
    if (a.empty()) throw BadParameters("theta: no strands");
    int N = 0;
    for (int x : a) {
        if (x < 1) throw BadParameters("theta: strand labels must be positive");
        N += x;
    }
    const int k = static_cast<int>(a.size());
    if (k == 1) return circle(N, N);
    MoyGraph G;
    G.N = N;
    // Vertices: merge M_i at 2(i-2), split S_i at 2(i-2)+1, i = 2..k.
    auto M = [](int i) { return 2 * (i - 2); };
    auto S = [](int i) { return 2 * (i - 2) + 1; };
    // Edges: strands 0..k-1, then (up_i, down_i) for i = 2..k-1, then the N edge.
    G.edges.push_back({a[0], S(2), M(2)});
    for (int i = 2; i <= k; ++i) G.edges.push_back({a[i - 1], S(i), M(i)});
    std::vector<int> up(k + 1, -1), down(k + 1, -1);
    up[1] = down[1] = 0;
    int s = a[0];
    for (int i = 2; i < k; ++i) {
        s += a[i - 1];
        up[i] = static_cast<int>(G.edges.size());
        G.edges.push_back({s, M(i), M(i + 1)});
        down[i] = static_cast<int>(G.edges.size());
        G.edges.push_back({s, S(i + 1), S(i)});
    }
    up[k] = down[k] = static_cast<int>(G.edges.size());
    G.edges.push_back({N, M(k), S(k)});
    G.vertices.resize(2 * (k - 1));
    for (int i = 2; i <= k; ++i) {
        G.vertices[M(i)] = {true, up[i - 1], i - 1, up[i]};
        G.vertices[S(i)] = {false, down[i - 1], i - 1, down[i]};
    }
    G.validate();
    return G;
}

MoyGraph parse_moy(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("json: ") + e.what());
    }
    auto geti = [](const json& j, const char* key, const std::string& where, int dflt, bool required) {
        if (!j.contains(key) || j.at(key).is_null()) {
            if (required) throw ParseError(where + "." + key + ": missing");
            return dflt;
        }
        if (!j.at(key).is_number_integer()) throw ParseError(where + "." + key + ": expected integer");
        return j.at(key).get<int>();
    };
    if (!doc.is_object()) throw ParseError("moy: expected object");
    MoyGraph G;
    G.N = geti(doc, "n", "moy", 0, true);
    if (doc.contains("edges")) {
        const json& je = doc.at("edges");
        if (!je.is_array()) throw ParseError("edges: expected array");
        for (std::size_t k = 0; k < je.size(); ++k) {
            const std::string w = "edges[" + std::to_string(k) + "]";
            if (je[k].contains("id") && geti(je[k], "id", w, -1, true) != static_cast<int>(k))
                throw ParseError(w + ".id: ids must be 0,1,2,... in order");
            G.edges.push_back({geti(je[k], "label", w, 0, true), geti(je[k], "tail", w, -1, false),
                               geti(je[k], "head", w, -1, false)});
        }
    }
    if (doc.contains("vertices")) {
        const json& jv = doc.at("vertices");
        if (!jv.is_array()) throw ParseError("vertices: expected array");
        for (std::size_t k = 0; k < jv.size(); ++k) {
            const std::string w = "vertices[" + std::to_string(k) + "]";
            if (jv[k].contains("id") && geti(jv[k], "id", w, -1, true) != static_cast<int>(k))
                throw ParseError(w + ".id: ids must be 0,1,2,... in order");
            if (!jv[k].contains("kind") || !jv[k].at("kind").is_string())
                throw ParseError(w + ".kind: missing");
            const std::string kind = jv[k].at("kind").get<std::string>();
            if (kind != "merge" && kind != "split") throw ParseError(w + ".kind: expected merge or split");
            G.vertices.push_back({kind == "merge", geti(jv[k], "left", w, -1, true), geti(jv[k], "right", w, -1, true),
                                  geti(jv[k], "thick", w, -1, true)});
        }
    }
    try {
        G.validate();
    } catch (const InvalidGraph& e) {
        throw ParseError(e.what());
    }
    return G;
}

std::string moy_to_json(const MoyGraph& G) {
    json doc;
    doc["n"] = G.N;
    doc["edges"] = json::array();
    for (std::size_t k = 0; k < G.edges.size(); ++k)
        doc["edges"].push_back({{"id", k}, {"label", G.edges[k].label}, {"tail", G.edges[k].tail},
                                {"head", G.edges[k].head}});
    doc["vertices"] = json::array();
    for (std::size_t k = 0; k < G.vertices.size(); ++k) {
        const MoyVertex& v = G.vertices[k];
        doc["vertices"].push_back({{"id", k}, {"kind", v.merge ? "merge" : "split"}, {"left", v.left},
                                   {"right", v.right}, {"thick", v.thick}});
    }
    return doc.dump(2) + "\n";
}

MoyGraph read_moy_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_moy(buf.str());
    } catch (const ParseError& e) {
        std::string what = e.what();
        const std::string tag = "ParseError: ";
        if (what.rfind(tag, 0) == 0) what = what.substr(tag.size());
        throw ParseError(path + ": " + what);
    }
}

namespace {

Int binomial(int n, int k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

void for_each_subset(int N, int k, const std::function<void(PigmentSet)>& fn) {
    if (k == 0) {
        fn(0);
        return;
    }
    // Gosper's hack over N-bit words.
    PigmentSet s = (PigmentSet(1) << k) - 1;
    const PigmentSet limit = PigmentSet(1) << N;
    while (s < limit) {
        fn(s);
        PigmentSet c = s & (~s + 1), r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
}

}  // namespace

Int moy_coloring_count(const MoyGraph& G) {
    G.validate();
    const int E = static_cast<int>(G.edges.size());
    Int factor = 1;
    std::vector<int> order;
    std::vector<char> placed(E, 0);
    std::vector<std::vector<int>> at(E);  // vertices touching each edge
    for (int v = 0; v < static_cast<int>(G.vertices.size()); ++v)
        for (int e : {G.vertices[v].left, G.vertices[v].right, G.vertices[v].thick}) at[e].push_back(v);
    for (int e = 0; e < E; ++e) {
        if (G.edges[e].tail < 0) {
            factor *= binomial(G.N, G.edges[e].label);
            placed[e] = 1;
        }
    }
    // Breadth-first edge order so that most edges are forced by two neighbours.
    for (int root = 0; root < E; ++root) {
        if (placed[root]) continue;
        std::vector<int> queue{root};
        placed[root] = 1;
        for (std::size_t q = 0; q < queue.size(); ++q) {
            int e = queue[q];
            order.push_back(e);
            for (int v : at[e])
                for (int f : {G.vertices[v].left, G.vertices[v].right, G.vertices[v].thick})
                    if (!placed[f]) placed[f] = 1, queue.push_back(f);
        }
    }
    std::vector<PigmentSet> col(E, 0);
    std::vector<char> set(E, 0);
    Int count = 0;
    // Returns the forced color of e if some vertex fixes it; -1 if none; -2 on conflict.
    auto forced = [&](int e, PigmentSet& out) {
        for (int v : at[e]) {
            const MoyVertex& mv = G.vertices[v];
            int l = mv.left, r = mv.right, t = mv.thick;
            if (e == t && set[l] && set[r]) {
                if (col[l] & col[r]) return -2;
                out = col[l] | col[r];
                return 1;
            }
            if (e == l && set[r] && set[t]) {
                if ((col[r] & col[t]) != col[r]) return -2;
                out = col[t] & ~col[r];
                return 1;
            }
            if (e == r && set[l] && set[t]) {
                if ((col[l] & col[t]) != col[l]) return -2;
                out = col[t] & ~col[l];
                return 1;
            }
        }
        return -1;
    };
    auto consistent = [&](int e) {
        for (int v : at[e]) {
            const MoyVertex& mv = G.vertices[v];
            if (set[mv.left] && set[mv.right] && set[mv.thick])
                if ((col[mv.left] & col[mv.right]) || (col[mv.left] | col[mv.right]) != col[mv.thick]) return false;
            if (set[mv.thick]) {
                if (set[mv.left] && (col[mv.left] & ~col[mv.thick])) return false;
                if (set[mv.right] && (col[mv.right] & ~col[mv.thick])) return false;
            }
        }
        return true;
    };
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == order.size()) {
            ++count;
            return;
        }
        int e = order[i];
        PigmentSet f = 0;
        int st = forced(e, f);
        if (st == -2) return;
        auto attempt = [&](PigmentSet c) {
            if (pigment_count(c) != G.edges[e].label) return;
            col[e] = c;
            set[e] = 1;
            if (consistent(e)) rec(i + 1);
            set[e] = 0;
        };
        if (st == 1)
            attempt(f);
        else
            for_each_subset(G.N, G.edges[e].label, attempt);
    };
    rec(0);
    return count * factor;
}

LaurentPoly LaurentPoly::monomial(int exp, const Int& c) {
    LaurentPoly p;
    p.add_term(exp, c);
    return p;
}

void LaurentPoly::add_term(int exp, const Int& c) {
    if (c == 0) return;
    auto it = terms_.find(exp);
    if (it == terms_.end()) {
        terms_.emplace(exp, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [e1, c1] : a.terms_)
        for (const auto& [e2, c2] : b.terms_) r.add_term(e1 + e2, c1 * c2);
    return r;
}

LaurentPoly LaurentPoly::divide_exact(const LaurentPoly& d) const {
    if (d.is_zero()) throw NotDivisible("division by zero Laurent polynomial");
    LaurentPoly rem = *this, quo;
    const auto [dlead, dc] = *d.terms_.rbegin();
    while (!rem.is_zero()) {
        const auto [rlead, rc] = *rem.terms_.rbegin();
        if (rlead - dlead < rem.terms_.begin()->first - d.terms_.begin()->first)
            throw NotDivisible(to_string() + " by " + d.to_string());
        if (!mpz_divisible_p(rc.get_mpz_t(), dc.get_mpz_t())) throw NotDivisible(to_string() + " by " + d.to_string());
        LaurentPoly t = monomial(rlead - dlead, rc / dc);
        quo += t;
        rem -= t * d;
    }
    return quo;
}

Int LaurentPoly::at_one() const {
    Int s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
}

bool LaurentPoly::is_palindromic() const {
    for (const auto& [e, c] : terms_) {
        auto it = terms_.find(-e);
        if (it == terms_.end() || it->second != c) return false;
    }
    return true;
}

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Int a = abs(c);
        if (out.empty())
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        if (e == 0) {
            out += a.get_str();
            continue;
        }
        if (a != 1) out += a.get_str() + "*";
        out += "q";
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

LaurentPoly qint(int k) {
    if (k < 0) return LaurentPoly() - qint(-k);
    LaurentPoly p;
    for (int e = -(k - 1); e <= k - 1; e += 2) p.add_term(e, 1);
    return p;
}

LaurentPoly qbinom(int l, int k) {
    if (k < 0 || l < 0 || k > l) return LaurentPoly();
    // [l,k] = q^k [l-1,k] + q^{k-l} [l-1,k-1]
    std::vector<std::vector<LaurentPoly>> row(1, std::vector<LaurentPoly>{LaurentPoly::monomial(0)});
    for (int n = 1; n <= l; ++n) {
        std::vector<LaurentPoly> next(n + 1);
        for (int j = 0; j <= n; ++j) {
            if (j < n) next[j] += LaurentPoly::monomial(j) * row.back()[j];
            if (j > 0) next[j] += LaurentPoly::monomial(j - n) * row.back()[j - 1];
        }
        row.push_back(std::move(next));
    }
    return row[l][k];
}

namespace {

LaurentPoly qfactorial(int n) {
    LaurentPoly p = LaurentPoly::monomial(0);
    for (int i = 2; i <= n; ++i) p = p * qint(i);
    return p;
}

int checked_sum(const std::vector<int>& a) {
    int N = 0;
    for (int x : a) {
        if (x < 0) throw BadParameters("negative label");
        N += x;
    }
    return N;
}

}  // namespace

LaurentPoly qmultinomial(const std::vector<int>& a) {
    LaurentPoly p = qfactorial(checked_sum(a));
    for (int x : a) p = p.divide_exact(qfactorial(x));
    return p;
}

LaurentPoly graded_rank_theta(const std::vector<int>& a) {
    checked_sum(a);
    LaurentPoly p = LaurentPoly::monomial(0);
    int s = 0;
    for (int x : a) {
        s += x;
        p = p * qbinom(s, x);
    }
    return p;
}

namespace {

std::vector<int> partial_sums(const std::vector<int>& a) {
    std::vector<int> s;
    int t = 0;
    for (int x : a) s.push_back(t += x);
    return s;
}

void check_strands(const std::vector<int>& a) {
    if (a.empty()) throw BadParameters("theta: no strands");
    for (int x : a)
        if (x < 1) throw BadParameters("theta: strand labels must be positive");
    if (checked_sum(a) > kMaxPigments) throw BadParameters("theta: too many pigments");
}

void check_index(const std::vector<int>& a, const ThetaIndex& idx) {
    const auto s = partial_sums(a);
    if (idx.size() != a.size()) throw BadParameters("index: one diagram per strand expected");
    if (!idx[0].empty()) throw BadParameters("index: first diagram must be empty");
    for (std::size_t i = 1; i < a.size(); ++i)
        if (!idx[i].fits(a[i], s[i - 1]))
            throw BadParameters("index: " + idx[i].to_string() + " not in T(" + std::to_string(a[i]) + "," +
                                std::to_string(s[i - 1]) + ")");
}

ThetaBasisElement make_basis(const std::vector<int>& a, const ThetaIndex& idx) {
    ThetaBasisElement e;
    e.index = idx;
    for (std::size_t i = 0; i < a.size(); ++i) e.decorations.push_back(SchurCombo::single(a[i], idx[i]));
    return e;
}

ThetaBasisElement make_dual(const std::vector<int>& a, const ThetaIndex& idx) {
    const auto s = partial_sums(a);
    const int N = s.back();
    ThetaBasisElement e;
    e.index = idx;
    e.dual = true;
    int boxes = N * (N + 1) / 2;
    for (std::size_t i = 1; i < a.size(); ++i) {
        YoungDiagram hat = dual_in(idx[i], a[i], s[i - 1]);
        boxes += hat.size();
        e.decorations.push_back(SchurCombo::single(s[i - 1], hat));
    }
    e.sign = boxes % 2 ? -1 : 1;
    return e;
}

void add_element(GenThetaDecorations& d, const ThetaBasisElement& e) {
    if (!e.dual) {
        d.layers.push_back(e.decorations);
        return;
    }
    if (d.partial.size() < e.decorations.size()) d.partial.resize(e.decorations.size());
    for (std::size_t i = 0; i < e.decorations.size(); ++i)
        d.partial[i] = d.partial[i].arity() ? d.partial[i] * e.decorations[i] : e.decorations[i];
}

}  // namespace

std::vector<ThetaIndex> theta_basis_index(const std::vector<int>& a) {
    check_strands(a);
    const auto s = partial_sums(a);
    std::vector<ThetaIndex> out{ThetaIndex{YoungDiagram()}};
    for (std::size_t i = 1; i < a.size(); ++i) {
        std::vector<ThetaIndex> next;
        for (const ThetaIndex& t : out)
            for (const YoungDiagram& d : enumerate_box(a[i], s[i - 1])) {
                ThetaIndex u = t;
                u.push_back(d);
                next.push_back(std::move(u));
            }
        out = std::move(next);
    }
    return out;
}

std::vector<ThetaBasisElement> theta_basis(const std::vector<int>& a) {
    std::vector<ThetaBasisElement> out;
    for (const ThetaIndex& idx : theta_basis_index(a)) out.push_back(make_basis(a, idx));
    return out;
}

std::vector<ThetaBasisElement> theta_dual_basis(const std::vector<int>& a) {
    std::vector<ThetaBasisElement> out;
    for (const ThetaIndex& idx : theta_basis_index(a)) out.push_back(make_dual(a, idx));
    return out;
}

OpenFoam theta_cup_foam(const std::vector<int>& a, const ThetaBasisElement& e) {
    check_strands(a);
    const auto s = partial_sums(a);
    const int k = static_cast<int>(a.size());
    const int N = s.back();
    auto strand = [](int i) { return "a" + std::to_string(i); };
    auto part = [&](int i) { return i == 1 ? strand(1) : "s" + std::to_string(i); };
    Movie m(N);
    m.cup(part(k), N);
    for (int i = k; i >= 2; --i) {
        const std::string up = i == k ? "" : part(i) + "u";
        m.digon({part(i), s[i - 2], true, a[i - 1], true, part(i - 1), strand(i), up});
        if (i < k) m.rename(part(i), part(i) + "d");
    }
    auto facet_edge = [&](int i) {  // an edge of the partial-sum facet s_i
        if (i == 1) return strand(1);
        return i == k ? part(k) : part(i) + "d";
    };
    for (int i = 0; i < static_cast<int>(e.decorations.size()); ++i) {
        if (e.decorations[i].is_one()) continue;
        m.decorate(e.dual ? facet_edge(i + 1) : strand(i + 1), e.decorations[i]);
    }
    return m.finish();
}

std::vector<std::vector<MultiPoly>> gram_matrix(const std::vector<int>& a, const std::vector<ThetaBasisElement>& rows,
                                                const std::vector<ThetaBasisElement>& cols, int jobs) {
    check_strands(a);
    const int N = checked_sum(a);
    const std::size_t R = rows.size(), C = cols.size();
    std::vector<std::vector<MultiPoly>> G(R, std::vector<MultiPoly>(C, MultiPoly(N)));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t; (t = next++) < R * C;) {
            const std::size_t i = t / C, j = t % C;
            GenThetaDecorations d;
            add_element(d, rows[i]);
            add_element(d, cols[j]);
            MultiPoly v = eval(build_gen_theta_closed(a, d));
            if (rows[i].sign * cols[j].sign < 0) v = -v;
            G[i][j] = std::move(v);
        }
    };
    const int n = std::max(1, std::min<int>(jobs, static_cast<int>(R * C)));
    std::vector<std::thread> pool;
    for (int w = 1; w < n; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return G;
}

std::map<ThetaIndex, MultiPoly> structure_constants(const std::vector<int>& a, const ThetaIndex& alpha,
                                                    const ThetaIndex& beta) {
    check_strands(a);
    check_index(a, alpha);
    check_index(a, beta);
    std::map<ThetaIndex, MultiPoly> out;
    for (const ThetaIndex& lam : theta_basis_index(a)) {
        GenThetaDecorations d;
        add_element(d, make_basis(a, alpha));
        add_element(d, make_basis(a, beta));
        ThetaBasisElement dual = make_dual(a, lam);
        add_element(d, dual);
        MultiPoly v = eval(build_gen_theta_closed(a, d));
        if (dual.sign < 0) v = -v;
        if (!v.is_zero()) out.emplace(lam, std::move(v));
    }
    return out;
}

Int lr_via_foam(const YoungDiagram& alpha, const YoungDiagram& beta, const YoungDiagram& lam, int a, int b) {
    if (a < 1 || b < 1 || a + b > kMaxPigments) throw BadParameters("lr: labels out of range");
    for (const YoungDiagram* d : {&alpha, &beta, &lam})
        if (!d->fits(b, a))
            throw BadParameters("lr: " + d->to_string() + " not in T(" + std::to_string(b) + "," + std::to_string(a) +
                                ")");
    if (alpha.size() + beta.size() != lam.size()) throw BadParameters("lr: |alpha|+|beta| != |lambda|");
    const int N = a + b;
    const YoungDiagram hat = dual_in(lam, b, a);
    Foam F = build_theta(a, b, SchurCombo::single(a, hat),
                         SchurCombo::single(b, alpha) * SchurCombo::single(b, beta), SchurCombo::one(N), N);
    MultiPoly v = eval(F);
    if (!v.is_constant()) throw DegreeMismatch("lr: foam value is not a constant: " + v.to_string());
    Int c = v.constant_term();
    if ((N * (N + 1) / 2 + hat.size()) % 2) c = -c;
    return c;
}

}  // namespace foam
