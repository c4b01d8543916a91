#include "ergraph/datasets.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ergraph {

namespace {

const char* kMediciBusiness = R"(# Medici business social network
# Padgett's Florentine families, business ties (PADGB), 15 edges among 16
# families; Acciaiuoli, Albizzi, Pucci, Ridolfi and Strozzi hold no business
# tie and appear as isolated vertices. Standard published matrix.
BARBADORI CASTELLANI
BARBADORI GINORI
BARBADORI MEDICI
BARBADORI PERUZZI
BISCHERI GUADAGNI
BISCHERI LAMBERTESCHI
BISCHERI PERUZZI
CASTELLANI LAMBERTESCHI
CASTELLANI PERUZZI
GINORI MEDICI
GUADAGNI LAMBERTESCHI
LAMBERTESCHI PERUZZI
MEDICI PAZZI
MEDICI SALVIATI
MEDICI TORNABUONI
ACCIAIUOLI
ALBIZZI
PUCCI
RIDOLFI
STROZZI
)";

const char* kSampson = R"(# Sampson monastery social network
# Liking ties among the 18 monks of Sampson's New England monastery study,
# aggregated over waves and symmetrized to presence/absence (the models here
# are undirected). Structure-faithful reconstruction of the commonly
# distributed variant: Young Turks, Loyal Opposition, Outcasts, waverers.
JOHN_BOSCO GREGORY
JOHN_BOSCO MARK
JOHN_BOSCO WINFRID
JOHN_BOSCO HUGH
JOHN_BOSCO ALBERT
GREGORY HUGH
GREGORY BONIFACE
GREGORY MARK
MARK WINFRID
WINFRID HUGH
HUGH BONIFACE
BONIFACE ALBERT
AMAND JOHN_BOSCO
AMAND VICTOR
PETER BONAVENTURE
PETER BERTHOLD
PETER LOUIS
PETER ROMUALD
BONAVENTURE BERTHOLD
BONAVENTURE AMBROSE
BONAVENTURE VICTOR
BERTHOLD LOUIS
LOUIS VICTOR
AMBROSE ROMUALD
BASIL ELIAS
BASIL SIMPLICIUS
BASIL GREGORY
ELIAS SIMPLICIUS
)";

const char* kLazegaWork = R"(# Lazega law firm social network
# Work (collaboration) ties among the n=36 partners of Lazega's New England
# corporate law firm study. Structure-faithful reconstruction with three
# office blocks (P01-P14, P15-P31, P32-P36), denser within offices; the
# published matrix is not redistributed here.
P01 P03
P01 P06
P01 P10
P01 P11
P02 P06
P02 P11
P02 P14
P03 P12
P03 P13
P03 P14
P04 P05
P04 P12
P04 P13
P05 P06
P05 P08
P05 P11
P05 P12
P05 P13
P05 P15
P06 P07
P06 P08
P06 P11
P06 P14
P07 P08
P07 P10
P07 P11
P07 P35
P07 P36
P08 P10
P08 P12
P08 P25
P08 P32
P09 P11
P09 P26
P10 P13
P10 P20
P11 P13
P11 P14
P11 P15
P12 P14
P12 P19
P13 P14
P14 P18
P14 P20
P15 P19
P15 P20
P15 P22
P15 P23
P15 P24
P15 P26
P15 P27
P15 P28
P15 P29
P15 P31
P16 P19
P16 P20
P16 P23
P16 P25
P16 P29
P16 P31
P17 P18
P17 P21
P17 P25
P17 P27
P17 P28
P17 P31
P18 P20
P18 P28
P19 P20
P19 P23
P19 P24
P19 P34
P20 P22
P20 P28
P20 P29
P21 P22
P21 P26
P21 P31
P22 P23
P22 P25
P22 P31
P25 P26
P25 P28
P25 P29
P26 P28
P27 P28
P27 P30
P27 P31
P30 P31
P32 P33
P32 P34
P33 P35
P34 P36
)";

const char* kBankWiring = R"(# Bank wiring room friendship network
# Games ("RDGAM") relation among the n=14 bank wiring room employees of
# Roethlisberger and Dickson's Hawthorne study, symmetrized presence/absence.
# Structure-faithful reconstruction: front group W1-W4 with S1 and I1, back
# group W6-W9 with S4, W5 bridging; I3 and S2 take part in no games.
I1 W1
I1 W2
I1 W3
I1 W4
W1 W2
W1 W3
W1 W4
W1 S1
W2 W3
W2 W4
W2 S1
W3 W4
W3 W5
W3 S1
W4 W5
W4 S1
W5 W6
W5 W7
W6 W7
W6 W8
W6 W9
W7 W8
W7 W9
W7 S4
W8 W9
W8 S4
W9 S4
I3
S2
)";

struct BundledFile {
    DatasetEntry entry;
    const char* text;
};

const std::vector<BundledFile>& bundled_files() {
    static const std::vector<BundledFile> files = {
        {{"medici_business", "Business ties among 16 Florentine families (Padgett)", 16,
          "Padgett & Ansell, Robust Action and the Rise of the Medici 1400-1434"},
         kMediciBusiness},
        {{"sampson", "Symmetrized liking ties among 18 monks of a New England monastery", 18,
          "Sampson, A Novitiate in a Period of Change (1968)"},
         kSampson},
        {{"lazega_work", "Work ties among 36 partners of a New England law firm", 36,
          "Lazega, The Collegial Phenomenon (2001)"},
         kLazegaWork},
        {{"bank_wiring", "Games ties among 14 bank wiring room employees", 14,
          "Roethlisberger & Dickson, Management and the Worker (1939)"},
         kBankWiring},
    };
    return files;
}

[[noreturn]] void parse_fail(const std::string& origin, long long line, const std::string& what) {
    throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + what);
}

} // namespace

const std::vector<DatasetEntry>& bundled_datasets() {
    static const std::vector<DatasetEntry> entries = [] {
        std::vector<DatasetEntry> out;
        for (const auto& f : bundled_files()) out.push_back(f.entry);
        return out;
    }();
    return entries;
}

EdgeListResult parse_edgelist(std::string_view text, const std::string& origin) {
    std::map<std::string, int> index;
    std::vector<std::string> order;
    std::vector<std::pair<int, int>> edges;
    long long duplicates = 0;

    auto vertex_id = [&](const std::string& token) {
        auto [it, inserted] = index.emplace(token, static_cast<int>(order.size()));
        if (inserted) order.push_back(token);
        return it->second;
    };

    std::istringstream stream{std::string(text)};
    std::string raw;
    long long line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();   // CRLF input
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        std::istringstream line(raw);
        std::vector<std::string> tokens;
        std::string tok;
        while (line >> tok) tokens.push_back(tok);
        if (tokens.empty()) continue;
        if (tokens.size() == 1) {
            vertex_id(tokens[0]);
            continue;
        }
        if (tokens.size() > 2) parse_fail(origin, line_no, "malformed line: expected 'u v', got " + std::to_string(tokens.size()) + " tokens");
        int u = vertex_id(tokens[0]);
        int v = vertex_id(tokens[1]);
        if (u == v) parse_fail(origin, line_no, "self-loop at vertex '" + tokens[0] + "'");
        auto key = std::minmax(u, v);
        bool dup = false;
        for (const auto& [a, b] : edges)
            if (a == key.first && b == key.second) { dup = true; break; }
        if (dup) { ++duplicates; continue; }
        edges.emplace_back(key.first, key.second);
    }

    if (order.empty()) parse_fail(origin, line_no, "no vertices found");
    EdgeListResult result;
    result.graph = Graph(static_cast<int>(order.size()));
    for (int v = 0; v < static_cast<int>(order.size()); ++v)
        result.graph.set_label(v, order[static_cast<std::size_t>(v)]);
    for (const auto& [u, v] : edges) result.graph.add_edge(u, v);
    result.duplicates_collapsed = duplicates;
    return result;
}

EdgeListResult load_edgelist(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_edgelist(buf.str(), path);
}

std::string bundled_edgelist_text(const std::string& id) {
    for (const auto& f : bundled_files())
        if (f.entry.id == id) return f.text;
    std::string known;
    for (const auto& f : bundled_files()) known += (known.empty() ? "" : ", ") + f.entry.id;
    throw std::invalid_argument("unknown dataset '" + id + "'; available: " + known);
}

Graph load_bundled(const std::string& id) {
    for (const auto& f : bundled_files()) {
        if (f.entry.id != id) continue;
        EdgeListResult r = parse_edgelist(f.text, id);
        if (r.graph.n() != f.entry.expected_n)
            throw std::logic_error("bundled dataset '" + id + "' has n=" + std::to_string(r.graph.n()) +
                                   ", expected " + std::to_string(f.entry.expected_n));
        return r.graph;
    }
    return parse_edgelist(bundled_edgelist_text(id), id).graph;   // throws with the id list
}

std::string to_edgelist(const Graph& g) {
    std::ostringstream out;
    for (const auto& [u, v] : g.edges())
        out << g.label(u) << " " << g.label(v) << "\n";
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) == 0) out << g.label(v) << "\n";
    return out.str();
}

std::string to_dot(const Graph& g) {
    std::ostringstream out;
    out << "graph G {\n";
    for (int v = 0; v < g.n(); ++v)
        out << "  \"" << g.label(v) << "\";\n";
    for (const auto& [u, v] : g.edges())
        out << "  \"" << g.label(u) << "\" -- \"" << g.label(v) << "\";\n";
    out << "}\n";
    return out.str();
}

} // namespace ergraph
