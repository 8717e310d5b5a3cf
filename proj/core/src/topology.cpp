/*
 * Copyright (c) 2026 aclsim contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License"); you may
 * not use this file except in compliance with the License. You may obtain
 * a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "aclsim/topology.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "aclsim/errors.hpp"

namespace aclsim {

namespace {

// 10 nodes, 18 links. n01 is the main generator, n10 the receiver; the burst
// sources sit at n03 and n05. The unique shortest n01→n10 path is
// n01-n05-n09-n10 (L01 L02 L03); a disjoint alternative runs
// n01-n02-n06-n08-n10 (L05 L06 L07 L08).
constexpr const char* kPaper10 = R"(node n01
node n02
node n03
node n04
node n05
node n06
node n07
node n08
node n09
node n10
link L01 n01:0 n05:0
link L02 n05:1 n09:0
link L03 n09:1 n10:0
link L04 n03:0 n05:2
link L05 n01:1 n02:0
link L06 n02:1 n06:0
link L07 n06:1 n08:0
link L08 n08:1 n10:1
link L09 n02:2 n03:1
link L10 n03:2 n04:0
link L11 n04:1 n07:0
link L12 n07:1 n08:2
link L13 n04:2 n06:2
link L14 n07:2 n09:2
link L15 n06:3 n07:3
link L16 n02:3 n04:3
link L17 n05:3 n06:4
link L18 n08:3 n09:3
subnet backbone L01 L02 L03
subnet alternate L05 L06 L07 L08
)";

// Two disjoint 2-hop paths t1→t4; the t2 route wins the lexicographic
// tie-break and acts as the primary.
constexpr const char* kTwopath = R"(node t1
node t2
node t3
node t4
link P1 t1:0 t2:0
link P2 t2:1 t4:0
link A1 t1:1 t3:0
link A2 t3:1 t4:1
subnet primary P1 P2
subnet alternate A1 A2
)";

constexpr const char* kChain3 = R"(node c1
node c2
node c3
link K1 c1:0 c2:0
link K2 c2:1 c3:0
)";

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

Endpoint parse_endpoint(const std::string& tok, std::size_t line_no) {
    auto pos = tok.find(':');
    if (pos == std::string::npos || pos == 0 || pos + 1 >= tok.size())
        throw SchemaError("endpoint needs <node>:<port> form: \"" + tok + "\"",
                          static_cast<int>(line_no));
    return Endpoint{tok.substr(0, pos), tok};
}

double parse_positive(const std::string& s, std::size_t line_no, const char* what) {
    double v = 0;
    auto [p, ec] = std::from_chars(s.c_str(), s.c_str() + s.size(), v);
    if (ec != std::errc{} || p != s.c_str() + s.size() || v <= 0)
        throw SchemaError(std::string("bad ") + what + " \"" + s + "\"",
                          static_cast<int>(line_no));
    return v;
}

}  // namespace

bool Topology::has_node(const NodeId& n) const {
    return adjacency_.count(n) != 0;
}

const Link& Topology::link(const LinkId& id) const {
    return links_[link_index(id)];
}

std::size_t Topology::link_index(const LinkId& id) const {
    auto it = link_by_id_.find(id);
    if (it == link_by_id_.end()) throw NotFoundError("unknown link \"" + id + "\"");
    return it->second;
}

const std::vector<Neighbor>& Topology::neighbors(const NodeId& n) const {
    auto it = adjacency_.find(n);
    if (it == adjacency_.end()) throw NotFoundError("unknown node \"" + n + "\"");
    return it->second;
}

int Topology::direction_from(const Link& l, const NodeId& from) {
    if (l.a.node == from) return 0;
    if (l.b.node == from) return 1;
    throw NotFoundError("node \"" + from + "\" is not an endpoint of link \"" + l.id + "\"");
}

const Endpoint& Topology::endpoint_on(const Link& l, const NodeId& node) {
    if (l.a.node == node) return l.a;
    if (l.b.node == node) return l.b;
    throw NotFoundError("node \"" + node + "\" is not an endpoint of link \"" + l.id + "\"");
}

const Endpoint& Topology::endpoint_opposite(const Link& l, const NodeId& node) {
    if (l.a.node == node) return l.b;
    if (l.b.node == node) return l.a;
    throw NotFoundError("node \"" + node + "\" is not an endpoint of link \"" + l.id + "\"");
}

std::string preset_document(const std::string& name) {
    if (name == "paper10") return kPaper10;
    if (name == "twopath") return kTwopath;
    if (name == "chain3") return kChain3;
    throw NotFoundError("unknown topology preset \"" + name + "\"");
}

Topology load_topology(const std::string& document, double default_rate_bps) {
    Topology topo;
    std::set<NodeId> node_set;
    std::set<PortId> ports_used;

    std::istringstream in(document);
    std::string line;
    std::size_t line_no = 0;
    bool saw_any = false;
    while (std::getline(in, line)) {
        ++line_no;
        auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        auto toks = split_ws(line);
        const std::string& kw = toks[0];

        if (kw == "preset") {
            if (saw_any || toks.size() != 2)
                throw SchemaError("preset must be the document's only directive",
                                  static_cast<int>(line_no));
            std::string doc;
            try {
                doc = preset_document(toks[1]);
            } catch (const NotFoundError& e) {
                throw SchemaError(e.what(), static_cast<int>(line_no));
            }
            return load_topology(doc, default_rate_bps);
        }
        saw_any = true;

        if (kw == "node") {
            if (toks.size() != 2)
                throw SchemaError("node directive needs exactly one id",
                                  static_cast<int>(line_no));
            if (!node_set.insert(toks[1]).second)
                throw SchemaError("duplicate node \"" + toks[1] + "\"",
                                  static_cast<int>(line_no));
            topo.nodes_.push_back(toks[1]);
            topo.adjacency_[toks[1]];
        } else if (kw == "link") {
            if (toks.size() < 4)
                throw SchemaError("link directive needs <id> <node>:<port> <node>:<port>",
                                  static_cast<int>(line_no));
            Link l;
            l.id = toks[1];
            l.a = parse_endpoint(toks[2], line_no);
            l.b = parse_endpoint(toks[3], line_no);
            l.rate_bps = default_rate_bps;
            for (std::size_t i = 4; i < toks.size(); i += 2) {
                if (i + 1 >= toks.size())
                    throw SchemaError("link option \"" + toks[i] + "\" is missing its value",
                                      static_cast<int>(line_no));
                if (toks[i] == "rate")
                    l.rate_bps = parse_positive(toks[i + 1], line_no, "rate");
                else if (toks[i] == "weight")
                    l.base_weight = parse_positive(toks[i + 1], line_no, "weight");
                else
                    throw SchemaError("unknown link option \"" + toks[i] + "\"",
                                      static_cast<int>(line_no));
            }
            if (topo.link_by_id_.count(l.id))
                throw SchemaError("duplicate link \"" + l.id + "\"", static_cast<int>(line_no));
            if (l.a == l.b)
                throw SchemaError("link \"" + l.id + "\" joins an endpoint to itself",
                                  static_cast<int>(line_no));
            for (const Endpoint* e : {&l.a, &l.b}) {
                if (!node_set.count(e->node))
                    throw SchemaError("link \"" + l.id + "\" references unknown node \"" +
                                          e->node + "\"",
                                      static_cast<int>(line_no));
                if (!ports_used.insert(e->port).second)
                    throw SchemaError("port \"" + e->port + "\" is used by two links",
                                      static_cast<int>(line_no));
            }
            topo.link_by_id_[l.id] = topo.links_.size();
            topo.links_.push_back(std::move(l));
        } else if (kw == "subnet") {
            if (toks.size() < 3)
                throw SchemaError("subnet directive needs a name and at least one link",
                                  static_cast<int>(line_no));
            if (topo.subnets_.count(toks[1]))
                throw SchemaError("duplicate subnet \"" + toks[1] + "\"",
                                  static_cast<int>(line_no));
            std::vector<LinkId> members(toks.begin() + 2, toks.end());
            for (const auto& m : members)
                if (!topo.link_by_id_.count(m))
                    throw SchemaError("subnet \"" + toks[1] + "\" references unknown link \"" +
                                          m + "\"",
                                      static_cast<int>(line_no));
            topo.subnets_[toks[1]] = std::move(members);
        } else {
            throw SchemaError("unknown directive \"" + kw + "\"", static_cast<int>(line_no));
        }
    }

    for (const Link& l : topo.links_) {
        topo.adjacency_[l.a.node].push_back({l.id, l.b.node});
        topo.adjacency_[l.b.node].push_back({l.id, l.a.node});
    }
    for (auto& [node, nbrs] : topo.adjacency_)
        std::sort(nbrs.begin(), nbrs.end(),
                  [](const Neighbor& x, const Neighbor& y) { return x.link < y.link; });
    return topo;
}

}  // namespace aclsim
